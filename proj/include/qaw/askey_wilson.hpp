#ifndef QAW_ASKEY_WILSON_HPP
#define QAW_ASKEY_WILSON_HPP

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "qaw/lattice.hpp"
#include "qaw/qkernel.hpp"

namespace qaw {

/// Parameter tuple (a, b, c, d, q) of the monic Askey-Wilson family.
///
/// strict() enforces the orthogonality admissibility conditions
/// (max modulus < 1, conjugation-closed multiset, no pair product or abcd
/// hitting a q-power that zeroes a recurrence denominator). lenient() checks
/// only the denominators, for identity work with parameters outside the
/// orthogonality region (the q-Racah images need |d| > 1).
class AWParams {
  public:
    static AWParams strict(cplx a, cplx b, cplx c, cplx d, QBase q);
    static AWParams lenient(cplx a, cplx b, cplx c, cplx d, QBase q);

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }
    QBase q() const { return q_; }

    cplx abcd() const { return abcd_; }
    cplx e1() const { return e1_; } // a+b+c+d
    cplx e2() const { return e2_; } // sum of the six pair products
    cplx e3() const { return e3_; } // sum of the four triple products
    std::array<cplx, 6> pair_products() const { return {ab_, ac_, ad_, bc_, bd_, cd_}; }
    cplx ab() const { return ab_; }
    cplx ac() const { return ac_; }
    cplx ad() const { return ad_; }

    bool orthogonality_admissible() const { return admissible_; }
    void require_admissible() const {
        if (!admissible_)
            throw InvalidParameters("AWParams: parameters are not orthogonality-admissible");
    }

  private:
    AWParams(cplx a, cplx b, cplx c, cplx d, QBase q, bool strict_mode);

    cplx a_, b_, c_, d_;
    QBase q_;
    cplx ab_, ac_, ad_, bc_, bd_, cd_, abcd_, e1_, e2_, e3_;
    bool admissible_ = false;
};

/// Normalization constant of the sigma/Phi rows, -q^{-1/2}(1-q)^2. Pinned by
/// the n=1 difference equation against beta_0 and lambda_1.
double sode_normalization(QBase q);

/// sigma(s) = sode_normalization * q^{-2s} (q^s-a)(q^s-b)(q^s-c)(q^s-d).
cplx sigma(const LatticePoint& p, const AWParams& params);

/// Phi(s) = sigma(-s); the forward-direction polynomial coefficient.
cplx phi_big(const LatticePoint& p, const AWParams& params);

cplx tau(const LatticePoint& p, const AWParams& params);
cplx tau_n(int n, const LatticePoint& p, const AWParams& params);
cplx lambda_n(int n, const AWParams& params);

/// Coefficients of A_s y(s+1) + B_s y(s) + C_s y(s-1) + lambda_n y(s) = 0.
struct SodeCoeffs {
    cplx fwd;    // A_s
    cplx center; // B_s = -A_s - C_s
    cplx bwd;    // C_s
};
SodeCoeffs sode_coeffs(const LatticePoint& p, const AWParams& params);

/// Monic three-term recurrence x P_n = P_{n+1} + beta_n P_n + gamma_n P_{n-1}.
struct TtrrCoeffs {
    cplx beta;
    cplx gamma; // gamma_0 = 0 by convention (P_{-1} = 0 makes it unused)
};
TtrrCoeffs ttrr_coeffs(int n, const AWParams& params);

/// Dense per-degree cache: recurrence data, norms and the values at the
/// boundary lattice points that every section-3 formula keeps reusing.
class FamilyContext {
  public:
    static FamilyContext build(const AWParams& params, int n_max);

    const AWParams& params() const { return params_; }
    int n_max() const { return n_max_; }

    cplx beta(int n) const { return beta_.at(n); }
    cplx gamma(int n) const { return gamma_.at(n); }
    cplx lambda(int n) const { return lambda_.at(n); }

    /// d_n^2 from the monic norm recurrence d_n^2 = gamma_n d_{n-1}^2.
    /// Available only for orthogonality-admissible parameters.
    double d2(int n) const;

    double p_at(int n, int sign) const;  // P_n(-1) or P_n(+1)
    double dp_at(int n, int sign) const; // Delta P_n at the same anchors

    /// P_n(x) by the recurrence; x may be complex (off-circle points).
    cplx eval(int n, cplx x) const;
    /// P_0..P_{m}(x) in one sweep, m = out.size()-1.
    void eval_all(cplx x, std::span<cplx> out) const;

  private:
    FamilyContext(AWParams params, int n_max);

    AWParams params_;
    int n_max_;
    std::vector<cplx> beta_, gamma_, lambda_;
    std::vector<double> norms_;
    std::vector<double> pneg_, ppos_, dpneg_, dppos_;
    bool has_norms_ = false;
};

inline cplx aw_eval_ttrr(int n, cplx x, const FamilyContext& ctx) { return ctx.eval(n, x); }

/// Basic-series route: the terminating sum in the product basis
/// prod_{i<k}(1 - 2 a x q^i + a^2 q^{2i}).  cond tracks |prefactor| sum|t_k|,
/// the double-precision conditioning scale of the summation.
SeriesValue aw_eval_series_full(int n, const LatticePoint& p, const AWParams& params);
inline cplx aw_eval_series(int n, const LatticePoint& p, const AWParams& params) {
    return aw_eval_series_full(n, p, params).value;
}

/// P_n(-1), P_n(+1) through the 4phi3 with repeated argument -a / a.
std::pair<SeriesValue, SeriesValue> aw_at_pm1_full(int n, const AWParams& params);
std::pair<cplx, cplx> aw_at_pm1(int n, const AWParams& params);

/// Forward lattice differences Delta P_n(-1), Delta P_n(+1) as terminating
/// series (one degree lower, parameters shifted by q).
std::pair<SeriesValue, SeriesValue> aw_delta_at_pm1_full(int n, const AWParams& params);
std::pair<cplx, cplx> aw_delta_at_pm1(int n, const AWParams& params);

/// Probability-normalized weight on (-1, 1). theta_density integrates the
/// same measure in theta (x = cos theta), with the 1/sqrt(1-x^2) edge factor
/// removed analytically.
class WeightEvaluator {
  public:
    WeightEvaluator(const AWParams& params, double tail_tol);
    double operator()(double x) const;       // rho(x), |x| < 1
    double theta_density(double theta) const; // rho(cos t) sin t
  private:
    AWParams params_;
    double tail_tol_;
    double norm_const_;
    int trunc_;
};

double aw_weight(double x, const AWParams& params, double tail_tol);

/// d_n^2 via the infinite products (the independent route against the
/// norm recurrence cached in FamilyContext).
double norm_sq(int n, const AWParams& params, double tail_tol);

/// Differentiation-formula data:
///   sigma(s) nabla P_n / nabla x = alpha P_{n+1} + beta_bar(s) P_n
///   Phi(s)   Delta P_n / Delta x = alpha P_{n+1} + beta_hat(s) P_n
struct DiffCoeffs {
    cplx alpha;    // shared by both directions
    cplx beta_bar; // backward
    cplx beta_hat; // forward, = beta_bar - lambda_n Delta x(s - 1/2)
};
DiffCoeffs diff_coeffs(int n, const LatticePoint& p, const AWParams& params);

/// Degree-lowering shift relation P_{n-1}(s) = Theta P_n(s) + Xi P_n(s+1).
struct ThetaXi {
    cplx theta;
    cplx xi;
};
ThetaXi theta_xi(int n, const LatticePoint& p, const FamilyContext& ctx);

} // namespace qaw

#endif
