#ifndef QAW_GEN_AW_HPP
#define QAW_GEN_AW_HPP

#include "qaw/cd_kernels.hpp"

namespace qaw {

/// Point masses added to the Askey-Wilson functional at x = -1 and x = +1.
/// Non-negative masses guarantee kappa_{n-1} > 0 and a well-defined family;
/// signed masses are accepted and fail loudly (SingularKappa) if degenerate.
struct MassConfig {
    double mass_neg = 0.0;
    double mass_pos = 0.0;

    bool nonnegative() const { return mass_neg >= 0.0 && mass_pos >= 0.0; }
    bool zero() const { return mass_neg == 0.0 && mass_pos == 0.0; }
};

/// Per-degree solution of the 2x2 boundary system.
struct GenBoundary {
    int n = 0;
    double p_neg = 1.0;      // Pt_n(-1)
    double p_pos = 1.0;      // Pt_n(+1)
    double kappa_det = 1.0;  // kappa_{n-1}(-1, 1)
    double norm_sq_mod = 1.0; // dt_n^2
};

/// The generalized (mass-modified) monic family Pt_n^{A,B}. Boundary data is
/// cached for all degrees at construction; evaluation routes are methods.
class GenFamily {
  public:
    GenFamily(const FamilyContext& ctx, MassConfig masses);

    const FamilyContext& ctx() const { return *ctx_; }
    const MassConfig& masses() const { return masses_; }

    const GenBoundary& boundary(int n) const { return bnd_.at(n); }

    /// Kernel representation: Pt_n = P_n - A Pt_n(-1) K_{n-1}(x,-1) - B Pt_n(1) K_{n-1}(x,1).
    /// The _full variants report the route's assembly magnitude (sum of
    /// absolute terms) alongside the value: combinations like A + B Theta can
    /// cancel, and the cond field bounds the attainable double accuracy.
    cplx eval_kernelrep(int n, cplx x) const;
    SeriesValue eval_kernelrep_full(int n, cplx x) const;
    /// Pt_0..Pt_m at x in one sweep (prefix kernel sums), m = out.size()-1.
    void eval_all(cplx x, std::span<cplx> out) const;

    /// Difference representation through the anchored kernel coefficients.
    /// Throws ConfluentPoints inside the 1e-6 disks around x = -+1.
    cplx eval_diffrep(int n, const LatticePoint& p) const;
    SeriesValue eval_diffrep_full(int n, const LatticePoint& p) const;

    /// Pt_n recovered from the phi- and shifted representations (division by
    /// phi = x^2 - 1; ConfluentPoints at the interval ends).
    SeriesValue eval_phirep_full(int n, const LatticePoint& p) const;
    SeriesValue eval_shiftrep_full(int n, const LatticePoint& p) const;

    /// phi(s) Pt_n = coef_n P_n + coef_nm1 P_{n-1}, phi = x^2 - 1.
    struct PhiRep {
        cplx phi;
        cplx coef_n;   // degree-2 polynomial in x
        cplx coef_nm1; // degree-1 polynomial in x
    };
    PhiRep rep_coeffs(int n, cplx x) const;

    /// Shifted representations:
    ///   phi Pt_n(s)   = a P_n(s) + b P_n(s+1)
    ///   u   Pt_n(s+1) = c P_n(s) + d P_n(s+1)
    ///   v   Pt_n(s-1) = e P_n(s) + f P_n(s+1)
    struct ShiftRep {
        cplx a, b, u, c, d, v, e, f;
    };
    ShiftRep shift_rep_coeffs(int n, const LatticePoint& p) const;

    /// Second-order difference equation with n-dependent coefficients:
    ///   lower Pt_n(s-1) + center Pt_n(s) + upper Pt_n(s+1) = 0.
    struct SodeTilde {
        cplx lower, center, upper;
    };
    SodeTilde sode_tilde_coeffs(int n, const LatticePoint& p) const;

    /// Modified recurrence x Pt_n = Pt_{n+1} + beta Pt_n + gamma Pt_{n-1},
    /// with gamma = gamma_n (1+Delta_n)/(1+Delta_{n-1}).
    struct GenTtrr {
        double beta;
        double gamma;
        double delta; // Delta_n^{A,B}
    };
    GenTtrr ttrr_coeffs(int n) const;

    /// Basic-series route; returns phi(s) Pt_n(s) plus its conditioning
    /// scale. Throws DegenerateKappaS when q^{kappa(s)} collides with a q^j
    /// (callers fall back to rep_coeffs / eval_kernelrep).
    SeriesValue eval_5phi4_full(int n, const LatticePoint& p) const;
    cplx eval_5phi4(int n, const LatticePoint& p) const;

  private:
    const FamilyContext* ctx_;
    MassConfig masses_;
    std::vector<GenBoundary> bnd_;
    std::vector<double> ksum_neg_, ksum_pos_, ksum_mix_; // K_m(-1,-1), K_m(1,1), K_m(-1,1)
};

/// Askey-Wilson / q-Racah cross-family relation: relative deviation between the scaled
/// Askey-Wilson evaluation at q^s = q^{t+1/2} and the q-Racah u_n series.
struct RacahParams {
    double a_tilde;
    double b_tilde;
    double alpha;
    double beta;
};
double racah_identity_check(int n, double t, const RacahParams& rp, QBase q);

} // namespace qaw

#endif
