#ifndef QAW_QKERNEL_HPP
#define QAW_QKERNEL_HPP

#include <complex>
#include <span>
#include <vector>

#include "qaw/errors.hpp"

namespace qaw {

using cplx = std::complex<double>;

/// Base 0 < q < 1 of the whole toolkit. Construction rejects anything else.
class QBase {
  public:
    explicit QBase(double q) : q_(q) {
        if (!(q > 0.0) || !(q < 1.0))
            throw InvalidParameters("QBase: q must satisfy 0 < q < 1");
        sqrt_q_ = std::sqrt(q);
    }

    double v() const { return q_; }
    double sqrt() const { return sqrt_q_; }
    /// q^e for real e.
    double pow(double e) const { return std::pow(q_, e); }

  private:
    double q_;
    double sqrt_q_;
};

/// (z;q)_k = prod_{i<k} (1 - z q^i). Empty product for k = 0.
cplx qpoch(cplx z, QBase q, int k);

/// prod over zs of (z;q)_k.
cplx qpoch_multi(std::span<const cplx> zs, QBase q, int k);

/// (z;q)_infty truncated once the tail bound |z| q^K / (1-q) drops below
/// tail_tol; the relative truncation error is then <= exp(|z| q^K/(1-q)) - 1.
/// Throws NonConvergent if K would exceed 1e6 factors.
cplx qpoch_inf(cplx z, QBase q, double tail_tol);

/// Terminating basic series r+1phi_r in the Gasper-Rahman convention.
struct SeriesSpec {
    std::vector<cplx> numerator_params;
    std::vector<cplx> denominator_params;
    cplx argument;
    int max_terms; // hard cap on the number of summed terms
};

/// Value of a terminating series together with its summation scale
/// sum_k |t_k| (in units of the series itself, prefactors excluded).
/// cond bounds the double-precision accuracy of value: no fixed-precision
/// summation can do better than ~eps * cond absolute error.
struct SeriesValue {
    cplx value;
    double cond;
};

/// Detect the termination order: the smallest m >= 0 with some numerator
/// parameter equal to q^{-m} (relative tolerance 1e-14). Returns -1 if none.
int terminating_order(std::span<const cplx> numerator_params, QBase q);

/// Sum the terminating series with ascending-k running-term ratios.
/// Throws InvalidParameters if no numerator parameter is a q^{-m};
/// DenominatorVanished if a (c;q)_k factor underflows the 1e-300 guard.
SeriesValue phi_terminating_full(const SeriesSpec& spec, QBase q);

inline cplx phi_terminating(const SeriesSpec& spec, QBase q) {
    return phi_terminating_full(spec, q).value;
}

/// Symmetric q-number [n]_q = (q^{n/2} - q^{-n/2})/(q^{1/2} - q^{-1/2}).
double qbracket(int n, QBase q);

/// Real-result guard: asserts |Im v| < 1e-10 (1 + |Re v|) and drops it.
double real_checked(cplx v);

} // namespace qaw

#endif
