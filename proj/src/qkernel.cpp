#include "qaw/qkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qaw {

cplx qpoch(cplx z, QBase q, int k) {
    if (k < 0)
        throw InvalidParameters("qpoch: k must be non-negative");
    cplx r = 1.0;
    cplx zq = z;
    for (int i = 0; i < k; ++i) {
        r *= 1.0 - zq;
        zq *= q.v();
    }
    return r;
}

cplx qpoch_multi(std::span<const cplx> zs, QBase q, int k) {
    if (zs.empty())
        throw InvalidParameters("qpoch_multi: needs at least one base");
    cplx r = 1.0;
    for (cplx z : zs)
        r *= qpoch(z, q, k);
    return r;
}

cplx qpoch_inf(cplx z, QBase q, double tail_tol) {
    if (!(tail_tol > 0.0))
        throw InvalidParameters("qpoch_inf: tail_tol must be positive");
    if (z == cplx(0.0))
        return 1.0;
    const double az = std::abs(z);
    if (!(az < 1.0 / q.v()))
        throw NonConvergent("qpoch_inf: |z| >= 1/q, factors do not tend to 1");
    // Choose K so |z| q^K / (1-q) < tail_tol.
    const double target = tail_tol * (1.0 - q.v()) / az;
    double K = target >= 1.0 ? 0.0 : std::ceil(std::log(target) / std::log(q.v()));
    if (K > 1e6)
        throw NonConvergent("qpoch_inf: truncation order exceeds 1e6");
    cplx r = 1.0;
    cplx zq = z;
    for (int i = 0; i < static_cast<int>(K); ++i) {
        r *= 1.0 - zq;
        zq *= q.v();
    }
    return r;
}

int terminating_order(std::span<const cplx> numerator_params, QBase q) {
    int best = -1;
    const double logq = std::log(q.v());
    for (cplx p : numerator_params) {
        const double ap = std::abs(p);
        if (!(ap >= 1.0) || p.real() < 0.0)
            continue; // q^{-m}, m >= 0 is real and >= 1
        const double m_real = std::log(ap) / -logq;
        const long m = std::lround(m_real);
        if (m < 0)
            continue;
        const double qm = std::pow(q.v(), static_cast<double>(-m));
        if (std::abs(p - qm) <= 1e-14 * qm) {
            if (best < 0 || m < best)
                best = static_cast<int>(m);
        }
    }
    return best;
}

SeriesValue phi_terminating_full(const SeriesSpec& spec, QBase q) {
    const int n = terminating_order(spec.numerator_params, q);
    if (n < 0)
        throw InvalidParameters("phi_terminating: no numerator parameter of the form q^{-n}");
    const int nterms = std::min(n + 1, spec.max_terms);

    cplx total = 0.0;
    cplx term = 1.0;
    double cond = 0.0;
    double qk = 1.0; // q^k
    for (int k = 0; k < nterms; ++k) {
        total += term;
        cond += std::abs(term);
        if (k + 1 == nterms)
            break;
        // term_{k+1} = term_k * z * prod(1 - a q^k) / [prod(1 - b q^k) (1 - q^{k+1})]
        cplx ratio = spec.argument;
        for (cplx a : spec.numerator_params)
            ratio *= 1.0 - a * qk;
        for (cplx b : spec.denominator_params) {
            const cplx f = 1.0 - b * qk;
            if (std::abs(f) < 1e-300)
                throw DenominatorVanished("phi_terminating: (c;q)_k factor vanished");
            ratio /= f;
        }
        qk *= q.v();
        ratio /= 1.0 - qk;
        term *= ratio;
    }
    return {total, cond};
}

double qbracket(int n, QBase q) {
    if (n == 0)
        return 0.0;
    const double sq = q.sqrt();
    return (q.pow(0.5 * n) - q.pow(-0.5 * n)) / (sq - 1.0 / sq);
}

double real_checked(cplx v) {
    if (!(std::abs(v.imag()) < 1e-10 * (1.0 + std::abs(v.real()))))
        throw Error("real_checked: imaginary residue too large");
    return v.real();
}

} // namespace qaw
