#include "qaw/askey_wilson.hpp"

#include <algorithm>
#include <cmath>

namespace qaw {

namespace {

// True if z sits on a nonpositive q-power q^{-m}, m >= m_min (relative 1e-12).
bool hits_inverse_qpower(cplx z, double q, int m_min = 0) {
    const double az = std::abs(z);
    if (std::abs(z.imag()) > 1e-12 * (1.0 + az) || z.real() <= 0.0)
        return false;
    const long m = std::lround(std::log(az) / -std::log(q));
    if (m < m_min)
        return false;
    const double qm = std::pow(q, static_cast<double>(-m));
    return std::abs(z - qm) <= 1e-12 * qm;
}

bool conjugation_closed(std::array<cplx, 4> v) {
    // Greedy-match each entry against the conjugate multiset.
    std::array<bool, 4> used{};
    for (cplx z : v) {
        bool found = false;
        for (int j = 0; j < 4; ++j) {
            if (!used[j] && std::abs(std::conj(v[j]) - z) <= 1e-14 * (1.0 + std::abs(z))) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

} // namespace

AWParams::AWParams(cplx a, cplx b, cplx c, cplx d, QBase q, bool strict_mode)
    : a_(a), b_(b), c_(c), d_(d), q_(q) {
    ab_ = a * b;
    ac_ = a * c;
    ad_ = a * d;
    bc_ = b * c;
    bd_ = b * d;
    cd_ = c * d;
    abcd_ = ab_ * cd_;
    e1_ = a + b + c + d;
    e2_ = ab_ + ac_ + ad_ + bc_ + bd_ + cd_;
    e3_ = a * bc_ + a * bd_ + a * cd_ + b * cd_;

    // abcd in {q, 1, q^{-1}, ...} zeroes a recurrence denominator
    // ((1 - abcd q^{-1}) appears already in beta_0); fatal in either mode.
    if (hits_inverse_qpower(abcd_, q.v(), -1))
        throw InvalidParameters("AWParams: abcd equals q^{-m} (m >= -1)");
    // Pairwise products at q^{-m} break orthogonality data. Lenient mode
    // defers them to the evaluation-time guards: a terminating series of low
    // enough degree never touches the vanishing factor (the q-Racah images
    // with ad = q^{-m} rely on this).
    if (strict_mode)
        for (cplx p : {ab_, ac_, ad_, bc_, bd_, cd_})
            if (hits_inverse_qpower(p, q.v()))
                throw InvalidParameters("AWParams: a pairwise product equals q^{-m}");

    const double m = std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
    admissible_ = m < 1.0 && conjugation_closed({a, b, c, d});
    if (strict_mode) {
        if (m >= 1.0)
            throw InvalidParameters("AWParams: max(|a|,|b|,|c|,|d|) must be < 1");
        if (!admissible_)
            throw InvalidParameters("AWParams: parameters must be real or conjugate pairs");
    }
}

AWParams AWParams::strict(cplx a, cplx b, cplx c, cplx d, QBase q) {
    return AWParams(a, b, c, d, q, true);
}

AWParams AWParams::lenient(cplx a, cplx b, cplx c, cplx d, QBase q) {
    return AWParams(a, b, c, d, q, false);
}

double sode_normalization(QBase q) {
    const double r = 1.0 - q.v();
    return -r * r / q.sqrt();
}

cplx sigma(const LatticePoint& p, const AWParams& params) {
    const cplx u = p.qs;
    return sode_normalization(params.q()) / (u * u) * (u - params.a()) * (u - params.b()) *
           (u - params.c()) * (u - params.d());
}

cplx phi_big(const LatticePoint& p, const AWParams& params) {
    const cplx u = 1.0 / p.qs;
    return sode_normalization(params.q()) / (u * u) * (u - params.a()) * (u - params.b()) *
           (u - params.c()) * (u - params.d());
}

cplx tau(const LatticePoint& p, const AWParams& params) {
    const double r = 1.0 - params.q().v();
    return 4.0 * r * (params.abcd() - 1.0) * p.x + 2.0 * r * (params.e1() - params.e3());
}

cplx tau_n(int n, const LatticePoint& p, const AWParams& params) {
    const QBase q = params.q();
    const double r = 1.0 - q.v();
    const cplx xn = x_shifted(p, 0.5 * n, q);
    return 4.0 * r * (params.abcd() * q.pow(n) - q.pow(-n)) * xn +
           2.0 * r * (params.e1() * q.pow(-0.5 * n) - params.e3() * q.pow(0.5 * n));
}

cplx lambda_n(int n, const AWParams& params) {
    const QBase q = params.q();
    return 4.0 * q.pow(1 - n) * (1.0 - q.pow(n)) * (1.0 - params.abcd() * q.pow(n - 1));
}

SodeCoeffs sode_coeffs(const LatticePoint& p, const AWParams& params) {
    const double scale = 1.0 + std::abs(p.x);
    if (std::abs(p.dx_fwd) < 1e-13 * scale || std::abs(p.dx_bwd) < 1e-13 * scale ||
        std::abs(p.dx_half) < 1e-13 * scale)
        throw DegenerateLatticePoint("sode_coeffs: a lattice difference vanished");
    SodeCoeffs r;
    r.fwd = (sigma(p, params) + tau(p, params) * p.dx_half) / (p.dx_fwd * p.dx_half);
    r.bwd = sigma(p, params) / (p.dx_bwd * p.dx_half);
    r.center = -r.fwd - r.bwd;
    return r;
}

TtrrCoeffs ttrr_coeffs(int n, const AWParams& params) {
    if (n < 0)
        throw InvalidParameters("ttrr_coeffs: n must be non-negative");
    const QBase q = params.q();
    const cplx a = params.a();
    const cplx abcd = params.abcd();

    const auto guard = [&](cplx den) {
        if (std::abs(den) < 1e-13)
            throw SingularDenominator("ttrr_coeffs: abcd q^m denominator vanished");
        return den;
    };

    // A_n, C_n of the monic recurrence, beta_n = (a + 1/a - A_n - C_n)/2.
    const cplx An = (1.0 - params.ab() * q.pow(n)) * (1.0 - params.ac() * q.pow(n)) *
                    (1.0 - params.ad() * q.pow(n)) * (1.0 - abcd * q.pow(n - 1)) /
                    (a * guard(1.0 - abcd * q.pow(2 * n - 1)) * guard(1.0 - abcd * q.pow(2 * n)));
    const cplx Cn = a * (1.0 - q.pow(n)) * (1.0 - params.b() * params.c() * q.pow(n - 1)) *
                    (1.0 - params.b() * params.d() * q.pow(n - 1)) *
                    (1.0 - params.c() * params.d() * q.pow(n - 1)) /
                    (guard(1.0 - abcd * q.pow(2 * n - 2)) * guard(1.0 - abcd * q.pow(2 * n - 1)));

    TtrrCoeffs r;
    r.beta = 0.5 * (a + 1.0 / a - An - Cn);
    if (n == 0) {
        r.gamma = 0.0;
        return r;
    }
    cplx num = (1.0 - q.pow(n)) * (1.0 - abcd * q.pow(n - 2));
    for (cplx pp : params.pair_products())
        num *= 1.0 - pp * q.pow(n - 1);
    const cplx den2 = 1.0 - abcd * q.pow(2 * n - 2);
    r.gamma = 0.25 * num /
              (guard(1.0 - abcd * q.pow(2 * n - 3)) * guard(den2) * den2 *
               guard(1.0 - abcd * q.pow(2 * n - 1)));
    return r;
}

FamilyContext::FamilyContext(AWParams params, int n_max) : params_(params), n_max_(n_max) {}

FamilyContext FamilyContext::build(const AWParams& params, int n_max) {
    if (n_max < 0)
        throw InvalidParameters("FamilyContext: n_max must be non-negative");
    FamilyContext ctx(params, n_max);
    ctx.beta_.resize(n_max + 1);
    ctx.gamma_.resize(n_max + 1);
    ctx.lambda_.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const TtrrCoeffs tc = ttrr_coeffs(n, params);
        ctx.beta_[n] = tc.beta;
        ctx.gamma_[n] = tc.gamma;
        ctx.lambda_[n] = lambda_n(n, params);
    }
    if (params.orthogonality_admissible()) {
        ctx.has_norms_ = true;
        ctx.norms_.resize(n_max + 1);
        ctx.norms_[0] = 1.0;
        for (int n = 1; n <= n_max; ++n) {
            const double g = real_checked(ctx.gamma_[n]);
            if (!(g > 0.0))
                throw SingularDenominator("FamilyContext: gamma_n <= 0 for admissible parameters");
            ctx.norms_[n] = ctx.norms_[n - 1] * g;
        }
        // Boundary anchors: x = -+1 and their forward-shifted images.
        const double q = params.q().v();
        const double xs = 0.5 * (q + 1.0 / q);
        std::vector<cplx> col(n_max + 1);
        const auto fill = [&](cplx x, auto& dst) {
            ctx.eval_all(x, col);
            dst.resize(n_max + 1);
            for (int n = 0; n <= n_max; ++n)
                dst[n] = real_checked(col[n]);
        };
        std::vector<double> at_neg_shift, at_pos_shift;
        fill(cplx(-1.0), ctx.pneg_);
        fill(cplx(1.0), ctx.ppos_);
        fill(cplx(-xs), at_neg_shift);
        fill(cplx(xs), at_pos_shift);
        ctx.dpneg_.resize(n_max + 1);
        ctx.dppos_.resize(n_max + 1);
        for (int n = 0; n <= n_max; ++n) {
            ctx.dpneg_[n] = at_neg_shift[n] - ctx.pneg_[n];
            ctx.dppos_[n] = at_pos_shift[n] - ctx.ppos_[n];
        }
    }
    return ctx;
}

double FamilyContext::d2(int n) const {
    if (!has_norms_)
        throw InvalidParameters("FamilyContext: norms unavailable for non-admissible parameters");
    return norms_.at(n);
}

double FamilyContext::p_at(int n, int sign) const {
    return sign < 0 ? pneg_.at(n) : ppos_.at(n);
}

double FamilyContext::dp_at(int n, int sign) const {
    return sign < 0 ? dpneg_.at(n) : dppos_.at(n);
}

cplx FamilyContext::eval(int n, cplx x) const {
    if (n < 0)
        return 0.0;
    if (n > n_max_)
        throw InvalidParameters("FamilyContext::eval: degree exceeds n_max");
    cplx pm1 = 0.0, p = 1.0;
    for (int k = 0; k < n; ++k) {
        const cplx next = (x - beta_[k]) * p - gamma_[k] * pm1;
        pm1 = p;
        p = next;
    }
    return p;
}

void FamilyContext::eval_all(cplx x, std::span<cplx> out) const {
    if (out.empty())
        return;
    if (static_cast<int>(out.size()) - 1 > n_max_)
        throw InvalidParameters("FamilyContext::eval_all: degree exceeds n_max");
    out[0] = 1.0;
    cplx pm1 = 0.0, p = 1.0;
    for (size_t k = 0; k + 1 < out.size(); ++k) {
        const cplx next = (x - beta_[k]) * p - gamma_[k] * pm1;
        pm1 = p;
        p = next;
        out[k + 1] = p;
    }
}

SeriesValue aw_eval_series_full(int n, const LatticePoint& p, const AWParams& params) {
    const QBase q = params.q();
    const cplx a = params.a();
    if (std::abs(a) < 1e-300)
        throw SingularDenominator("aw_eval_series: the series representation needs a != 0");
    const std::array<cplx, 3> pre_bases{params.ab(), params.ac(), params.ad()};
    const cplx pre_den = std::pow(2.0 * a, n) * qpoch(params.abcd() * q.pow(n - 1), q, n);
    if (std::abs(pre_den) < 1e-300)
        throw SingularDenominator("aw_eval_series: prefactor denominator vanished");
    const cplx pref = qpoch_multi(pre_bases, q, n) / pre_den;

    // sum_k (q^{-n}, abcd q^{n-1}; q)_k q^k / (ab,ac,ad,q;q)_k
    //       * prod_{i<k} (1 - 2 a x q^i + a^2 q^{2i})
    cplx total = 0.0, term = 1.0;
    double cond = 0.0;
    double qk = 1.0;
    const cplx two_ax = 2.0 * a * p.x;
    const cplx aa = a * a;
    for (int k = 0; k <= n; ++k) {
        total += term;
        cond += std::abs(term);
        if (k == n)
            break;
        cplx ratio = q.v() * (1.0 - q.pow(k - n)) * (1.0 - params.abcd() * q.pow(n - 1 + k)) *
                     (1.0 - two_ax * qk + aa * qk * qk);
        for (cplx bb : pre_bases) {
            const cplx f = 1.0 - bb * qk;
            if (std::abs(f) < 1e-300)
                throw SingularDenominator("aw_eval_series: (c;q)_k factor vanished");
            ratio /= f;
        }
        qk *= q.v();
        ratio /= 1.0 - qk;
        term *= ratio;
    }
    return {pref * total, std::abs(pref) * cond};
}

namespace {

cplx series_prefactor(int n, const AWParams& params) {
    const QBase q = params.q();
    const std::array<cplx, 3> bases{params.ab(), params.ac(), params.ad()};
    return qpoch_multi(bases, q, n) /
           (std::pow(2.0 * params.a(), n) * qpoch(params.abcd() * q.pow(n - 1), q, n));
}

} // namespace

std::pair<SeriesValue, SeriesValue> aw_at_pm1_full(int n, const AWParams& params) {
    const QBase q = params.q();
    const cplx a = params.a();
    const cplx pref = series_prefactor(n, params);
    const auto eval = [&](cplx rep) {
        SeriesSpec spec{{q.pow(-n), params.abcd() * q.pow(n - 1), rep, rep},
                        {params.ab(), params.ac(), params.ad()},
                        q.v(),
                        n + 1};
        SeriesValue s = phi_terminating_full(spec, q);
        return SeriesValue{pref * s.value, std::abs(pref) * s.cond};
    };
    return {eval(-a), eval(a)};
}

std::pair<cplx, cplx> aw_at_pm1(int n, const AWParams& params) {
    const auto [m, p] = aw_at_pm1_full(n, params);
    return {m.value, p.value};
}

std::pair<SeriesValue, SeriesValue> aw_delta_at_pm1_full(int n, const AWParams& params) {
    if (n == 0)
        return {SeriesValue{0.0, 0.0}, SeriesValue{0.0, 0.0}};
    const QBase q = params.q();
    const cplx a = params.a();
    const cplx den = (1.0 - params.ab()) * (1.0 - params.ac()) * (1.0 - params.ad());
    if (std::abs(den) < 1e-300)
        throw SingularDenominator("aw_delta_at_pm1: (ab)(ac)(ad) denominator vanished");
    const cplx coef = series_prefactor(n, params) * a * (1.0 - q.v()) * (1.0 - q.pow(-n)) *
                      (1.0 - params.abcd() * q.pow(n - 1)) / den;
    const auto eval = [&](cplx sgn_a) {
        // One degree lower, all parameter slots shifted by q.
        SeriesSpec spec{{q.pow(-(n - 1)), params.abcd() * q.pow(n), sgn_a * q.v(), sgn_a},
                        {params.ab() * q.v(), params.ac() * q.v(), params.ad() * q.v()},
                        q.v(),
                        n};
        return phi_terminating_full(spec, q);
    };
    const SeriesValue sm = eval(-a);
    const SeriesValue sp = eval(a);
    return {SeriesValue{coef * sm.value, std::abs(coef) * sm.cond},
            SeriesValue{-coef * sp.value, std::abs(coef) * sp.cond}};
}

std::pair<cplx, cplx> aw_delta_at_pm1(int n, const AWParams& params) {
    const auto [m, p] = aw_delta_at_pm1_full(n, params);
    return {m.value, p.value};
}

WeightEvaluator::WeightEvaluator(const AWParams& params, double tail_tol)
    : params_(params), tail_tol_(tail_tol) {
    params.require_admissible();
    const QBase q = params.q();
    cplx num = 1.0;
    for (cplx z : {cplx(q.v()), params.ab(), params.ac(), params.ad(),
                   params.b() * params.c(), params.b() * params.d(), params.c() * params.d()})
        num *= qpoch_inf(z, q, tail_tol);
    norm_const_ = real_checked(num / qpoch_inf(params.abcd(), q, tail_tol)) / (2.0 * M_PI);
    // Truncation order for the h-products: factors are 1 - 2 alpha x q^k + alpha^2 q^{2k}
    // with |alpha| <= max(1, sqrt(q)); reuse the qpoch_inf tail bound with |z| ~ 3.
    const double target = tail_tol * (1.0 - q.v()) / 3.0;
    trunc_ = static_cast<int>(std::ceil(std::log(target) / std::log(q.v())));
}

namespace {

double h_product(double x, cplx alpha, double q, int K) {
    // prod_k (1 - 2 alpha x q^k + alpha^2 q^{2k}); real for x real and
    // conjugation-closed parameter sets once multiplied out pairwise.
    cplx r = 1.0;
    cplx aq = alpha;
    for (int k = 0; k < K; ++k) {
        r *= 1.0 - 2.0 * aq * x + aq * aq;
        aq *= q;
    }
    return r.real(); // callers combine conjugate pairs; residue checked upstream
}

cplx h_product_c(double x, cplx alpha, double q, int K) {
    cplx r = 1.0;
    cplx aq = alpha;
    for (int k = 0; k < K; ++k) {
        r *= 1.0 - 2.0 * aq * x + aq * aq;
        aq *= q;
    }
    return r;
}

} // namespace

double WeightEvaluator::theta_density(double theta) const {
    const double x = std::cos(theta);
    const QBase q = params_.q();
    const double num = h_product(x, 1.0, q.v(), trunc_) * h_product(x, -1.0, q.v(), trunc_) *
                       h_product(x, q.sqrt(), q.v(), trunc_) * h_product(x, -q.sqrt(), q.v(), trunc_);
    const cplx den = h_product_c(x, params_.a(), q.v(), trunc_) *
                     h_product_c(x, params_.b(), q.v(), trunc_) *
                     h_product_c(x, params_.c(), q.v(), trunc_) *
                     h_product_c(x, params_.d(), q.v(), trunc_);
    return norm_const_ * num / real_checked(den);
}

double WeightEvaluator::operator()(double x) const {
    if (!(std::abs(x) < 1.0))
        throw OutOfInterval("aw_weight: |x| must be < 1");
    return theta_density(std::acos(x)) / std::sqrt(1.0 - x * x);
}

double aw_weight(double x, const AWParams& params, double tail_tol) {
    return WeightEvaluator(params, tail_tol)(x);
}

double norm_sq(int n, const AWParams& params, double tail_tol) {
    params.require_admissible();
    const QBase q = params.q();
    const cplx abcd = params.abcd();
    cplx num = std::pow(2.0, -2.0 * n);
    for (cplx z : {cplx(q.v()), params.ab(), params.ac(), params.ad(), params.b() * params.c(),
                   params.b() * params.d(), params.c() * params.d(), abcd * q.pow(2 * n)})
        num *= qpoch_inf(z, q, tail_tol);
    cplx den = qpoch(abcd * q.pow(n - 1), q, n);
    for (cplx z : {cplx(q.pow(n + 1)), params.ab() * q.pow(n), params.ac() * q.pow(n),
                   params.ad() * q.pow(n), params.b() * params.c() * q.pow(n),
                   params.b() * params.d() * q.pow(n), params.c() * params.d() * q.pow(n), abcd})
        den *= qpoch_inf(z, q, tail_tol);
    if (std::abs(den) < 1e-300)
        throw SingularDenominator("norm_sq: denominator product vanished");
    return real_checked(num / den);
}

DiffCoeffs diff_coeffs(int n, const LatticePoint& p, const AWParams& params) {
    const QBase q = params.q();
    const double sq = q.sqrt() - 1.0 / q.sqrt();
    const cplx abcd = params.abcd();
    DiffCoeffs r;
    r.alpha = 4.0 * q.pow(1 - n) * sq * (1.0 - abcd * q.pow(2 * n - 1));
    // beta_bar_n(s) is affine in x(s + n/2); the constant term is pinned by
    // the n = 0 case of the forward formula (it must reproduce -alpha (x - beta_0)).
    const cplx shift_den = 2.0 * (abcd * q.pow(n) - q.pow(-n));
    if (std::abs(shift_den) < 1e-300)
        throw SingularDenominator("diff_coeffs: abcd q^n - q^{-n} vanished");
    const cplx xn = x_shifted(p, 0.5 * n, q);
    r.beta_bar = -4.0 * q.pow(1 - 0.5 * n) * sq * (1.0 - abcd * q.pow(n - 1)) *
                 (xn + (params.e1() * q.pow(-0.5 * n) - params.e3() * q.pow(0.5 * n)) / shift_den);
    r.beta_hat = r.beta_bar - lambda_n(n, params) * p.dx_half;
    return r;
}

ThetaXi theta_xi(int n, const LatticePoint& p, const FamilyContext& ctx) {
    if (n < 1)
        throw InvalidParameters("theta_xi: needs n >= 1");
    if (std::abs(p.dx_fwd) < 1e-13 * (1.0 + std::abs(p.x)))
        throw DegenerateLatticePoint("theta_xi: Delta x(s) vanished");
    const DiffCoeffs dc = diff_coeffs(n, p, ctx.params());
    const cplx ag = dc.alpha * ctx.gamma(n);
    if (std::abs(ag) < 1e-300)
        throw SingularDenominator("theta_xi: alpha_n gamma_n vanished");
    const cplx phi = phi_big(p, ctx.params());
    ThetaXi r;
    r.theta = (phi / p.dx_fwd + dc.alpha * (p.x - ctx.beta(n)) + dc.beta_hat) / ag;
    r.xi = -phi / (p.dx_fwd * ag);
    return r;
}

} // namespace qaw
