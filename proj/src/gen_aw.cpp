#include "qaw/gen_aw.hpp"

#include <cmath>

namespace qaw {

GenFamily::GenFamily(const FamilyContext& ctx, MassConfig masses) : ctx_(&ctx), masses_(masses) {
    ctx.params().require_admissible();
    const int nmax = ctx.n_max();
    const double A = masses.mass_neg, B = masses.mass_pos;

    // Prefix kernel values at the anchors: ksum_*[m] = K_m(.,.).
    ksum_neg_.resize(nmax + 1);
    ksum_pos_.resize(nmax + 1);
    ksum_mix_.resize(nmax + 1);
    double knn = 0.0, kpp = 0.0, knp = 0.0;
    for (int m = 0; m <= nmax; ++m) {
        const double pn = ctx.p_at(m, -1), pp = ctx.p_at(m, +1);
        const double w = 1.0 / ctx.d2(m);
        knn += pn * pn * w;
        kpp += pp * pp * w;
        knp += pn * pp * w;
        ksum_neg_[m] = knn;
        ksum_pos_[m] = kpp;
        ksum_mix_[m] = knp;
    }

    bnd_.resize(nmax + 1);
    bnd_[0] = GenBoundary{0, 1.0, 1.0, 1.0, 1.0 + A + B};
    for (int n = 1; n <= nmax; ++n) {
        const double Kmm = ksum_neg_[n - 1], Kpp = ksum_pos_[n - 1], Kmp = ksum_mix_[n - 1];
        const double kap = (1.0 + A * Kmm) * (1.0 + B * Kpp) - A * B * Kmp * Kmp;
        if (std::abs(kap) < 1e-13)
            throw SingularKappa("GenFamily: kappa_{n-1} vanished (signed masses)");
        const double Pm = ctx.p_at(n, -1), Pp = ctx.p_at(n, +1);
        GenBoundary g;
        g.n = n;
        g.p_neg = ((1.0 + B * Kpp) * Pm - B * Kmp * Pp) / kap;
        g.p_pos = ((1.0 + A * Kmm) * Pp - A * Kmp * Pm) / kap;
        g.kappa_det = kap;
        g.norm_sq_mod = ctx.d2(n) + A * g.p_neg * Pm + B * g.p_pos * Pp;
        bnd_[n] = g;
    }
}

cplx GenFamily::eval_kernelrep(int n, cplx x) const {
    if (n == 0)
        return 1.0;
    const GenBoundary& g = boundary(n);
    cplx r = ctx_->eval(n, x);
    if (masses_.mass_neg != 0.0)
        r -= masses_.mass_neg * g.p_neg * kernel_sum(n - 1, x, cplx(-1.0), *ctx_);
    if (masses_.mass_pos != 0.0)
        r -= masses_.mass_pos * g.p_pos * kernel_sum(n - 1, x, cplx(1.0), *ctx_);
    return r;
}

SeriesValue GenFamily::eval_kernelrep_full(int n, cplx x) const {
    if (n == 0)
        return {1.0, 1.0};
    const GenBoundary& g = boundary(n);
    std::vector<cplx> p(n);
    ctx_->eval_all(x, p);
    cplx kneg = 0.0, kpos = 0.0;
    double kneg_abs = 0.0, kpos_abs = 0.0;
    for (int k = 0; k < n; ++k) {
        const double w = 1.0 / ctx_->d2(k);
        kneg += p[k] * ctx_->p_at(k, -1) * w;
        kpos += p[k] * ctx_->p_at(k, +1) * w;
        kneg_abs += std::abs(p[k]) * std::abs(ctx_->p_at(k, -1)) * w;
        kpos_abs += std::abs(p[k]) * std::abs(ctx_->p_at(k, +1)) * w;
    }
    const cplx Pn = ctx_->eval(n, x);
    const cplx value =
        Pn - masses_.mass_neg * g.p_neg * kneg - masses_.mass_pos * g.p_pos * kpos;
    const double cond = std::abs(Pn) +
                        std::abs(masses_.mass_neg * g.p_neg) * kneg_abs +
                        std::abs(masses_.mass_pos * g.p_pos) * kpos_abs;
    return {value, cond};
}

void GenFamily::eval_all(cplx x, std::span<cplx> out) const {
    if (out.empty())
        return;
    const int m = static_cast<int>(out.size()) - 1;
    std::vector<cplx> p(m + 1);
    ctx_->eval_all(x, p);
    cplx kneg = 0.0, kpos = 0.0; // K_{n-1}(x, -+1) prefix sums
    out[0] = 1.0;
    for (int n = 1; n <= m; ++n) {
        const double w = 1.0 / ctx_->d2(n - 1);
        kneg += p[n - 1] * ctx_->p_at(n - 1, -1) * w;
        kpos += p[n - 1] * ctx_->p_at(n - 1, +1) * w;
        const GenBoundary& g = bnd_[n];
        out[n] = p[n] - masses_.mass_neg * g.p_neg * kneg - masses_.mass_pos * g.p_pos * kpos;
    }
}

cplx GenFamily::eval_diffrep(int n, const LatticePoint& p) const {
    return eval_diffrep_full(n, p).value;
}

SeriesValue GenFamily::eval_diffrep_full(int n, const LatticePoint& p) const {
    if (n == 0)
        return {1.0, 1.0};
    if (std::abs(p.x - 1.0) < 1e-6 || std::abs(p.x + 1.0) < 1e-6)
        throw ConfluentPoints("eval_diffrep: x inside the exclusion disk around -+1");
    const GenBoundary& g = boundary(n);
    cplx abar = 0.0, bbar = 0.0;
    double abar_abs = 0.0, bbar_abs = 0.0;
    if (masses_.mass_neg != 0.0) {
        const KappaCoeffs k = varkappa(n, p, -1, *ctx_);
        abar -= masses_.mass_neg * g.p_neg * k.kappa;
        bbar -= masses_.mass_neg * g.p_neg * k.kappa_bar;
        abar_abs += std::abs(masses_.mass_neg * g.p_neg * k.kappa);
        bbar_abs += std::abs(masses_.mass_neg * g.p_neg * k.kappa_bar);
    }
    if (masses_.mass_pos != 0.0) {
        const KappaCoeffs k = varkappa(n, p, +1, *ctx_);
        abar -= masses_.mass_pos * g.p_pos * k.kappa;
        bbar -= masses_.mass_pos * g.p_pos * k.kappa_bar;
        abar_abs += std::abs(masses_.mass_pos * g.p_pos * k.kappa);
        bbar_abs += std::abs(masses_.mass_pos * g.p_pos * k.kappa_bar);
    }
    const QBase q = ctx_->params().q();
    const cplx Pn = ctx_->eval(n, p.x);
    const cplx pm = ctx_->eval(n - 1, p.x);
    const cplx dpm = (ctx_->eval(n - 1, shift(p, 1, q).x) - pm) / p.dx_fwd;
    return {Pn + abar * pm + bbar * dpm,
            std::abs(Pn) + abar_abs * std::abs(pm) + bbar_abs * std::abs(dpm)};
}

SeriesValue GenFamily::eval_phirep_full(int n, const LatticePoint& p) const {
    if (n == 0)
        return {1.0, 1.0};
    const PhiRep r = rep_coeffs(n, p.x);
    if (std::abs(r.phi) < 1e-12 * (1.0 + std::abs(p.x * p.x)))
        throw ConfluentPoints("eval_phirep: phi(s) vanishes at the interval ends");
    const cplx Pn = ctx_->eval(n, p.x);
    const cplx Pm = ctx_->eval(n - 1, p.x);
    return {(r.coef_n * Pn + r.coef_nm1 * Pm) / r.phi,
            (std::abs(r.coef_n * Pn) + std::abs(r.coef_nm1 * Pm)) / std::abs(r.phi)};
}

SeriesValue GenFamily::eval_shiftrep_full(int n, const LatticePoint& p) const {
    if (n == 0)
        return {1.0, 1.0};
    const cplx phi = p.x * p.x - 1.0;
    if (std::abs(phi) < 1e-12 * (1.0 + std::abs(p.x * p.x)))
        throw ConfluentPoints("eval_shiftrep: phi(s) vanishes at the interval ends");
    const ShiftRep s = shift_rep_coeffs(n, p);
    const QBase q = ctx_->params().q();
    const cplx Pn = ctx_->eval(n, p.x);
    const cplx Pn_u = ctx_->eval(n, shift(p, 1, q).x);
    // a = coef_n + coef_nm1 * Theta can cancel; fold the pre-cancellation
    // magnitude into the conditioning estimate.
    const PhiRep pr = rep_coeffs(n, p.x);
    const ThetaXi tx = theta_xi(n, p, *ctx_);
    const double a_abs = std::abs(pr.coef_n) + std::abs(pr.coef_nm1 * tx.theta);
    return {(s.a * Pn + s.b * Pn_u) / phi,
            (a_abs * std::abs(Pn) + std::abs(s.b * Pn_u)) / std::abs(phi)};
}

GenFamily::PhiRep GenFamily::rep_coeffs(int n, cplx x) const {
    if (n < 1)
        throw InvalidParameters("rep_coeffs: needs n >= 1");
    const GenBoundary& g = boundary(n);
    const double A = masses_.mass_neg, B = masses_.mass_pos;
    const double w = 1.0 / ctx_->d2(n - 1);
    PhiRep r;
    r.phi = x * x - 1.0;
    r.coef_n = r.phi - w * (A * g.p_neg * ctx_->p_at(n - 1, -1) * (x - 1.0) +
                            B * g.p_pos * ctx_->p_at(n - 1, +1) * (x + 1.0));
    r.coef_nm1 = w * (A * g.p_neg * ctx_->p_at(n, -1) * (x - 1.0) +
                      B * g.p_pos * ctx_->p_at(n, +1) * (x + 1.0));
    return r;
}

GenFamily::ShiftRep GenFamily::shift_rep_coeffs(int n, const LatticePoint& p) const {
    const QBase q = ctx_->params().q();
    const auto ab_at = [&](const LatticePoint& pt) {
        const PhiRep pr = rep_coeffs(n, pt.x);
        const ThetaXi tx = theta_xi(n, pt, *ctx_);
        return std::pair<cplx, cplx>{pr.coef_n + pr.coef_nm1 * tx.theta, pr.coef_nm1 * tx.xi};
    };
    const LatticePoint pu = shift(p, 1, q);
    const LatticePoint pd = shift(p, -1, q);
    const auto [a_s, b_s] = ab_at(p);
    const auto [a_up, b_up] = ab_at(pu);
    const auto [a_dn, b_dn] = ab_at(pd);
    const SodeCoeffs su = sode_coeffs(pu, ctx_->params());
    const SodeCoeffs ss = sode_coeffs(p, ctx_->params());
    const cplx lam = ctx_->lambda(n);
    const cplx phi_up = pu.x * pu.x - 1.0;
    const cplx phi_dn = pd.x * pd.x - 1.0;

    ShiftRep r;
    r.a = a_s;
    r.b = b_s;
    r.u = su.fwd * phi_up;
    r.c = -su.bwd * b_up;
    r.d = su.fwd * a_up - b_up * (lam + su.center);
    r.v = ss.bwd * phi_dn;
    r.e = ss.bwd * b_dn - a_dn * (lam + ss.center);
    r.f = -ss.fwd * a_dn;
    return r;
}

GenFamily::SodeTilde GenFamily::sode_tilde_coeffs(int n, const LatticePoint& p) const {
    const ShiftRep s = shift_rep_coeffs(n, p);
    const cplx phi = p.x * p.x - 1.0;
    SodeTilde r;
    r.lower = s.v * (s.a * s.d - s.b * s.c);
    r.center = phi * (s.c * s.f - s.d * s.e);
    r.upper = s.u * (s.b * s.e - s.a * s.f);
    return r;
}

GenFamily::GenTtrr GenFamily::ttrr_coeffs(int n) const {
    if (n < 0 || n + 1 > ctx_->n_max())
        throw InvalidParameters("GenFamily::ttrr_coeffs: needs boundary data up to n+1");
    const double A = masses_.mass_neg, B = masses_.mass_pos;
    const double d2n = ctx_->d2(n);
    const GenBoundary& gn = bnd_[n];
    const GenBoundary& gp = bnd_[n + 1];

    GenTtrr r;
    r.delta = (A * gn.p_neg * ctx_->p_at(n, -1) + B * gn.p_pos * ctx_->p_at(n, +1)) / d2n;
    double beta = real_checked(ctx_->beta(n));
    beta += (A * gp.p_neg * ctx_->p_at(n, -1) + B * gp.p_pos * ctx_->p_at(n, +1)) / d2n;
    if (n >= 1) {
        const double d2m = ctx_->d2(n - 1);
        beta -= (A * gn.p_neg * ctx_->p_at(n - 1, -1) + B * gn.p_pos * ctx_->p_at(n - 1, +1)) / d2m;
        const GenBoundary& gm = bnd_[n - 1];
        const double delta_m =
            (A * gm.p_neg * ctx_->p_at(n - 1, -1) + B * gm.p_pos * ctx_->p_at(n - 1, +1)) /
            ctx_->d2(n - 1);
        r.gamma = real_checked(ctx_->gamma(n)) * (1.0 + r.delta) / (1.0 + delta_m);
    } else {
        r.gamma = 0.0;
    }
    r.beta = beta;
    return r;
}

SeriesValue GenFamily::eval_5phi4_full(int n, const LatticePoint& p) const {
    const AWParams& params = ctx_->params();
    const QBase q = params.q();
    const cplx phi = p.x * p.x - 1.0;
    if (n == 0)
        return {phi, std::abs(phi)};

    const PhiRep pr = rep_coeffs(n, p.x);
    const cplx a = params.a();
    const cplx abcd = params.abcd();

    // theta_n and the linear factorization of Pi_1(q^k).
    const cplx theta = (1.0 - params.ab() * q.pow(n - 1)) * (1.0 - params.ac() * q.pow(n - 1)) *
                       (1.0 - params.ad() * q.pow(n - 1)) * (1.0 - q.pow(-n)) /
                       (2.0 * a * (1.0 - abcd * q.pow(2 * n - 3)) * (1.0 - abcd * q.pow(2 * n - 2)));
    const cplx bracket = pr.coef_n * abcd * q.pow(n - 2) * theta + pr.coef_nm1 * q.pow(-n);
    if (std::abs(bracket) < 1e-13 * (std::abs(pr.coef_n) + std::abs(pr.coef_nm1) + 1e-300))
        throw DegenerateKappaS("eval_5phi4: Pi_1 linear factor bracket vanished");
    const cplx qkappa = (pr.coef_n * theta + pr.coef_nm1) / bracket;
    for (int j = 0; j <= n; ++j)
        if (std::abs(qkappa - q.pow(j)) <= 1e-12 * q.pow(j))
            throw DegenerateKappaS("eval_5phi4: q^{kappa(s)} collides with q^j");

    const std::array<cplx, 3> bases{params.ab(), params.ac(), params.ad()};
    const cplx pref = qpoch_multi(bases, q, n - 1) /
                      (std::pow(2.0 * a, n - 1) * qpoch(abcd * q.pow(n - 2), q, n - 1));
    const cplx Dn = -pref * (1.0 - qkappa) / (1.0 - q.pow(-n)) * bracket;

    SeriesSpec spec{{q.pow(-n), abcd * q.pow(n - 2), a * p.qs, a / p.qs, q.v() / qkappa},
                    {params.ab(), params.ac(), params.ad(), 1.0 / qkappa},
                    q.v(),
                    n + 1};
    const SeriesValue s = phi_terminating_full(spec, q);
    return {Dn * s.value, std::abs(Dn) * s.cond};
}

cplx GenFamily::eval_5phi4(int n, const LatticePoint& p) const {
    return eval_5phi4_full(n, p).value;
}

double racah_identity_check(int n, double t, const RacahParams& rp, QBase q) {
    const cplx a = q.pow(rp.a_tilde + 0.5);
    const cplx b = q.pow(rp.beta - rp.a_tilde + 0.5);
    const cplx c = q.pow(rp.alpha + rp.b_tilde + 0.5);
    const cplx d = q.pow(-rp.b_tilde + 0.5);
    const AWParams params = AWParams::lenient(a, b, c, d, q);
    const FamilyContext ctx = FamilyContext::build(params, n);

    const double qs = q.pow(t + 0.5);
    const double x = 0.5 * (qs + 1.0 / qs);
    const double sq = q.sqrt() - 1.0 / q.sqrt();
    const cplx lhs = std::pow(2.0, n) * std::pow(sq, -2 * n) * ctx.eval(n, x);

    // u_n^{alpha,beta}(mu(t), a~, b~) through its own terminating series.
    const std::array<cplx, 3> den_bases{q.pow(rp.a_tilde - rp.b_tilde + 1.0), q.pow(rp.beta + 1.0),
                                        q.pow(rp.a_tilde + rp.b_tilde + rp.alpha + 1.0)};
    const cplx pref = q.pow(-0.5 * n * (2.0 * rp.a_tilde + 1.0)) * qpoch_multi(den_bases, q, n) /
                      (std::pow(sq, 2 * n) * qpoch(q.pow(rp.alpha + rp.beta + n + 1.0), q, n));
    SeriesSpec spec{{q.pow(-n), q.pow(rp.alpha + rp.beta + n + 1.0), q.pow(rp.a_tilde - t),
                     q.pow(t + rp.a_tilde + 1.0)},
                    {den_bases[0], den_bases[1], den_bases[2]},
                    q.v(),
                    n + 1};
    const cplx rhs = pref * phi_terminating(spec, q);

    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

} // namespace qaw
