#include "qaw/cd_kernels.hpp"

#include <cmath>
#include <vector>

namespace qaw {

cplx kernel_sum(int n, cplx x1, cplx x2, const FamilyContext& ctx) {
    if (n < 0)
        return 0.0;
    std::vector<cplx> p1(n + 1), p2(n + 1);
    ctx.eval_all(x1, p1);
    ctx.eval_all(x2, p2);
    cplx r = 0.0;
    for (int k = 0; k <= n; ++k)
        r += p1[k] * p2[k] / ctx.d2(k);
    return r;
}

cplx kernel_cd(int n, cplx x1, cplx x2, const FamilyContext& ctx) {
    if (std::abs(x1 - x2) <= 1e-8)
        throw ConfluentPoints("kernel_cd: arguments too close, use kernel_sum");
    const cplx num = ctx.eval(n + 1, x1) * ctx.eval(n, x2) - ctx.eval(n + 1, x2) * ctx.eval(n, x1);
    return num / (ctx.d2(n) * (x1 - x2));
}

cplx kernel_forward(int n, const LatticePoint& p, const LatticePoint& p0, const FamilyContext& ctx) {
    if (std::abs(p.x - p0.x) <= 1e-8)
        throw ConfluentPoints("kernel_forward: arguments too close, use kernel_sum");
    const AWParams& params = ctx.params();
    const QBase q = params.q();
    const DiffCoeffs dc = diff_coeffs(n, p, params);
    const DiffCoeffs dc0 = diff_coeffs(n, p0, params);
    const cplx dx = p.dx_fwd, dx0 = p0.dx_fwd;
    if (std::abs(dx) < 1e-13 || std::abs(dx0) < 1e-13)
        throw DegenerateLatticePoint("kernel_forward: Delta x vanished");
    const cplx Pn = ctx.eval(n, p.x);
    const cplx Pn0 = ctx.eval(n, p0.x);
    const cplx dPn = (ctx.eval(n, shift(p, 1, q).x) - Pn) / dx;
    const cplx dPn0 = (ctx.eval(n, shift(p0, 1, q).x) - Pn0) / dx0;
    const cplx denom = dc.alpha * ctx.d2(n) * (p.x - p0.x);
    return (Pn0 * ((dc0.beta_hat - dc.beta_hat) * Pn + phi_big(p, params) * dPn) -
            phi_big(p0, params) * dPn0 * Pn) /
           denom;
}

cplx kernel_backward(int n, const LatticePoint& p, const LatticePoint& p0, const FamilyContext& ctx) {
    if (std::abs(p.x - p0.x) <= 1e-8)
        throw ConfluentPoints("kernel_backward: arguments too close, use kernel_sum");
    const AWParams& params = ctx.params();
    const QBase q = params.q();
    const DiffCoeffs dc = diff_coeffs(n, p, params);
    const DiffCoeffs dc0 = diff_coeffs(n, p0, params);
    const cplx dx = p.dx_bwd, dx0 = p0.dx_bwd;
    if (std::abs(dx) < 1e-13 || std::abs(dx0) < 1e-13)
        throw DegenerateLatticePoint("kernel_backward: nabla x vanished");
    const cplx Pn = ctx.eval(n, p.x);
    const cplx Pn0 = ctx.eval(n, p0.x);
    const cplx dPn = (Pn - ctx.eval(n, shift(p, -1, q).x)) / dx;
    const cplx dPn0 = (Pn0 - ctx.eval(n, shift(p0, -1, q).x)) / dx0;
    const cplx denom = dc.alpha * ctx.d2(n) * (p.x - p0.x);
    return (Pn0 * ((dc0.beta_bar - dc.beta_bar) * Pn + sigma(p, params) * dPn) -
            sigma(p0, params) * dPn0 * Pn) /
           denom;
}

KernelEval kernel_eval(KernelForm form, int n, const LatticePoint& p, const LatticePoint& p0,
                       const FamilyContext& ctx) {
    KernelEval r;
    r.n = n;
    r.x1 = p.x;
    r.x2 = p0.x;
    r.form_used = form;
    switch (form) {
    case KernelForm::sum: r.value = kernel_sum(n, p.x, p0.x, ctx); break;
    case KernelForm::cd: r.value = kernel_cd(n, p.x, p0.x, ctx); break;
    case KernelForm::forward: r.value = kernel_forward(n, p, p0, ctx); break;
    case KernelForm::backward: r.value = kernel_backward(n, p, p0, ctx); break;
    }
    return r;
}

KappaCoeffs varkappa(int n, const LatticePoint& p, int anchor, const FamilyContext& ctx) {
    if (n < 1)
        throw InvalidParameters("varkappa: needs n >= 1");
    if (anchor != -1 && anchor != 1)
        throw InvalidParameters("varkappa: anchor must be -1 or +1");
    const cplx x0(static_cast<double>(anchor));
    if (std::abs(p.x - x0) <= 1e-8)
        throw ConfluentPoints("varkappa: x(s) too close to the anchor");
    const AWParams& params = ctx.params();
    const QBase q = params.q();
    const int m = n - 1;

    const LatticePoint p0 = point_from_qs(cplx(static_cast<double>(anchor)), q);
    const DiffCoeffs dcs = diff_coeffs(m, p, params);
    const DiffCoeffs dc0 = diff_coeffs(m, p0, params);
    const double Pm0 = ctx.p_at(m, anchor);
    const double dPm0 = ctx.dp_at(m, anchor);
    const cplx denom = dc0.alpha * ctx.d2(m) * (p.x - x0);

    KappaCoeffs r;
    r.kappa = (Pm0 * (dc0.beta_hat - dcs.beta_hat) - phi_big(p0, params) * dPm0 / p0.dx_fwd) / denom;
    r.kappa_bar = Pm0 * phi_big(p, params) / denom;
    return r;
}

} // namespace qaw
