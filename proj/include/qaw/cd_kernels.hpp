#ifndef QAW_CD_KERNELS_HPP
#define QAW_CD_KERNELS_HPP

#include "qaw/askey_wilson.hpp"

namespace qaw {

/// K_n(x1, x2) = sum_{k<=n} P_k(x1) P_k(x2) / d_k^2. Valid everywhere,
/// including confluent arguments.
cplx kernel_sum(int n, cplx x1, cplx x2, const FamilyContext& ctx);

/// Christoffel-Darboux quotient form. Throws ConfluentPoints when
/// |x1 - x2| <= 1e-8 (catastrophic cancellation region; use kernel_sum).
cplx kernel_cd(int n, cplx x1, cplx x2, const FamilyContext& ctx);

/// Expanded forms that eliminate P_{n+1} through the forward / backward
/// differentiation formulas.
cplx kernel_forward(int n, const LatticePoint& p, const LatticePoint& p0, const FamilyContext& ctx);
cplx kernel_backward(int n, const LatticePoint& p, const LatticePoint& p0, const FamilyContext& ctx);

/// Coefficients of the anchored kernel decomposition
///   K_{n-1}(x(s), anchor) = kappa P_{n-1}(x(s)) + kappa_bar Delta P_{n-1} / Delta x(s),
/// anchor = -1 or +1. Requires n >= 1 and x(s) away from the anchor.
struct KappaCoeffs {
    cplx kappa;
    cplx kappa_bar;
};
KappaCoeffs varkappa(int n, const LatticePoint& p, int anchor, const FamilyContext& ctx);

/// A kernel evaluation tagged with the route that produced it. All forms
/// agree where defined; the quotient/expanded ones refuse confluent points.
enum class KernelForm { sum, cd, forward, backward };

struct KernelEval {
    int n = 0;
    cplx x1{};
    cplx x2{};
    cplx value{};
    KernelForm form_used = KernelForm::sum;
};

/// Evaluate K_n(x(s), x(s0)) through the requested route.
KernelEval kernel_eval(KernelForm form, int n, const LatticePoint& p, const LatticePoint& p0,
                       const FamilyContext& ctx);

} // namespace qaw

#endif
