#ifndef QAW_LATTICE_HPP
#define QAW_LATTICE_HPP

#include "qaw/qkernel.hpp"

namespace qaw {

/// One point of a q-quadratic lattice with its difference data, all derived
/// coherently from q^s:
///   x       = x(s)
///   dx_fwd  = x(s+1) - x(s)      (Delta x)
///   dx_bwd  = x(s) - x(s-1)      (nabla x)
///   dx_half = x(s+1/2) - x(s-1/2)
struct LatticePoint {
    cplx qs;
    cplx x;
    cplx dx_fwd;
    cplx dx_bwd;
    cplx dx_half;
};

enum class Branch { upper, lower };

/// x(s) = c1 q^s + c2 q^{-s} + c3. The Askey-Wilson case is c1 = c2 = 1/2,
/// c3 = 0; the q-Racah lattice mu(t) uses different constants.
class Lattice {
  public:
    Lattice(double c1, double c2, double c3, QBase q) : c1_(c1), c2_(c2), c3_(c3), q_(q) {}

    static Lattice askey_wilson(QBase q) { return {0.5, 0.5, 0.0, q}; }

    /// mu(t) = [t]_q [t+1]_q = c1 (q^t + q^{-t-1}) + c3, the q-Racah lattice.
    static Lattice racah_mu(QBase q) {
        const double s = q.sqrt() - 1.0 / q.sqrt();
        const double c1 = q.sqrt() / (s * s);
        return {c1, c1 / q.v(), -(1.0 + q.v()) / (q.sqrt() * s * s), q};
    }

    cplx x_of(cplx qs) const { return c1_ * qs + c2_ / qs + c3_; }

    LatticePoint at(cplx qs) const;

    QBase q() const { return q_; }

  private:
    double c1_, c2_, c3_;
    QBase q_;
};

/// Askey-Wilson lattice point from q^s. Throws ZeroArgument at q^s = 0.
LatticePoint point_from_qs(cplx qs, QBase q);

/// Inversion of x = (q^s + q^{-s})/2 on [-1,1]: q^s = x +- i sqrt(1-x^2).
/// Throws OutOfInterval beyond |x| = 1 + 1e-12.
LatticePoint point_from_x(double x, QBase q, Branch branch = Branch::upper);

/// Point at q^s q^k.
LatticePoint shift(const LatticePoint& p, int k, QBase q);

/// x(s + e) for real shift e (used by the tau_n / beta_bar rows).
inline cplx x_shifted(const LatticePoint& p, double e, QBase q) {
    const cplx u = p.qs * q.pow(e);
    return 0.5 * (u + 1.0 / u);
}

} // namespace qaw

#endif
