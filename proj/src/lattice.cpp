#include "qaw/lattice.hpp"

#include <cmath>

namespace qaw {

LatticePoint Lattice::at(cplx qs) const {
    if (qs == cplx(0.0))
        throw ZeroArgument("Lattice: q^s = 0");
    LatticePoint p;
    p.qs = qs;
    p.x = x_of(qs);
    p.dx_fwd = x_of(qs * q_.v()) - p.x;
    p.dx_bwd = p.x - x_of(qs / q_.v());
    p.dx_half = x_of(qs * q_.sqrt()) - x_of(qs / q_.sqrt());
    return p;
}

LatticePoint point_from_qs(cplx qs, QBase q) {
    return Lattice::askey_wilson(q).at(qs);
}

LatticePoint point_from_x(double x, QBase q, Branch branch) {
    if (std::abs(x) > 1.0 + 1e-12)
        throw OutOfInterval("point_from_x: |x| > 1");
    const double y = std::sqrt(std::max(0.0, 1.0 - x * x));
    const cplx qs(x, branch == Branch::upper ? y : -y);
    return point_from_qs(qs, q);
}

LatticePoint shift(const LatticePoint& p, int k, QBase q) {
    return point_from_qs(p.qs * q.pow(k), q);
}

} // namespace qaw
