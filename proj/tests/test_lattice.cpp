#include <doctest.h>

#include <random>

#include "qaw/lattice.hpp"
#include "test_util.hpp"

using namespace qaw;
using qaw::test::rel2;

TEST_CASE("point_from_qs anchors") {
    QBase q(0.5);
    CHECK(rel2(point_from_qs(cplx(1.0), q).x, 1.0) < 1e-15);
    CHECK(rel2(point_from_qs(cplx(-1.0), q).x, -1.0) < 1e-15);
    CHECK(std::abs(point_from_qs(cplx(0.0, 1.0), q).x) < 1e-16); // theta = pi/2
    CHECK_THROWS_AS(point_from_qs(cplx(0.0), q), ZeroArgument);
}

TEST_CASE("LatticePoint fields are coherent") {
    QBase q(0.7);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> theta(0.1, M_PI - 0.1);
    for (int trial = 0; trial < 12; ++trial) {
        const LatticePoint p = point_from_qs(std::polar(1.0, theta(rng)), q);
        CHECK(rel2(p.x, 0.5 * (p.qs + 1.0 / p.qs)) < 1e-14);
        CHECK(rel2(p.dx_fwd, point_from_qs(p.qs * q.v(), q).x - p.x) < 1e-14);
        CHECK(std::abs(p.x.imag()) < 1e-12); // real on the unit circle
        // Delta x + nabla x = x(s+1) - x(s-1)
        const cplx span = point_from_qs(p.qs * q.v(), q).x - point_from_qs(p.qs / q.v(), q).x;
        CHECK(rel2(p.dx_fwd + p.dx_bwd, span) < 1e-14);
        // dx_half is the forward difference at the half-shifted point
        const LatticePoint ph = point_from_qs(p.qs / q.sqrt(), q);
        CHECK(rel2(p.dx_half, ph.dx_fwd) < 1e-14);
        // lattice symmetry q^s -> q^{-s}
        CHECK(rel2(p.x, point_from_qs(1.0 / p.qs, q).x) < 1e-14);
    }
}

TEST_CASE("point_from_x branches and round trip") {
    QBase q(0.5);
    CHECK(rel2(point_from_x(1.0, q).qs, 1.0) < 1e-15);
    CHECK(rel2(point_from_x(0.0, q, Branch::upper).qs, cplx(0.0, 1.0)) < 1e-15);
    CHECK(rel2(point_from_x(0.5, q, Branch::upper).qs, std::polar(1.0, M_PI / 3.0)) < 1e-14);
    CHECK(rel2(point_from_x(0.5, q, Branch::lower).qs, std::polar(1.0, -M_PI / 3.0)) < 1e-14);
    for (double x : {-0.99, -0.4, 0.12, 0.77})
        for (Branch br : {Branch::upper, Branch::lower})
            CHECK(rel2(point_from_x(x, q, br).x, x) < 1e-14);
    CHECK_THROWS_AS(point_from_x(1.001, q), OutOfInterval);
}

TEST_CASE("shift") {
    QBase q(0.6);
    const LatticePoint p = point_from_qs(std::polar(1.0, 0.9), q);
    CHECK(shift(p, 0, q).qs == p.qs);
    CHECK(rel2(shift(shift(p, 1, q), -1, q).qs, p.qs) < 1e-14);
    CHECK(rel2(shift(point_from_qs(cplx(1.0), q), 1, q).x, 0.5 * (q.v() + 1.0 / q.v())) < 1e-15);
}

TEST_CASE("general lattice hook reproduces the q-Racah mu(t)") {
    // mu(t) = [t]_q [t+1]_q with the symmetric bracket; checks the
    // (c1, c2, c3) constants of the q-Racah lattice hook.
    for (double qq : {0.5, 0.72}) {
        QBase q(qq);
        const Lattice mu = Lattice::racah_mu(q);
        const auto bracket = [&](double t) {
            return (q.pow(0.5 * t) - q.pow(-0.5 * t)) / (q.sqrt() - 1.0 / q.sqrt());
        };
        for (double t : {0.8, 1.5, 2.0, 3.3}) {
            const cplx m = mu.x_of(q.pow(t));
            CHECK(rel2(m, bracket(t) * bracket(t + 1.0)) < 1e-13);
        }
    }
}
