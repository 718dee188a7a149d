#include <doctest.h>

#include <numbers>
#include <random>

#include "qaw/verify.hpp"
#include "test_util.hpp"

using namespace qaw;
using qaw::test::make_params;
using qaw::test::param_sets;
using qaw::test::poly_coeffs;
using qaw::test::rel2;

TEST_CASE("quadrature rule") {
    for (int m : {32, 64, 257}) {
        const QuadratureRule r = QuadratureRule::gauss_legendre_theta(m);
        double sum = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            CHECK(r.nodes[i] > 0.0);
            CHECK(r.nodes[i] < std::numbers::pi);
            CHECK(r.weights[i] > 0.0);
            sum += r.weights[i];
        }
        CHECK(rel2(sum, std::numbers::pi) < 1e-14);
    }
}

TEST_CASE("integrate_weighted against the family data") {
    const AWParams params = make_params(param_sets()[0]);
    const FamilyContext ctx = FamilyContext::build(params, 8);

    CHECK(rel2(integrate_weighted([](double) { return 1.0; }, params, 1e-12), 1.0) < 1e-8);

    const double m1 = integrate_weighted([](double x) { return x; }, params, 1e-12);
    CHECK(std::abs(m1 - real_checked(ctx.beta(0))) < 1e-9);

    const auto P = [&](int n, double x) { return real_checked(ctx.eval(n, x)); };
    CHECK(std::abs(integrate_weighted([&](double x) { return P(1, x); }, params, 1e-12)) < 1e-10);
    CHECK(rel2(integrate_weighted([&](double x) { return P(2, x) * P(2, x); }, params, 1e-12),
               ctx.d2(2)) < 1e-8);
    CHECK(rel2(integrate_weighted([&](double x) { return P(3, x) * P(3, x); }, params, 1e-12),
               norm_sq(3, params, 1e-15)) < 1e-8);
}

TEST_CASE("classical orthogonality through quadrature") {
    const AWParams params = make_params(param_sets()[1]);
    const FamilyContext ctx = FamilyContext::build(params, 8);
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; m <= n; ++m) {
            const double ip =
                integrate_weighted([&, n, m](double x) { return real_checked(ctx.eval(n, x)) *
                                                                real_checked(ctx.eval(m, x)); },
                                   params, 1e-12);
            if (n == m)
                CHECK(rel2(ip, ctx.d2(n)) < 1e-8);
            else
                CHECK(std::abs(ip) < 1e-8 * std::sqrt(ctx.d2(n) * ctx.d2(m)));
        }
}

TEST_CASE("inner_mod") {
    const AWParams params = make_params(param_sets()[0]);
    const FamilyContext ctx = FamilyContext::build(params, 4);
    const auto one = [](double) { return 1.0; };

    CHECK(rel2(inner_mod(one, one, params, {0.0, 0.0}, 1e-12), 1.0) < 1e-8);
    CHECK(rel2(inner_mod(one, one, params, {0.4, 1.1}, 1e-12), 1.0 + 0.4 + 1.1) < 1e-8);

    // the modified family is orthogonal to constants
    const GenFamily fam(ctx, {0.4, 1.1});
    const auto Pt1 = [&](double x) { return real_checked(fam.eval_kernelrep(1, x)); };
    CHECK(std::abs(inner_mod(Pt1, one, params, {0.4, 1.1}, 1e-12)) < 1e-9);

    // bilinearity and symmetry on random smooth functions
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const double a1 = u(rng), a2 = u(rng);
        const auto f = [a1](double x) { return std::cos(a1 + 2.0 * x); };
        const auto g = [a2](double x) { return x * x + a2; };
        const auto h = [a1, a2](double x) { return a2 * x + a1; };
        const MassConfig mm{0.2, 0.3};
        const double lhs = inner_mod([&](double x) { return f(x) + 2.0 * h(x); }, g, params, mm, 1e-12);
        const double rhs = inner_mod(f, g, params, mm, 1e-12) + 2.0 * inner_mod(h, g, params, mm, 1e-12);
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
        CHECK(std::abs(inner_mod(f, g, params, mm, 1e-12) - inner_mod(g, f, params, mm, 1e-12)) <
              1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("gram reports") {
    const AWParams params = make_params(param_sets()[0]);
    const FamilyContext ctx = FamilyContext::build(params, 6);

    SUBCASE("zero masses: classical Gram") {
        const GramReport rep = gram(4, ctx, {0.0, 0.0}, 1e-9);
        CHECK(rep.max_offdiag_rel < 1e-8);
        for (int n = 0; n <= 4; ++n)
            CHECK(rel2(rep.at(n, n), ctx.d2(n)) < 1e-8);
        // symmetry
        for (int r = 0; r <= 4; ++r)
            for (int c = 0; c <= 4; ++c)
                CHECK(rep.at(r, c) == rep.at(c, r));
    }

    SUBCASE("modified Gram matches the modified norms") {
        const GramReport rep = gram(4, ctx, {0.5, 0.5}, 1e-9);
        const GenFamily fam(ctx, {0.5, 0.5});
        CHECK(rep.max_offdiag_rel < 1e-7);
        for (int n = 0; n <= 4; ++n)
            CHECK(rel2(rep.at(n, n), fam.boundary(n).norm_sq_mod) < 1e-7);
        CHECK(rep.max_diag_dev_rel < 1e-7);
    }
}

TEST_CASE("moment oracle") {
    const AWParams params = make_params(param_sets()[0]);
    const FamilyContext ctx = FamilyContext::build(params, 8);

    const auto polys0 = moment_oracle(1, params, {0.0, 0.0}, 1e-12);
    REQUIRE(polys0.size() == 2);
    CHECK(polys0[0] == std::vector<double>{1.0});
    CHECK(rel2(polys0[1][0], -real_checked(ctx.beta(0))) < 1e-9);
    CHECK(polys0[1][1] == 1.0);

    // degree 3 with masses matches the kernel-representation coefficients
    const MassConfig mm{0.3, 0.7};
    const auto polys = moment_oracle(3, params, mm, 1e-12);
    const GenFamily fam(ctx, mm);
    const auto coef = poly_coeffs(
        [&](double x) { return real_checked(fam.eval_kernelrep(3, x)); }, 3);
    for (int i = 0; i <= 3; ++i)
        CHECK(std::abs(polys[3][i] - coef[i]) < 1e-6 * (1.0 + std::abs(coef[i])));

    CHECK_THROWS_AS(moment_oracle(9, params, mm, 1e-10), InvalidParameters);
}

TEST_CASE("oracle equivalence across parameter and mass choices") {
    for (const auto& set : {param_sets()[1], param_sets()[4]}) {
        const AWParams params = make_params(set);
        const FamilyContext ctx = FamilyContext::build(params, 7);
        for (MassConfig m : {MassConfig{0.0, 0.0}, MassConfig{0.5, 0.0}, MassConfig{0.3, 0.7}}) {
            const GenFamily fam(ctx, m);
            const auto polys = moment_oracle(5, params, m, 1e-12);
            for (int n = 0; n <= 5; ++n) {
                const auto coef = poly_coeffs(
                    [&](double x) { return real_checked(fam.eval_kernelrep(n, x)); }, n);
                for (int i = 0; i <= n; ++i)
                    CHECK(std::abs(polys[n][i] - coef[i]) < 1e-6 * (1.0 + std::abs(coef[i])));
            }
        }
    }
}

TEST_CASE("modified orthogonality") {
    const AWParams params = make_params(param_sets()[0]);
    const FamilyContext ctx = FamilyContext::build(params, 6);
    const MassConfig mm{0.3, 0.7};
    const GenFamily fam(ctx, mm);
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= n; ++m) {
            const double ip = inner_mod(
                [&](double x) { return real_checked(fam.eval_kernelrep(n, x)); },
                [&](double x) { return real_checked(fam.eval_kernelrep(m, x)); }, params, mm, 1e-12);
            const double dn = fam.boundary(n).norm_sq_mod;
            const double dm = fam.boundary(m).norm_sq_mod;
            if (n == m)
                CHECK(rel2(ip, dn) < 1e-7);
            else
                CHECK(std::abs(ip) < 1e-7 * std::sqrt(dn * dm));
        }
}

TEST_CASE("kernel reproducing property under the weight") {
    const AWParams params = make_params(param_sets()[0]);
    const FamilyContext ctx = FamilyContext::build(params, 6);
    for (int n : {2, 5})
        for (int m = 0; m <= n; ++m)
            for (double x0 : {-0.4, 0.55}) {
                const double lhs = integrate_weighted(
                    [&](double y) {
                        return real_checked(kernel_sum(n, cplx(x0), cplx(y), ctx) *
                                            ctx.eval(m, cplx(y)));
                    },
                    params, 1e-12);
                CHECK(rel2(lhs, ctx.eval(m, cplx(x0))) < 1e-7);
            }
}
