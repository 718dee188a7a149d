#include <doctest.h>

#include <cstdio>
#include <set>

#include "qaw/report.hpp"
#include "test_util.hpp"

using namespace qaw;
using qaw::test::rel2;

TEST_CASE("config round-trips losslessly") {
    RunConfig cfg;
    cfg.a = 0.12345678901234567;
    cfg.tol = 3.0e-9;
    cfg.seed = 987654321123456789ull;
    const std::string path = "/tmp/qaw_test_config.json";
    cfg.save(path);
    const RunConfig back = RunConfig::from_file(path);
    CHECK(back.a == cfg.a);
    CHECK(back.tol == cfg.tol);
    CHECK(back.seed == cfg.seed);
    CHECK(back.to_json_string() == cfg.to_json_string());
    std::remove(path.c_str());
}

TEST_CASE("residual suite lists every identity once and is deterministic") {
    RunConfig cfg;
    cfg.n_max = 4; // keep the unit-test run light
    const ResidualReport rep = run_residual_suite(cfg);

    const std::set<std::string> expected{
        "rez8-sode",          "rez10-ttrr",          "rez11-diff-backward",
        "rez12-diff-forward", "rez12a-theta-xi",     "kernel-cd-quotient",
        "rez14-kernel-backward", "rez15-kernel-forward", "ker-a-varkappa-neg",
        "ker-b-varkappa-pos", "pol-wil-nu-series",   "tab1-specials-pm1",
        "tab1-dn2-product",   "kappa-positivity",    "rez2-boundary-system",
        "dn2-tilde-identity", "rez1-vs-rez63a",      "repfor-n-rac",
        "repfor-n-rac2",      "eq5-shift-up",        "eq7-shift-down",
        "eq9-determinant",    "eq10-sode-tilde",     "mod-ttrr",
        "hypreprac2-5phi4",   "remark3-racah",
    };
    std::set<std::string> seen;
    for (const ResidualRow& r : rep.rows) {
        CHECK(seen.insert(r.identity_tag).second); // exactly once
        CHECK(r.tolerance == cfg.tol);
    }
    CHECK(seen == expected);
    CHECK(rep.all_pass);

    // identical (config, seed) gives byte-identical reports
    const ResidualReport rep2 = run_residual_suite(cfg);
    CHECK(render_json(rep) == render_json(rep2));
    CHECK(render_csv(rep) == render_csv(rep2));

    // zero masses: the modified identities degenerate to classical and pass
    RunConfig zero = cfg;
    zero.mass_neg = zero.mass_pos = 0.0;
    CHECK(run_residual_suite(zero).all_pass);
}

TEST_CASE("eval table") {
    RunConfig cfg;
    cfg.n_max = 6;

    SUBCASE("degree zero is 1 for both families") {
        const auto rows = run_eval_table(cfg, {0}, {-0.3, 0.8});
        for (const EvalRow& r : rows) {
            CHECK(r.p_ttrr == 1.0);
            CHECK(r.pt_kernelrep == 1.0);
            CHECK(r.max_route_dev < cfg.tol);
        }
    }

    SUBCASE("zero masses collapse the generalized columns onto the classical") {
        RunConfig zero = cfg;
        zero.mass_neg = zero.mass_pos = 0.0;
        const auto rows = run_eval_table(zero, {1, 3, 5}, {-0.7, 0.2, 0.9});
        for (const EvalRow& r : rows) {
            CHECK(rel2(r.pt_kernelrep, r.p_ttrr) < 1e-12);
            CHECK(rel2(r.pt_diffrep, r.p_ttrr) < 1e-10);
            CHECK(r.max_route_dev < zero.tol);
        }
    }

    SUBCASE("stock masses: all routes agree within tolerance") {
        const auto rows = run_eval_table(cfg, {0, 1, 2, 3, 4, 5, 6}, {-0.9, -0.5, 0.0, 0.5, 0.9});
        for (const EvalRow& r : rows)
            CHECK(r.max_route_dev < cfg.tol);
    }

    SUBCASE("mass points take the kernel-route fallback") {
        const auto rows = run_eval_table(cfg, {2}, {1.0});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].note.find("fallback") != std::string::npos);
        const AWParams params = cfg.make_params();
        const FamilyContext ctx = FamilyContext::build(params, 4);
        const GenFamily fam(ctx, cfg.make_masses());
        CHECK(rel2(rows[0].pt_kernelrep, fam.boundary(2).p_pos) < 1e-12);
    }
}

TEST_CASE("gram rendering at n_max = 0") {
    RunConfig cfg;
    cfg.mass_neg = cfg.mass_pos = 0.0;
    const AWParams params = cfg.make_params();
    const FamilyContext ctx = FamilyContext::build(params, 0);
    const GramReport rep = gram(0, ctx, cfg.make_masses(), 1e-10);
    CHECK(rep.n_max == 0);
    CHECK(rel2(rep.at(0, 0), 1.0) < 1e-9);
    const std::string csv = render_csv(rep, cfg.tol);
    CHECK(csv.find("0,0,") != std::string::npos);

    // with masses the 1x1 entry is the modified norm 1 + A + B
    const GramReport repm = gram(0, ctx, {0.5, 0.5}, 1e-10);
    CHECK(rel2(repm.at(0, 0), 2.0) < 1e-9);
}

TEST_CASE("cond_scale semantics") {
    // plain relative when conditioning is benign
    CHECK(cond_scale(2.0, 2.0, 1.0, 3, 1e-9) == 2.0);
    // conditioning floor dominates for catastrophically cancelled sums:
    // |diff| / cond_scale < tol  <=>  |diff| < 64 (n+1) eps cond
    const double eps = std::numeric_limits<double>::epsilon();
    const double cond = 1e20;
    const double floor = cond_scale(1e-3, 1e-3, cond, 0, 1e-9);
    CHECK(rel2(floor, 64.0 * eps * cond / 1e-9) < 1e-12);
}
