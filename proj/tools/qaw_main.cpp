// qaw: evaluate Askey-Wilson and mass-modified Askey-Wilson families, run the
// identity-residual suite, emit Gram matrices, check the q-Racah relation.
//
// Exit codes: 0 pass, 1 tolerance failure, 2 invalid input, 3 non-convergence.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qaw/report.hpp"

namespace {

using namespace qaw;

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw InvalidParameters("cannot write output file " + out_path);
    out << text;
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    RunConfig cfg;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--out", out_path, "write the report to a file instead of stdout");
        // Flag overrides win over the config file; parse order is handled in load().
        cmd->add_option("--param-a", override_a, "Askey-Wilson parameter a");
        cmd->add_option("--param-b", override_b, "Askey-Wilson parameter b");
        cmd->add_option("--param-c", override_c, "Askey-Wilson parameter c");
        cmd->add_option("--param-d", override_d, "Askey-Wilson parameter d");
        cmd->add_option("--param-q", override_q, "base q in (0,1)");
        cmd->add_option("--mass-neg", override_mn, "mass A at x = -1");
        cmd->add_option("--mass-pos", override_mp, "mass B at x = +1");
        cmd->add_option("--nmax", override_nmax, "maximum degree");
        cmd->add_option("--tol", override_tol, "pass/fail tolerance");
        cmd->add_option("--seed", override_seed, "random-grid seed");
        cmd->add_option("--format", override_format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    }

    void load() {
        if (!config_path.empty())
            cfg = RunConfig::from_file(config_path);
        if (override_a) cfg.a = *override_a;
        if (override_b) cfg.b = *override_b;
        if (override_c) cfg.c = *override_c;
        if (override_d) cfg.d = *override_d;
        if (override_q) cfg.q = *override_q;
        if (override_mn) cfg.mass_neg = *override_mn;
        if (override_mp) cfg.mass_pos = *override_mp;
        if (override_nmax) cfg.n_max = *override_nmax;
        if (override_tol) cfg.tol = *override_tol;
        if (override_seed) cfg.seed = *override_seed;
        if (override_format) cfg.format = *override_format;
    }

  private:
    std::optional<double> override_a, override_b, override_c, override_d, override_q;
    std::optional<double> override_mn, override_mp, override_tol;
    std::optional<int> override_nmax;
    std::optional<std::uint64_t> override_seed;
    std::optional<std::string> override_format;
};

int run_eval(CommonOpts& opts, const std::vector<int>& degrees, const std::vector<double>& points) {
    opts.load();
    std::vector<int> degs = degrees;
    if (degs.empty())
        for (int n = 0; n <= opts.cfg.n_max; ++n)
            degs.push_back(n);
    std::vector<double> pts = points;
    if (pts.empty())
        pts = {-0.9, -0.5, 0.0, 0.5, 0.9};
    const auto rows = run_eval_table(opts.cfg, degs, pts);
    write_out(opts.cfg.format == "csv" ? render_csv(rows) : render_json(rows), opts.out_path);
    return 0;
}

int run_gram(CommonOpts& opts) {
    opts.load();
    const AWParams params = opts.cfg.make_params();
    const FamilyContext ctx = FamilyContext::build(params, opts.cfg.n_max);
    const GramReport rep = gram(opts.cfg.n_max, ctx, opts.cfg.make_masses(), opts.cfg.tol);
    write_out(opts.cfg.format == "csv" ? render_csv(rep, opts.cfg.tol)
                                       : render_json(rep, opts.cfg.tol),
              opts.out_path);
    return rep.max_offdiag_rel < opts.cfg.tol ? 0 : 1;
}

int run_residuals(CommonOpts& opts) {
    opts.load();
    const ResidualReport rep = run_residual_suite(opts.cfg);
    write_out(opts.cfg.format == "csv" ? render_csv(rep) : render_json(rep), opts.out_path);
    return rep.all_pass ? 0 : 1;
}

int run_racah(CommonOpts& opts) {
    opts.load();
    double worst = 0.0;
    std::ostringstream csv;
    csv << "a_tilde,b_tilde,alpha,beta,q,n,t,residual\n";
    for (const RacahCase& rc : builtin_racah_cases()) {
        const QBase q(rc.q);
        for (int n = 0; n <= std::min(opts.cfg.n_max, 8); ++n)
            for (double t : {1.2, 1.8, 2.6}) {
                const double r = racah_identity_check(n, t, rc.params, q);
                worst = std::max(worst, r);
                csv << rc.params.a_tilde << ',' << rc.params.b_tilde << ',' << rc.params.alpha
                    << ',' << rc.params.beta << ',' << rc.q << ',' << n << ',' << t << ',' << r
                    << '\n';
            }
    }
    write_out(csv.str(), opts.out_path);
    return worst < opts.cfg.tol ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Askey-Wilson polynomial toolkit"};
    app.require_subcommand(1);

    CommonOpts eval_opts, gram_opts, resid_opts, racah_opts;
    std::vector<int> degrees;
    std::vector<double> points;

    CLI::App* eval_cmd = app.add_subcommand("eval", "tabulate P_n and Pt_n per evaluation route");
    eval_opts.attach(eval_cmd);
    eval_cmd->add_option("--degrees", degrees, "degrees to tabulate")->delimiter(',');
    eval_cmd->add_option("--points", points, "x values to tabulate")->delimiter(',');

    CLI::App* gram_cmd = app.add_subcommand("gram", "modified Gram matrix with pass/fail");
    gram_opts.attach(gram_cmd);

    CLI::App* resid_cmd = app.add_subcommand("residuals", "identity residual suite");
    resid_opts.attach(resid_cmd);

    CLI::App* racah_cmd = app.add_subcommand("racah-check", "q-Racah relation residuals");
    racah_opts.attach(racah_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed())
            return run_eval(eval_opts, degrees, points);
        if (gram_cmd->parsed())
            return run_gram(gram_opts);
        if (resid_cmd->parsed())
            return run_residuals(resid_opts);
        if (racah_cmd->parsed())
            return run_racah(racah_opts);
    } catch (const qaw::InvalidParameters& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const qaw::NonConvergent& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const qaw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
