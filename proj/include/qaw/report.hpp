#ifndef QAW_REPORT_HPP
#define QAW_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "qaw/verify.hpp"

namespace qaw {

/// Run configuration: parameters, masses, grid size, tolerance, seed and
/// output format. Serialized as JSON; flag overrides win over file values.
struct RunConfig {
    double a = 0.4;
    double b = -0.3;
    double c = 0.2;
    double d = -0.1;
    double q = 0.9;
    double mass_neg = 0.5;
    double mass_pos = 0.5;
    int n_max = 10;
    double tol = 1e-8;
    std::uint64_t seed = 20240817;
    std::string format = "json"; // json | csv

    static RunConfig from_file(const std::string& path);
    void save(const std::string& path) const;
    std::string to_json_string() const;

    AWParams make_params() const;
    MassConfig make_masses() const { return {mass_neg, mass_pos}; }
};

/// One row of the identity-residual report: the worst case of one identity
/// over the degree/point grid, with the offending degree and point recorded.
struct ResidualRow {
    std::string identity_tag;
    int n = 0;
    cplx point{};
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct ResidualReport {
    std::vector<ResidualRow> rows;
    bool all_pass = true;
};

/// Run the full identity suite (every derivation of the model: the SODE,
/// differentiation formulas, shift relation, kernels in all forms, boundary
/// system, representation routes, modified recurrence, difference equation,
/// basic-series forms and the q-Racah relation).
ResidualReport run_residual_suite(const RunConfig& cfg);

std::string render_json(const ResidualReport& rep);
std::string render_csv(const ResidualReport& rep);

/// Evaluation table: classical and generalized values per route at chosen
/// degrees/points, with the max pairwise route deviation.
struct EvalRow {
    int n = 0;
    double x = 0.0;
    double p_ttrr = 0.0;
    double p_series = 0.0;
    double pt_kernelrep = 0.0;
    double pt_diffrep = 0.0;
    double pt_phirep = 0.0;
    double pt_shiftrep = 0.0;
    double pt_5phi4 = 0.0;
    double max_route_dev = 0.0;
    std::string note; // fallbacks taken at excluded points
};
std::vector<EvalRow> run_eval_table(const RunConfig& cfg, const std::vector<int>& degrees,
                                    const std::vector<double>& points);
std::string render_json(const std::vector<EvalRow>& rows);
std::string render_csv(const std::vector<EvalRow>& rows);

std::string render_json(const GramReport& rep, double tol);
std::string render_csv(const GramReport& rep, double tol);

/// Built-in q-Racah parameter sets used by the racah rows and subcommand.
struct RacahCase {
    RacahParams params;
    double q;
};
const std::vector<RacahCase>& builtin_racah_cases();

/// Deviation scale combining plain relative agreement with the
/// double-precision conditioning floor of a series evaluation: a residual
/// |v1-v2| / cond_scale(...) below tol means |v1-v2| is within
/// max(tol*max|v|, 64(n+1) eps cond), i.e. the routes agree to tol except
/// where summation roundoff is provably the limiting factor.
double cond_scale(double v1, double v2, double cond, int n, double tol);

} // namespace qaw

#endif
