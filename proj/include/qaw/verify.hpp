#ifndef QAW_VERIFY_HPP
#define QAW_VERIFY_HPP

#include <functional>

#include "qaw/gen_aw.hpp"

namespace qaw {

/// Gauss-Legendre rule mapped to theta on [0, pi]. Nodes are interior and
/// weights positive with sum pi.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int level = 0;

    static QuadratureRule gauss_legendre_theta(int points, int level = 0);
};

/// integral_{-1}^{1} f(x) rho(x) dx by the x = cos theta substitution,
/// level-doubled until successive values agree to tol relative (against the
/// scale integral of |f| rho). Throws NoConvergence after 12 doublings.
double integrate_weighted(const std::function<double(double)>& f, const AWParams& params, double tol);

/// Modified inner product: integral f g rho + A f(-1) g(-1) + B f(1) g(1).
double inner_mod(const std::function<double(double)>& f, const std::function<double(double)>& g,
                 const AWParams& params, MassConfig masses, double tol);

/// Full Gram matrix of the generalized family under inner_mod.
struct GramReport {
    int n_max = 0;
    std::vector<double> matrix; // (n_max+1)^2, row-major
    double max_offdiag_rel = 0.0;  // |G_ij| / sqrt(G_ii G_jj)
    double max_diag_dev_rel = 0.0; // |G_nn - dt_n^2| / dt_n^2

    double at(int i, int j) const { return matrix[static_cast<size_t>(i) * (n_max + 1) + j]; }
};
GramReport gram(int n_max, const FamilyContext& ctx, MassConfig masses, double tol);

/// Independent ground truth: monic orthogonal polynomials of the modified
/// functional from its power moments, via dense Hankel solves. Coefficients
/// ascending, leading entry 1. Throws IllConditioned when the solve residual
/// exceeds 1e-8.
std::vector<std::vector<double>> moment_oracle(int n_max, const AWParams& params, MassConfig masses,
                                               double tol);

} // namespace qaw

#endif
