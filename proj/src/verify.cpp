#include "qaw/verify.hpp"

#include <cmath>
#include <numbers>

namespace qaw {

namespace {

// Legendre nodes on (-1,1) by Newton iteration, seeded with the Chebyshev
// angle approximation.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
    x.resize(m);
    w.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

} // namespace

QuadratureRule QuadratureRule::gauss_legendre_theta(int points, int level) {
    std::vector<double> t, w;
    gauss_legendre(points, t, w);
    QuadratureRule r;
    r.level = level;
    r.nodes.resize(points);
    r.weights.resize(points);
    const double h = std::numbers::pi / 2.0;
    for (int i = 0; i < points; ++i) {
        r.nodes[i] = (t[i] + 1.0) * h;
        r.weights[i] = w[i] * h;
    }
    return r;
}

namespace {

constexpr int kBasePoints = 32;
constexpr int kMaxDoublings = 12;

// Shared level-doubling driver: fill(theta, x, density) accumulates into the
// caller's sums; value() and scale() report the current integral and its
// magnitude scale for the relative stopping test.
template <typename Body>
double adaptive_theta(const AWParams& params, double tol, Body&& body) {
    const WeightEvaluator w(params, 1e-15);
    double prev = 0.0;
    bool have_prev = false;
    for (int lvl = 0; lvl <= kMaxDoublings; ++lvl) {
        const int m = kBasePoints << lvl;
        const QuadratureRule rule = QuadratureRule::gauss_legendre_theta(m, lvl);
        auto [val, scale] = body(rule, w);
        if (have_prev && std::abs(val - prev) <= tol * std::max(scale, 1e-300))
            return val;
        prev = val;
        have_prev = true;
    }
    throw NoConvergence("integrate_weighted: not converged after 12 doublings");
}

} // namespace

double integrate_weighted(const std::function<double(double)>& f, const AWParams& params,
                          double tol) {
    return adaptive_theta(params, tol, [&](const QuadratureRule& rule, const WeightEvaluator& w) {
        double val = 0.0, scale = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = std::cos(rule.nodes[i]);
            const double dens = w.theta_density(rule.nodes[i]) * rule.weights[i];
            const double fx = f(x);
            val += fx * dens;
            scale += std::abs(fx) * dens;
        }
        return std::pair{val, scale};
    });
}

double inner_mod(const std::function<double(double)>& f, const std::function<double(double)>& g,
                 const AWParams& params, MassConfig masses, double tol) {
    double r = integrate_weighted([&](double x) { return f(x) * g(x); }, params, tol);
    if (masses.mass_neg != 0.0)
        r += masses.mass_neg * f(-1.0) * g(-1.0);
    if (masses.mass_pos != 0.0)
        r += masses.mass_pos * f(1.0) * g(1.0);
    return r;
}

GramReport gram(int n_max, const FamilyContext& ctx, MassConfig masses, double tol) {
    if (n_max > ctx.n_max())
        throw InvalidParameters("gram: n_max exceeds the context cache");
    const GenFamily fam(ctx, masses);
    const int dim = n_max + 1;
    const WeightEvaluator w(ctx.params(), 1e-15);

    // One quadrature pass per level evaluates the whole vector Pt_0..Pt_n;
    // converged when every entry is stable relative to its diagonal scale
    // (the off-diagonals must resolve down to tol * sqrt(G_ii G_jj)).
    const double stop = std::min(tol * 1e-3, 1e-12);
    std::vector<double> mat, prev;
    for (int lvl = 0;; ++lvl) {
        if (lvl > kMaxDoublings)
            throw NoConvergence("gram: not converged after 12 doublings");
        const QuadratureRule rule = QuadratureRule::gauss_legendre_theta(kBasePoints << lvl, lvl);
        std::vector<double> acc(static_cast<size_t>(dim) * dim, 0.0);
        std::vector<cplx> vals(dim);
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = std::cos(rule.nodes[i]);
            const double dens = w.theta_density(rule.nodes[i]) * rule.weights[i];
            fam.eval_all(x, vals);
            for (int r = 0; r < dim; ++r)
                for (int c = r; c < dim; ++c)
                    acc[static_cast<size_t>(r) * dim + c] += real_checked(vals[r] * vals[c]) * dens;
        }
        if (!prev.empty()) {
            double worst = 0.0;
            for (int r = 0; r < dim; ++r)
                for (int c = r; c < dim; ++c) {
                    const double scale =
                        std::sqrt(std::abs(acc[static_cast<size_t>(r) * dim + r] *
                                           acc[static_cast<size_t>(c) * dim + c])) +
                        1e-280;
                    worst = std::max(worst, std::abs(acc[static_cast<size_t>(r) * dim + c] -
                                                     prev[static_cast<size_t>(r) * dim + c]) /
                                                scale);
                }
            if (worst <= stop) {
                mat = std::move(acc);
                break;
            }
        }
        prev = std::move(acc);
    }

    // Mass-point contributions are exact; add them and complete symmetrically.
    std::vector<cplx> vneg(dim), vpos(dim);
    fam.eval_all(cplx(-1.0), vneg);
    fam.eval_all(cplx(1.0), vpos);
    GramReport rep;
    rep.n_max = n_max;
    rep.matrix.assign(static_cast<size_t>(dim) * dim, 0.0);
    for (int r = 0; r < dim; ++r)
        for (int c = r; c < dim; ++c) {
            double v = mat[static_cast<size_t>(r) * dim + c];
            v += masses.mass_neg * real_checked(vneg[r] * vneg[c]);
            v += masses.mass_pos * real_checked(vpos[r] * vpos[c]);
            rep.matrix[static_cast<size_t>(r) * dim + c] = v;
            rep.matrix[static_cast<size_t>(c) * dim + r] = v;
        }

    for (int r = 0; r < dim; ++r) {
        const double diag = rep.at(r, r);
        const double dt2 = fam.boundary(r).norm_sq_mod;
        rep.max_diag_dev_rel = std::max(rep.max_diag_dev_rel, std::abs(diag - dt2) / dt2);
        for (int c = 0; c < r; ++c)
            rep.max_offdiag_rel = std::max(
                rep.max_offdiag_rel, std::abs(rep.at(r, c)) / std::sqrt(diag * rep.at(c, c)));
    }
    return rep;
}

namespace {

// Dense solve with partial pivoting; returns the max-norm residual of the
// solution relative to the right-hand side.
double solve_dense(std::vector<double> A, std::vector<double> b, int n, std::vector<double>& out) {
    const std::vector<double> A0 = A, b0 = b;
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i)
        piv[i] = i;
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[static_cast<size_t>(r) * n + col]) >
                std::abs(A[static_cast<size_t>(best) * n + col]))
                best = r;
        if (std::abs(A[static_cast<size_t>(best) * n + col]) < 1e-300)
            throw IllConditioned("moment_oracle: singular Hankel block");
        if (best != col) {
            for (int c = 0; c < n; ++c)
                std::swap(A[static_cast<size_t>(best) * n + c], A[static_cast<size_t>(col) * n + c]);
            std::swap(b[best], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = A[static_cast<size_t>(r) * n + col] / A[static_cast<size_t>(col) * n + col];
            for (int c = col; c < n; ++c)
                A[static_cast<size_t>(r) * n + c] -= f * A[static_cast<size_t>(col) * n + c];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c)
            s -= A[static_cast<size_t>(r) * n + c] * out[c];
        out[r] = s / A[static_cast<size_t>(r) * n + r];
    }
    double resid = 0.0, scale = 0.0;
    for (int r = 0; r < n; ++r) {
        double s = -b0[r];
        for (int c = 0; c < n; ++c)
            s += A0[static_cast<size_t>(r) * n + c] * out[c];
        resid = std::max(resid, std::abs(s));
        scale = std::max(scale, std::abs(b0[r]));
    }
    return resid / std::max(scale, 1e-300);
}

} // namespace

std::vector<std::vector<double>> moment_oracle(int n_max, const AWParams& params, MassConfig masses,
                                               double tol) {
    if (n_max > 8)
        throw InvalidParameters("moment_oracle: n_max > 8 exceeds the double-precision Hankel range");
    // Modified moments m_k = int x^k rho dx + A (-1)^k + B.
    std::vector<double> mom(2 * n_max + 1);
    for (int k = 0; k <= 2 * n_max; ++k) {
        mom[k] = integrate_weighted([k](double x) { return std::pow(x, k); }, params, tol);
        mom[k] += masses.mass_neg * (k % 2 == 0 ? 1.0 : -1.0) + masses.mass_pos;
    }

    std::vector<std::vector<double>> polys;
    polys.push_back({1.0});
    for (int j = 1; j <= n_max; ++j) {
        std::vector<double> H(static_cast<size_t>(j) * j), rhs(j), coef;
        for (int r = 0; r < j; ++r) {
            for (int c = 0; c < j; ++c)
                H[static_cast<size_t>(r) * j + c] = mom[r + c];
            rhs[r] = -mom[r + j];
        }
        const double resid = solve_dense(std::move(H), std::move(rhs), j, coef);
        if (resid > 1e-8)
            throw IllConditioned("moment_oracle: Hankel solve residual exceeds 1e-8");
        coef.push_back(1.0);
        polys.push_back(std::move(coef));
    }
    return polys;
}

} // namespace qaw
