#pragma once

#include "l1lsmi/baselines/pearson_rank.hpp"
#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/measures/pearson.hpp"
#include "l1lsmi/selection.hpp"
#include "l1lsmi/sparse/projection.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace l1lsmi::baselines {

struct QpfsProblem {
    Eigen::MatrixXd Q;  // |rho(X_i, X_j)|
    Eigen::VectorXd f;  // |rho(X_i, Y)|
    double alpha = 0.5;
};

/// Q, f and the recommended trade-off alpha = qbar / (qbar + fbar).
inline QpfsProblem make_qpfs_problem(const data::Dataset& d,
                                     measures::CategoricalCorrelation mode = measures::CategoricalCorrelation::OneHotMax) {
    const int m = d.m();
    QpfsProblem p;
    p.Q.resize(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const auto c = measures::pearson(d.features().row(i).transpose(), d.features().row(j).transpose());
            double v = std::abs(c.value);
            if (i == j) v = c.degenerate ? 0.0 : 1.0;
            p.Q(i, j) = p.Q(j, i) = v;
        }
    }
    p.f = measures::relevance(d, mode);
    const double qbar = p.Q.mean();
    const double fbar = p.f.mean();
    p.alpha = qbar + fbar > 0.0 ? qbar / (qbar + fbar) : 0.5;
    return p;
}

inline double qpfs_objective(const QpfsProblem& p, const Eigen::VectorXd& w) {
    return 0.5 * (1.0 - p.alpha) * w.dot(p.Q * w) - p.alpha * p.f.dot(w);
}

struct QpfsSolution {
    Eigen::VectorXd w;
    std::vector<double> objective_trace;
    int iterations = 0;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Projected gradient descent on the unit simplex from the uniform point with
/// step 1/L, L = (1 - alpha) * lambda_max(Q), until the objective decreases by
/// less than `tol`.
inline QpfsSolution solve_qpfs(const QpfsProblem& p, double tol = 1e-8, int max_iters = 100000) {
    const Eigen::Index m = p.f.size();
    QpfsSolution sol;
    sol.w = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    const double lmax = m > 0 ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(p.Q, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff() : 0.0;
    const double lipschitz = (1.0 - p.alpha) * std::max(lmax, 0.0);
    const double step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;
    double obj = qpfs_objective(p, sol.w);
    sol.objective_trace.push_back(obj);
    for (int it = 1; it <= max_iters; ++it) {
        const Eigen::VectorXd grad = (1.0 - p.alpha) * (p.Q * sol.w) - p.alpha * p.f;
        const Eigen::VectorXd next = sparse::project_simplex(sol.w - step * grad, 1.0);
        const double next_obj = qpfs_objective(p, next);
        sol.iterations = it;
        if (next_obj > obj) break;  // rounding-level increase at the optimum
        sol.w = next;
        sol.objective_trace.push_back(next_obj);
        const double decrease = obj - next_obj;
        obj = next_obj;
        if (decrease < tol) return sol;
    }
    if (sol.iterations >= max_iters) {
        std::ostringstream msg;
        msg << "QPFS did not converge in " << max_iters << " iterations (last objective " << obj << ")";
        throw ConvergenceError(msg.str());
    }
    return sol;
}

/// QPFS ranking: weight descending, then relevance f descending, then lower
/// index. `alpha_override` replaces the recommended trade-off.
inline SelectionResult qpfs(const data::Dataset& d, int k, std::optional<double> alpha_override = std::nullopt,
                            measures::CategoricalCorrelation mode = measures::CategoricalCorrelation::OneHotMax) {
    check_k(d, k);
    QpfsProblem p = make_qpfs_problem(d, mode);
    if (alpha_override) {
        if (*alpha_override < 0.0 || *alpha_override > 1.0) throw std::invalid_argument("QPFS alpha must lie in [0, 1]");
        p.alpha = *alpha_override;
    }
    const QpfsSolution sol = solve_qpfs(p);
    SelectionResult out;
    out.scores = sol.w;
    out.objective_trace = sol.objective_trace;
    out.ranking.resize(static_cast<std::size_t>(d.m()));
    for (int j = 0; j < d.m(); ++j) out.ranking[static_cast<std::size_t>(j)] = j;
    std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](int a, int b) {
        if (sol.w[a] != sol.w[b]) return sol.w[a] > sol.w[b];
        return p.f[a] > p.f[b];
    });
    out.selected = top_k(out.ranking, k);
    out.diagnostics["alpha"] = std::to_string(p.alpha);
    out.diagnostics["iterations"] = std::to_string(sol.iterations);
    return out;
}

}  // namespace l1lsmi::baselines
