#pragma once

#include "l1lsmi/baselines/pearson_rank.hpp"
#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/selection.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace l1lsmi::baselines {

struct LassoConfig {
    int max_sweeps = 1000;
    double tol = 1e-10;      // stop when no coordinate moves by more than this
    int bisection_steps = 50;
};

inline double soft_threshold(double rho, double t) {
    if (rho > t) return rho - t;
    if (rho < -t) return rho + t;
    return 0.0;
}

/// argmin_w ||y - X^T w||^2 + lambda ||w||_1 by cyclic coordinate descent.
/// `x` is m x n; no intercept, so callers centre y.
inline Eigen::VectorXd lasso_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                                 const LassoConfig& cfg = {}) {
    if (lambda < 0.0) throw std::invalid_argument("lasso penalty must be nonnegative");
    const Eigen::Index m = x.rows();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    const Eigen::VectorXd norms = x.rowwise().squaredNorm();
    Eigen::VectorXd resid = y;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        double moved = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (norms[j] == 0.0) continue;
            const double rho = x.row(j).dot(resid) + norms[j] * w[j];
            const double next = soft_threshold(rho, lambda / 2.0) / norms[j];
            const double delta = next - w[j];
            if (delta != 0.0) {
                resid.noalias() -= delta * x.row(j).transpose();
                w[j] = next;
                moved = std::max(moved, std::abs(delta));
            }
        }
        if (moved <= cfg.tol) break;
    }
    return w;
}

/// Smallest penalty at which the all-zero vector is optimal.
inline double lasso_lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    return x.rows() > 0 ? 2.0 * (x * y).cwiseAbs().maxCoeff() : 0.0;
}

namespace detail {
inline int support_size(const Eigen::VectorXd& w) { return static_cast<int>((w.array() != 0.0).count()); }
}  // namespace detail

/// Lasso selection: bisect lambda in (0, lambda_max] until exactly k
/// coefficients are nonzero. Binary labels are recoded to -1/+1. When 50
/// bisection steps do not hit k, the support whose size is closest to k is
/// returned (smaller size on ties) with `flagged` set.
inline SelectionResult lasso_select(const data::Dataset& d, int k, const LassoConfig& cfg = {}) {
    check_k(d, k);
    Eigen::VectorXd y = d.target();
    if (d.task().is_classification()) {
        if (d.task().classes > 2) throw std::invalid_argument("lasso supports regression or binary classification only");
        y = (y.array() == 1.0).select(Eigen::VectorXd::Constant(y.size(), -1.0), Eigen::VectorXd::Ones(y.size()));
    }
    y.array() -= y.mean();
    const data::Standardized st = data::standardize(d);
    const Eigen::MatrixXd& x = st.data.features();

    double hi = lasso_lambda_max(x, y);
    double lo = 0.0;
    Eigen::VectorXd best_w = Eigen::VectorXd::Zero(d.m());
    int best_gap = k;
    int best_size = 0;
    double best_lambda = hi;
    bool exact = false;
    SelectionResult out;
    for (int step = 0; step < cfg.bisection_steps && hi > 0.0; ++step) {
        const double lambda = 0.5 * (lo + hi);
        out.radius_trace.push_back(lambda);
        const Eigen::VectorXd w = lasso_fit(x, y, lambda, cfg);
        const int size = detail::support_size(w);
        const int gap = std::abs(size - k);
        if (gap < best_gap || (gap == best_gap && size < best_size)) {
            best_gap = gap;
            best_size = size;
            best_w = w;
            best_lambda = lambda;
        }
        if (size == k) {
            exact = true;
            break;
        }
        if (size > k)
            lo = lambda;
        else
            hi = lambda;
    }
    std::vector<int> idx;
    for (int j = 0; j < d.m(); ++j)
        if (best_w[j] != 0.0) idx.push_back(j + 1);
    out.selected = data::FeatureIndexSet(idx, d.m());
    out.scores = best_w.cwiseAbs();
    out.flagged = !exact;
    out.diagnostics["lambda"] = std::to_string(best_lambda);
    return out;
}

}  // namespace l1lsmi::baselines
