#pragma once

#include "l1lsmi/data/dataset.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace l1lsmi::sparse {

/// Euclidean projection onto the simplex {u >= 0, 1^T u = r} by sorting and
/// thresholding, O(m log m).
inline Eigen::VectorXd project_simplex(const Eigen::VectorXd& v, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("simplex radius must be positive");
    const Eigen::Index m = v.size();
    if (m == 0) return v;
    std::vector<double> sorted(v.data(), v.data() + m);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumsum = 0.0;
    double theta = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        cumsum += sorted[static_cast<std::size_t>(j)];
        const double t = (cumsum - r) / static_cast<double>(j + 1);
        if (sorted[static_cast<std::size_t>(j)] - t > 0.0) theta = t;
    }
    return (v.array() - theta).cwiseMax(0.0).matrix();
}

/// Projection onto the positive orthant of the l1-ball {u >= 0, 1^T u <= r}:
/// clip at zero, then project onto the simplex if the radius is exceeded.
inline Eigen::VectorXd project_l1_positive(const Eigen::VectorXd& v, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("l1 radius must be positive");
    Eigen::VectorXd u = v.cwiseMax(0.0);
    if (u.sum() <= r) return u;
    return project_simplex(u, r);
}

struct FeatureWeights {
    Eigen::VectorXd w;
    double r = 1.0;

    [[nodiscard]] bool feasible(double tol = 1e-9) const {
        return (w.array() >= 0.0).all() && w.sum() <= r + tol;
    }
};

/// Features whose weight exceeds eps * max(w). An all-zero vector has empty
/// support.
inline data::FeatureIndexSet extract_support(const Eigen::VectorXd& w, double eps) {
    std::vector<int> idx;
    const double top = w.size() > 0 ? w.maxCoeff() : 0.0;
    if (!(top > 0.0)) return {};
    for (Eigen::Index j = 0; j < w.size(); ++j)
        if (w[j] > eps * top) idx.push_back(static_cast<int>(j) + 1);
    return data::FeatureIndexSet(std::move(idx));
}

}  // namespace l1lsmi::sparse
