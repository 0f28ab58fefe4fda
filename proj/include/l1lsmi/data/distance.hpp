#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace l1lsmi::data {

/// Squared Euclidean distances between the columns of `a` (d x p) and the
/// columns of `b` (d x q), as a p x q matrix.
inline Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd d(a.cols(), b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j)
        for (Eigen::Index i = 0; i < a.cols(); ++i) d(i, j) = (a.col(i) - b.col(j)).squaredNorm();
    return d;
}

/// Median of the n(n-1)/2 pairwise Euclidean distances between the columns
/// of `points` (d x n). Returns 0 when all points coincide.
inline double median_pairwise_distance(const Eigen::MatrixXd& points) {
    const Eigen::Index n = points.cols();
    if (n < 2) throw std::invalid_argument("median pairwise distance needs at least two points");
    std::vector<double> dist;
    dist.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) dist.push_back((points.col(i) - points.col(j)).squaredNorm());

    // Work on squared distances; sqrt is monotone so order statistics agree.
    const std::size_t count = dist.size();
    const std::size_t mid = count / 2;
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid), dist.end());
    const double upper = std::sqrt(dist[mid]);
    if (count % 2 == 1) return upper;
    const double lower = std::sqrt(*std::max_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid)));
    return 0.5 * (lower + upper);
}

/// Columns of diag(w) * x.
inline Eigen::MatrixXd weight_rows(const Eigen::MatrixXd& x, const Eigen::VectorXd& w) {
    return w.asDiagonal() * x;
}

}  // namespace l1lsmi::data
