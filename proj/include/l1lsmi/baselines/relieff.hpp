#pragma once

#include "l1lsmi/baselines/pearson_rank.hpp"
#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/measures/pearson.hpp"
#include "l1lsmi/selection.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace l1lsmi::baselines {

/// ReliefF weights with every sample as an anchor.
///
/// diff_j(a, b) = |x_aj - x_bj| / range_j and the instance distance is the
/// sum of diffs. For each anchor the `neighbors` nearest hits lower the
/// weights and the nearest misses of every other class raise them, weighted
/// by P(c) / (1 - P(class of anchor)). Neighbour ties go to the lower index.
inline Eigen::VectorXd relieff_weights(const data::Dataset& d, int neighbors) {
    if (!d.task().is_classification()) throw std::invalid_argument("ReliefF requires a classification task");
    if (neighbors < 1) throw std::invalid_argument("ReliefF needs at least one neighbour");
    const int n = d.n();
    const int m = d.m();
    const int classes = d.task().classes;
    const auto labels = d.labels();

    std::vector<std::vector<int>> members(static_cast<std::size_t>(classes) + 1);
    for (int i = 0; i < n; ++i) members[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].push_back(i);
    for (int c = 1; c <= classes; ++c) {
        const auto size = static_cast<int>(members[static_cast<std::size_t>(c)].size());
        if (size != 0 && size <= neighbors)
            throw std::invalid_argument("ReliefF: class " + std::to_string(c) + " has " + std::to_string(size) +
                                        " samples, need more than " + std::to_string(neighbors));
    }

    const Eigen::MatrixXd& x = d.features();
    Eigen::VectorXd range = x.rowwise().maxCoeff() - x.rowwise().minCoeff();
    Eigen::MatrixXd scaled(m, n);  // x / range, zero for constant features
    for (int j = 0; j < m; ++j) scaled.row(j) = range[j] > 0.0 ? Eigen::RowVectorXd(x.row(j) / range[j]) : Eigen::RowVectorXd::Zero(n);

    Eigen::MatrixXd dist(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) dist(a, b) = dist(b, a) = (scaled.col(a) - scaled.col(b)).cwiseAbs().sum();

    std::vector<double> prior(static_cast<std::size_t>(classes) + 1, 0.0);
    for (int c = 1; c <= classes; ++c) prior[static_cast<std::size_t>(c)] = static_cast<double>(members[static_cast<std::size_t>(c)].size()) / n;

    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    const double norm = static_cast<double>(n) * neighbors;
    std::vector<int> pool;
    for (int a = 0; a < n; ++a) {
        const int ca = labels[static_cast<std::size_t>(a)];
        for (int c = 1; c <= classes; ++c) {
            pool = members[static_cast<std::size_t>(c)];
            if (c == ca) pool.erase(std::find(pool.begin(), pool.end(), a));
            if (pool.empty()) continue;
            const auto take = std::min<std::size_t>(static_cast<std::size_t>(neighbors), pool.size());
            std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(),
                              [&](int p, int q) { return dist(a, p) < dist(a, q) || (dist(a, p) == dist(a, q) && p < q); });
            Eigen::VectorXd diff_sum = Eigen::VectorXd::Zero(m);
            for (std::size_t t = 0; t < take; ++t) diff_sum += (scaled.col(a) - scaled.col(pool[t])).cwiseAbs();
            if (c == ca) {
                w -= diff_sum / norm;
            } else {
                const double factor = prior[static_cast<std::size_t>(c)] / (1.0 - prior[static_cast<std::size_t>(ca)]);
                w += factor * diff_sum / norm;
            }
        }
    }
    return w;
}

inline SelectionResult relieff(const data::Dataset& d, int k, int neighbors = 10) {
    check_k(d, k);
    SelectionResult out;
    out.scores = relieff_weights(d, neighbors);
    out.ranking = measures::rank_descending(out.scores);
    out.selected = top_k(out.ranking, k);
    return out;
}

}  // namespace l1lsmi::baselines
