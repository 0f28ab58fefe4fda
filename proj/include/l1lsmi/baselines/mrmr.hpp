#pragma once

#include "l1lsmi/baselines/pearson_rank.hpp"
#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/measures/discrete_mi.hpp"
#include "l1lsmi/selection.hpp"

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace l1lsmi::baselines {

/// Discrete codes for every feature and for the target (class labels are used
/// as-is; a real target is binned like the features).
struct DiscretizedData {
    std::vector<std::vector<int>> features;
    std::vector<int> target;
};

inline DiscretizedData discretize_dataset(const data::Dataset& d) {
    const int bins = measures::default_bin_count(static_cast<std::size_t>(d.n()));
    DiscretizedData out;
    for (int j = 0; j < d.m(); ++j) out.features.push_back(measures::discretize(d.features().row(j).transpose(), bins));
    out.target = d.task().is_classification() ? d.labels() : measures::discretize(d.target(), bins);
    return out;
}

/// Greedy mRMR: each step adds argmax_i [ I(X_i;Y) - mean_{j in S} I(X_i;X_j) ],
/// ties to the lower index.
inline SelectionResult mrmr(const data::Dataset& d, int k) {
    check_k(d, k);
    const auto disc = discretize_dataset(d);
    const int m = d.m();
    Eigen::VectorXd relevance(m);
    for (int j = 0; j < m; ++j) relevance[j] = measures::discrete_mi(disc.features[static_cast<std::size_t>(j)], disc.target);

    Eigen::VectorXd redundancy_sum = Eigen::VectorXd::Zero(m);
    std::vector<bool> chosen(static_cast<std::size_t>(m), false);
    SelectionResult out;
    out.scores = relevance;
    for (int step = 0; step < k; ++step) {
        int best = -1;
        double best_score = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j) {
            if (chosen[static_cast<std::size_t>(j)]) continue;
            const double score = step == 0 ? relevance[j] : relevance[j] - redundancy_sum[j] / step;
            if (best < 0 || score > best_score) {
                best = j;
                best_score = score;
            }
        }
        chosen[static_cast<std::size_t>(best)] = true;
        out.ranking.push_back(best);
        out.objective_trace.push_back(best_score);
        for (int j = 0; j < m; ++j)
            if (!chosen[static_cast<std::size_t>(j)])
                redundancy_sum[j] += measures::discrete_mi(disc.features[static_cast<std::size_t>(j)],
                                                           disc.features[static_cast<std::size_t>(best)]);
    }
    out.selected = data::FeatureIndexSet::from_zero_based(out.ranking, m);
    return out;
}

}  // namespace l1lsmi::baselines
