#pragma once

#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/measures/pearson.hpp"
#include "l1lsmi/selection.hpp"

#include <stdexcept>

namespace l1lsmi::baselines {

inline void check_k(const data::Dataset& d, int k) {
    if (k < 1 || k > d.m()) throw std::invalid_argument("k must lie in 1.." + std::to_string(d.m()));
}

/// First k entries of a 0-based ranking as a feature set.
inline data::FeatureIndexSet top_k(const std::vector<int>& ranking, int k) {
    return data::FeatureIndexSet::from_zero_based({ranking.begin(), ranking.begin() + k});
}

/// Top-k features by |rho(X_i, Y)|; ties to the lower index.
inline SelectionResult rank_pearson(const data::Dataset& d, int k,
                                    measures::CategoricalCorrelation mode = measures::CategoricalCorrelation::OneHotMax) {
    check_k(d, k);
    SelectionResult out;
    out.scores = measures::relevance(d, mode);
    out.ranking = measures::rank_descending(out.scores);
    out.selected = top_k(out.ranking, k);
    return out;
}

}  // namespace l1lsmi::baselines
