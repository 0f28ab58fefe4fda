#pragma once

#include "l1lsmi/baselines/pearson_rank.hpp"
#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/measures/hsic.hpp"
#include "l1lsmi/measures/lsmi.hpp"
#include "l1lsmi/selection.hpp"
#include "l1lsmi/sparse/ascent.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace l1lsmi::baselines {

enum class Direction { Forward, Backward };

struct SequentialStep {
    int step = 0;
    int feature = 0;  // 1-based index added (forward) or removed (backward)
    double value = 0.0;  // measure of the subset after the step
};

using SequentialTrace = std::vector<SequentialStep>;

/// HSIC with median-heuristic widths, or CV-selected LSMI, of the dataset
/// restricted to `subset`. The same seed gives the same centres and folds for
/// every subset.
inline double subset_measure(const data::Dataset& d, const data::FeatureIndexSet& subset, sparse::Measure measure,
                             const sparse::LsmiSettings& lsmi, std::uint64_t seed) {
    const auto sub = d.restrict(subset);
    if (measure == sparse::Measure::Hsic)
        return measures::hsic(sub, measures::median_config(sub.features(), sub.target(), sub.task()));
    return measures::lsmi_cv_select(sub.features(), sub.target(), sub.task(), lsmi.basis, lsmi.grid, seed).fit.value;
}

struct SequentialResult {
    SelectionResult selection;
    SequentialTrace trace;
};

/// Greedy forward addition from the empty set, or backward elimination from
/// the full set (dropping the feature whose removal keeps the measure
/// highest), until k features remain. Ties go to the lower index.
inline SequentialResult sequential_search(const data::Dataset& d, int k, Direction direction, sparse::Measure measure,
                                          const sparse::LsmiSettings& lsmi, std::uint64_t seed) {
    check_k(d, k);
    SequentialResult out;
    std::vector<int> current;
    if (direction == Direction::Backward)
        for (int j = 1; j <= d.m(); ++j) current.push_back(j);

    int step = 0;
    while (direction == Direction::Forward ? static_cast<int>(current.size()) < k : static_cast<int>(current.size()) > k) {
        int best_feature = 0;
        double best_value = -std::numeric_limits<double>::infinity();
        for (int j = 1; j <= d.m(); ++j) {
            const bool present = std::find(current.begin(), current.end(), j) != current.end();
            if (present == (direction == Direction::Forward)) continue;
            std::vector<int> trial = current;
            if (direction == Direction::Forward)
                trial.push_back(j);
            else
                trial.erase(std::find(trial.begin(), trial.end(), j));
            const double v = subset_measure(d, data::FeatureIndexSet(trial), measure, lsmi, seed);
            if (best_feature == 0 || v > best_value) {
                best_value = v;
                best_feature = j;
            }
        }
        if (direction == Direction::Forward)
            current.push_back(best_feature);
        else
            current.erase(std::find(current.begin(), current.end(), best_feature));
        out.trace.push_back({++step, best_feature, best_value});
    }
    out.selection.selected = data::FeatureIndexSet(current, d.m());
    for (const auto& s : out.trace) out.selection.objective_trace.push_back(s.value);
    return out;
}

}  // namespace l1lsmi::baselines
