#pragma once

#include "l1lsmi/data/dataset.hpp"

#include <stdexcept>

namespace l1lsmi::bench {

struct FScore {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
};

inline FScore f_score(const data::FeatureIndexSet& selected, const data::FeatureIndexSet& truth) {
    if (truth.empty()) throw std::invalid_argument("F-measure needs a nonempty true feature set");
    FScore s;
    if (selected.empty()) return s;
    const auto hit = static_cast<double>(selected.intersection_size(truth));
    if (hit == 0.0) return s;
    s.precision = hit / static_cast<double>(selected.size());
    s.recall = hit / static_cast<double>(truth.size());
    s.f = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

/// f = 2pr / (p + r); 0 when nothing true was selected.
inline double f_measure(const data::FeatureIndexSet& selected, const data::FeatureIndexSet& truth) {
    return f_score(selected, truth).f;
}

}  // namespace l1lsmi::bench
