#pragma once

#include "l1lsmi/data/dataset.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace l1lsmi::measures {

struct Correlation {
    double value = 0.0;
    bool degenerate = false;  // one input was constant; value is 0
};

/// Sample Pearson correlation. Constant inputs yield 0 with the degenerate
/// flag set so that ranking places them last.
inline Correlation pearson(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson: need at least two samples");
    const Eigen::ArrayXd dx = x.array() - x.mean();
    const Eigen::ArrayXd dy = y.array() - y.mean();
    const double sxx = dx.square().sum();
    const double syy = dy.square().sum();
    const double scale = std::max(1.0, std::max(x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff()));
    const double floor = 1e-24 * scale * scale * static_cast<double>(x.size());
    if (sxx <= floor || syy <= floor) return {0.0, true};
    const double r = (dx * dy).sum() / std::sqrt(sxx * syy);
    return {std::clamp(r, -1.0, 1.0), false};
}

/// How class labels enter a correlation: as one-hot indicators combined by
/// the maximum |rho| over classes, or as the numeric label codes.
enum class CategoricalCorrelation { OneHotMax, LabelCode };

/// |rho(X_i, Y)| for every feature.
inline Eigen::VectorXd relevance(const data::Dataset& d,
                                 CategoricalCorrelation mode = CategoricalCorrelation::OneHotMax) {
    Eigen::VectorXd score(d.m());
    if (!d.task().is_classification() || mode == CategoricalCorrelation::LabelCode) {
        for (int j = 0; j < d.m(); ++j) score[j] = std::abs(pearson(d.features().row(j).transpose(), d.target()).value);
        return score;
    }
    score.setZero();
    for (int c = 1; c <= d.task().classes; ++c) {
        const Eigen::VectorXd indicator = (d.target().array() == static_cast<double>(c)).cast<double>();
        for (int j = 0; j < d.m(); ++j)
            score[j] = std::max(score[j], std::abs(pearson(d.features().row(j).transpose(), indicator).value));
    }
    return score;
}

/// Indices (0-based) ordered by descending score, ties by lower index.
inline std::vector<int> rank_descending(const Eigen::VectorXd& score) {
    std::vector<int> order(static_cast<std::size_t>(score.size()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return score[a] > score[b]; });
    return order;
}

}  // namespace l1lsmi::measures
