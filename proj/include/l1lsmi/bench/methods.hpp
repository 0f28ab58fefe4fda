#pragma once

#include "l1lsmi/baselines/lasso.hpp"
#include "l1lsmi/baselines/mrmr.hpp"
#include "l1lsmi/baselines/pearson_rank.hpp"
#include "l1lsmi/baselines/qpfs.hpp"
#include "l1lsmi/baselines/relieff.hpp"
#include "l1lsmi/baselines/sequential.hpp"
#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/selection.hpp"
#include "l1lsmi/sparse/l1_select.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace l1lsmi::bench {

inline constexpr std::array<std::string_view, 11> kMethodNames{
    "l1lsmi", "l1hsic", "pc", "fhsic", "bhsic", "flsmi", "blsmi", "mrmr", "qpfs", "lasso", "relieff"};

inline bool is_method(std::string_view name) {
    for (const auto m : kMethodNames)
        if (m == name) return true;
    return false;
}

/// Knobs for every selector; LSMI model selection is shared by l1lsmi,
/// flsmi and blsmi.
struct MethodSettings {
    sparse::L1Settings l1;
    int relieff_neighbors = 10;
    std::optional<double> qpfs_alpha;
    measures::CategoricalCorrelation categorical = measures::CategoricalCorrelation::OneHotMax;
    baselines::LassoConfig lasso;
};

/// Runs `method` on already-standardized data.
inline SelectionResult run_method(std::string_view method, const data::Dataset& d, int k,
                                  const MethodSettings& s, std::uint64_t seed) {
    using sparse::Measure;
    auto sequential = [&](baselines::Direction dir, Measure measure) {
        auto r = baselines::sequential_search(d, k, dir, measure, s.l1.lsmi, seed);
        return r.selection;
    };
    if (method == "l1lsmi") return sparse::select_l1(d, k, Measure::Lsmi, s.l1, seed);
    if (method == "l1hsic") return sparse::select_l1(d, k, Measure::Hsic, s.l1, seed);
    if (method == "pc") return baselines::rank_pearson(d, k, s.categorical);
    if (method == "fhsic") return sequential(baselines::Direction::Forward, Measure::Hsic);
    if (method == "bhsic") return sequential(baselines::Direction::Backward, Measure::Hsic);
    if (method == "flsmi") return sequential(baselines::Direction::Forward, Measure::Lsmi);
    if (method == "blsmi") return sequential(baselines::Direction::Backward, Measure::Lsmi);
    if (method == "mrmr") return baselines::mrmr(d, k);
    if (method == "qpfs") return baselines::qpfs(d, k, s.qpfs_alpha, s.categorical);
    if (method == "lasso") return baselines::lasso_select(d, k, s.lasso);
    if (method == "relieff") return baselines::relieff(d, k, s.relieff_neighbors);
    throw std::invalid_argument("unknown method '" + std::string(method) + "'");
}

}  // namespace l1lsmi::bench
