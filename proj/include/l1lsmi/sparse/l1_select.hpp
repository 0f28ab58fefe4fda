#pragma once

#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/measures/hsic.hpp"
#include "l1lsmi/measures/lsmi.hpp"
#include "l1lsmi/rng.hpp"
#include "l1lsmi/selection.hpp"
#include "l1lsmi/sparse/ascent.hpp"
#include "l1lsmi/sparse/radius_search.hpp"

#include <string>

namespace l1lsmi::sparse {

struct L1Settings {
    AscentConfig ascent;
    SearchBudget budget;
    LsmiSettings lsmi;
};

/// l1-LSMI (or l1-HSIC): radius search over projected-gradient solutions.
/// Solve number `attempt` uses the child stream split(attempt) of `seed`.
inline SelectionResult select_l1(const data::Dataset& d, int k, Measure measure, const L1Settings& s,
                                 std::uint64_t seed) {
    const CounterRng root(seed);
    std::vector<RadiusSolution> solutions;
    auto solve = [&](double r, int attempt) {
        solutions.push_back(solve_radius(d, r, s.ascent, measure, s.lsmi, root.split(static_cast<std::uint64_t>(attempt)).key()));
        return solutions.back().support;
    };
    auto score = [&](const data::FeatureIndexSet& subset) {
        const auto sub = d.restrict(subset);
        if (measure == Measure::Lsmi)
            return measures::lsmi_cv_select(sub.features(), sub.target(), sub.task(), s.lsmi.basis, s.lsmi.grid,
                                            root.split(0xfeed).key())
                .fit.value;
        return measures::hsic(sub, measures::median_config(sub.features(), sub.target(), sub.task()));
    };
    const SearchResult found = search_k_features(k, d.m(), solve, score, s.budget);

    SelectionResult out;
    out.selected = found.selected;
    out.flagged = !found.exact;
    for (const auto& c : found.state.tried) out.radius_trace.push_back(c.r);
    const auto& chosen = solutions[static_cast<std::size_t>(found.chosen)];
    out.scores = chosen.weights.w;
    out.objective_trace = chosen.trace;
    out.diagnostics["r"] = std::to_string(found.r);
    out.diagnostics["solves"] = std::to_string(found.state.tried.size());
    out.diagnostics["objective"] = std::to_string(chosen.objective);
    return out;
}

}  // namespace l1lsmi::sparse
