#pragma once

#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/data/toy.hpp"
#include "l1lsmi/measures/lsmi.hpp"
#include "l1lsmi/rng.hpp"
#include "l1lsmi/sparse/ascent.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace l1lsmi::bench {

struct SubsetScore {
    data::FeatureIndexSet subset;
    double value = 0.0;
};

/// Every 4-feature subset of {1,2,3,4,8,9,10} on one and-or draw, scored by
/// LSMI with (sigma, lambda) chosen by CV per subset, sorted by value
/// descending (ties keep lexicographic order). All subsets share the same
/// basis centres and folds.
inline std::vector<SubsetScore> enumerate_andor_lsmi(int n, std::uint64_t seed, const sparse::LsmiSettings& lsmi = {}) {
    if (n < 50) throw std::invalid_argument("and-or enumeration needs n >= 50");
    const auto toy = data::generate_toy({data::ToyName::AndOr, n, seed});
    const data::Dataset d = data::standardize(toy.data).data;
    const std::uint64_t lsmi_seed = CounterRng(seed).split(hash_name("lsmi")).key();
    const int pool[7] = {1, 2, 3, 4, 8, 9, 10};
    std::vector<SubsetScore> out;
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b)
            for (int c = b + 1; c < 7; ++c)
                for (int e = c + 1; e < 7; ++e) {
                    data::FeatureIndexSet s({pool[a], pool[b], pool[c], pool[e]});
                    const double v = measures::lsmi_score(d, s, lsmi.grid, lsmi.basis, lsmi_seed);
                    out.push_back({std::move(s), v});
                }
    std::stable_sort(out.begin(), out.end(), [](const SubsetScore& x, const SubsetScore& y) { return x.value > y.value; });
    return out;
}

}  // namespace l1lsmi::bench
