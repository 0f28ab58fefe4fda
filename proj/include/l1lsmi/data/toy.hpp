#pragma once

#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/rng.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace l1lsmi::data {

enum class ToyName { AndOr, Quad, Xor };

inline constexpr std::array<std::string_view, 3> kToyNames{"and-or", "quad", "xor"};

inline ToyName parse_toy_name(std::string_view s) {
    if (s == "and-or") return ToyName::AndOr;
    if (s == "quad") return ToyName::Quad;
    if (s == "xor") return ToyName::Xor;
    throw std::invalid_argument("unknown toy dataset '" + std::string(s) + "' (expected and-or, quad or xor)");
}

inline std::string_view to_string(ToyName t) { return kToyNames[static_cast<std::size_t>(t)]; }

struct ToySpec {
    ToyName name = ToyName::AndOr;
    int n = 400;
    std::uint64_t seed = 0;
};

struct ToyData {
    Dataset data;
    FeatureIndexSet true_features;
};

/// Draws one toy problem. Each sample i reads from its own child stream of
/// the seed, so sample i is the same regardless of n.
inline ToyData generate_toy(const ToySpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("toy dataset needs n >= 1");
    constexpr int m = 10;
    const CounterRng root(spec.seed);
    Eigen::MatrixXd x(m, spec.n);
    Eigen::VectorXd y(spec.n);

    switch (spec.name) {
    case ToyName::AndOr:
        for (int i = 0; i < spec.n; ++i) {
            CounterRng rng = root.split(static_cast<std::uint64_t>(i));
            for (int j = 0; j < 7; ++j) x(j, i) = rng.bernoulli(0.5) ? 1.0 : 0.0;
            const bool label = (x(0, i) > 0 && x(1, i) > 0) || (x(2, i) > 0 && x(3, i) > 0);
            for (int j = 7; j < 10; ++j) {
                const bool flip = rng.bernoulli(0.2);
                x(j, i) = (label != flip) ? 1.0 : 0.0;
            }
            y[i] = label ? 2.0 : 1.0;
        }
        return {Dataset(std::move(x), std::move(y), Task::classification(2)), FeatureIndexSet({1, 2, 3, 4})};
    case ToyName::Quad:
        for (int i = 0; i < spec.n; ++i) {
            CounterRng rng = root.split(static_cast<std::uint64_t>(i));
            for (int j = 0; j < 8; ++j) x(j, i) = rng.normal();
            const double eps = rng.normal();
            x(8, i) = 0.5 * x(0, i) + rng.uniform(-1.0, 1.0);
            x(9, i) = 0.5 * x(1, i) + rng.uniform(-1.0, 1.0);
            const double x1 = x(0, i);
            const double x2 = x(1, i);
            y[i] = (x1 * x1 + x2) / (0.5 + (x2 + 1.5) * (x2 + 1.5)) + 0.1 * eps;
        }
        return {Dataset(std::move(x), std::move(y), Task::regression()), FeatureIndexSet({1, 2})};
    case ToyName::Xor:
        for (int i = 0; i < spec.n; ++i) {
            CounterRng rng = root.split(static_cast<std::uint64_t>(i));
            for (int j = 0; j < 5; ++j) x(j, i) = rng.bernoulli(0.5) ? 1.0 : 0.0;
            for (int j = 5; j < 10; ++j) x(j, i) = rng.bernoulli(0.75) ? 1.0 : 0.0;
            y[i] = ((x(0, i) > 0) != (x(1, i) > 0)) ? 2.0 : 1.0;
        }
        return {Dataset(std::move(x), std::move(y), Task::classification(2)), FeatureIndexSet({1, 2})};
    }
    throw std::invalid_argument("unknown toy dataset");
}

}  // namespace l1lsmi::data
