#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace l1lsmi::measures {

/// Plug-in mutual information (natural log) of two discrete sequences.
inline double discrete_mi(std::span<const int> x, std::span<const int> y) {
    if (x.size() != y.size()) throw std::invalid_argument("discrete_mi: length mismatch");
    if (x.empty()) throw std::invalid_argument("discrete_mi: empty input");
    std::map<int, double> px;
    std::map<int, double> py;
    std::map<std::pair<int, int>, double> pxy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        px[x[i]] += 1.0;
        py[y[i]] += 1.0;
        pxy[{x[i], y[i]}] += 1.0;
    }
    const auto n = static_cast<double>(x.size());
    double mi = 0.0;
    for (const auto& [cell, count] : pxy) {
        // count/n * log( count * n / (cx * cy) )
        mi += count / n * std::log(count * n / (px[cell.first] * py[cell.second]));
    }
    return std::max(mi, 0.0);
}

/// min(10, ceil(sqrt(n))).
inline int default_bin_count(std::size_t n) {
    return std::min(10, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
}

/// Equal-frequency binning. Sequences with at most `bins` distinct values are
/// coded by their distinct values; otherwise sample i goes to bin
/// floor(rank_i * bins / n) where tied values share the rank of their first
/// occurrence in sorted order, so equal values always share a bin.
inline std::vector<int> discretize(const Eigen::Ref<const Eigen::VectorXd>& v, int bins) {
    const auto n = static_cast<std::size_t>(v.size());
    std::vector<int> out(n);
    if (n == 0) return out;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    std::size_t distinct = 1;
    for (std::size_t i = 1; i < n; ++i) distinct += v[order[i]] != v[order[i - 1]] ? 1 : 0;

    if (distinct <= static_cast<std::size_t>(bins)) {
        int code = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && v[order[i]] != v[order[i - 1]]) ++code;
            out[order[i]] = code;
        }
        return out;
    }
    std::size_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && v[order[i]] != v[order[i - 1]]) rank = i;
        out[order[i]] = static_cast<int>(rank * static_cast<std::size_t>(bins) / n);
    }
    return out;
}

}  // namespace l1lsmi::measures
