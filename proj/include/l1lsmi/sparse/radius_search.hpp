#pragma once

#include "l1lsmi/data/dataset.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace l1lsmi::sparse {

struct RadiusCandidate {
    double r = 0.0;
    data::FeatureIndexSet support;
    double value = std::numeric_limits<double>::quiet_NaN();  // measure of the unweighted support, filled lazily
};

struct SearchBudget {
    int max_solves = 30;
    double time_limit_s = 300.0;
};

struct RadiusSearchState {
    double r_low = 0.0;
    double r_high = 0.0;
    bool bracketed = false;
    std::vector<RadiusCandidate> tried;
};

struct SearchResult {
    data::FeatureIndexSet selected;
    double r = 0.0;
    bool exact = false;   // a radius produced exactly k features
    int chosen = -1;      // index into state.tried
    RadiusSearchState state;
};

/// Fallback order over tried supports: closest size to k, then the smaller
/// size, then the larger measure value. Stable, so earlier radii win exact
/// ties.
inline std::vector<std::size_t> fallback_order(const std::vector<RadiusCandidate>& tried, int k) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < tried.size(); ++i)
        if (!tried[i].support.empty()) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const long da = static_cast<long>(tried[a].support.size()) - k;
        const long db = static_cast<long>(tried[b].support.size()) - k;
        if (std::labs(da) != std::labs(db)) return std::labs(da) < std::labs(db);
        if (da != db) return da < db;
        return -tried[a].value < -tried[b].value;
    });
    return order;
}

/// Radius search for a k-feature support.
///
/// `solve(r, attempt)` returns the support obtained at radius r (a fresh
/// random start per call). r doubles from 0.1 until some support exceeds k,
/// then the bracket (r_h / 2, r_h) is bisected on support size. Returns as
/// soon as a support of exactly k appears; otherwise, once the budget is
/// spent, the head of `fallback_order` is returned. `score(support)` is only
/// called for the fallback.
template <class Solve, class Score>
SearchResult search_k_features(int k, int m, Solve&& solve, Score&& score, const SearchBudget& budget = {}) {
    if (k < 1 || k > m) throw std::invalid_argument("k must lie in 1..m");
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    SearchResult res;
    auto& st = res.state;
    int attempt = 0;
    auto exhausted = [&] {
        const double elapsed = std::chrono::duration<double>(clock::now() - start).count();
        return attempt >= budget.max_solves || elapsed >= budget.time_limit_s;
    };
    auto run = [&](double r) -> const RadiusCandidate& {
        RadiusCandidate c;
        c.r = r;
        c.support = solve(r, attempt);
        ++attempt;
        st.tried.push_back(std::move(c));
        return st.tried.back();
    };
    auto finish_exact = [&](const RadiusCandidate& c) {
        res.selected = c.support;
        res.r = c.r;
        res.exact = true;
        res.chosen = static_cast<int>(st.tried.size()) - 1;
        return res;
    };

    double r = 0.1;
    bool above = false;
    while (!exhausted()) {
        r *= 2.0;
        const auto& c = run(r);
        const auto size = static_cast<int>(c.support.size());
        if (size == k) return finish_exact(c);
        if (size > k) {
            above = true;
            break;
        }
    }
    if (above) {
        st.r_high = r;
        st.r_low = r / 2.0;
        st.bracketed = true;
        while (!exhausted()) {
            const double mid = 0.5 * (st.r_high + st.r_low);
            const auto& c = run(mid);
            const auto size = static_cast<int>(c.support.size());
            if (size == k) return finish_exact(c);
            if (size < k)
                st.r_low = mid;
            else
                st.r_high = mid;
        }
    }

    for (auto& c : st.tried)
        if (!c.support.empty()) c.value = score(c.support);
    const auto order = fallback_order(st.tried, k);
    if (order.empty()) throw std::runtime_error("radius search never produced a nonempty support");
    res.chosen = static_cast<int>(order.front());
    res.selected = st.tried[order.front()].support;
    res.r = st.tried[order.front()].r;
    return res;
}

}  // namespace l1lsmi::sparse
