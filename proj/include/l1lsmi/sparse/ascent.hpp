#pragma once

#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/measures/hsic.hpp"
#include "l1lsmi/measures/lsmi.hpp"
#include "l1lsmi/rng.hpp"
#include "l1lsmi/sparse/objective.hpp"
#include "l1lsmi/sparse/projection.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace l1lsmi::sparse {

enum class Measure { Lsmi, Hsic };

struct AscentConfig {
    int max_iters = 100;
    double step0 = 0.1;         // eta_t = step0 / sqrt(t) on the l-inf-normalised gradient
    int model_select_period = 5;
    double tol = 1e-5;          // stop when a period improves the objective by less than this
    int restarts = 20;
    double nonzero_eps = 1e-6;  // support threshold relative to max weight

    void validate() const {
        if (max_iters < 1 || !(step0 > 0.0) || model_select_period < 1 || !(tol > 0.0) || restarts < 1 ||
            !(nonzero_eps > 0.0))
            throw std::invalid_argument("ascent configuration values must be positive");
    }
};

/// Model-selection settings shared by every LSMI evaluation.
struct LsmiSettings {
    measures::CvGrid grid;
    int basis = measures::kDefaultBasisCount;
};

struct AscentResult {
    FeatureWeights weights;         // best-objective iterate (w0 only if no step was taken)
    double objective = -std::numeric_limits<double>::infinity();
    std::vector<double> trace;      // objective at w0 and after every step, before re-selection
    int iterations = 0;
    bool aborted = false;
    std::string error;
};

/// Random feasible start: exponential coordinates scaled to total r * u with
/// u ~ U(0.5, 1), i.e. uniform in direction on the positive part of the ball.
inline Eigen::VectorXd random_feasible(int m, double r, CounterRng& rng) {
    Eigen::VectorXd w(m);
    for (int j = 0; j < m; ++j) w[j] = rng.exponential();
    const double total = w.sum();
    const double target = r * rng.uniform(0.5, 1.0);
    if (total > 0.0) w *= target / total;
    return w;
}

/// Projected gradient ascent on the positive part of the l1-ball of radius r.
///
/// For LSMI, (sigma, lambda) are re-selected by cross validation on diag(w) X
/// every `model_select_period` iterations and held fixed in between; for
/// HSIC the input width is reset to sigma_med of diag(w) X on the same
/// schedule. The basis centres are fixed for the whole run. `on_iterate`,
/// when set, sees every projected iterate.
inline AscentResult ascend(const data::Dataset& d, const Eigen::VectorXd& w0, double r, const AscentConfig& cfg,
                           Measure measure, const LsmiSettings& lsmi, std::uint64_t seed,
                           const std::function<void(const Eigen::VectorXd&)>& on_iterate = {}) {
    cfg.validate();
    if (w0.size() != d.m()) throw std::invalid_argument("initial weights have the wrong length");
    if (!(r > 0.0)) throw std::invalid_argument("l1 radius must be positive");
    if ((w0.array() < 0.0).any() || w0.sum() > r + 1e-9) throw std::invalid_argument("initial weights are infeasible");

    const CounterRng root(seed);
    const int b = std::min(lsmi.basis, d.n());
    const auto centers = measures::choose_centers(d.n(), b, root.split(0).key());
    const std::uint64_t cv_seed = root.split(1).key();

    std::optional<LsmiObjective> lsmi_obj;
    std::optional<HsicObjective> hsic_obj;
    if (measure == Measure::Lsmi) {
        lsmi_obj.emplace(d, centers);
    } else {
        const auto base = measures::median_config(d.features(), d.target(), d.task());
        hsic_obj.emplace(d, base.output);
    }

    double sigma = 1.0;
    double lambda = 1e-3;
    auto select_model = [&](const Eigen::VectorXd& w) {
        const Eigen::MatrixXd z = w.asDiagonal() * d.features();
        if (measure == Measure::Lsmi) {
            const auto cv = measures::lsmi_cv_select(z, d.target(), d.task(), centers, lsmi.grid, cv_seed);
            sigma = cv.model.sigma;
            lambda = cv.model.lambda;
        } else {
            sigma = measures::median_width(z);
        }
    };
    auto evaluate = [&](const Eigen::VectorXd& w) {
        return measure == Measure::Lsmi ? lsmi_obj->evaluate(w, sigma, lambda) : hsic_obj->evaluate(w, sigma);
    };

    AscentResult res;
    res.weights = {w0, r};
    Eigen::VectorXd w = w0;
    auto record = [&](double value) {
        res.trace.push_back(value);
        if (res.iterations >= 1 && value > res.objective) {
            res.objective = value;
            res.weights.w = w;
        }
    };
    try {
        select_model(w);
        ValueAndGradient vg = evaluate(w);
        record(vg.value);
        double period_start = 0.0;
        for (int t = 1; t <= cfg.max_iters; ++t) {
            const double gmax = vg.gradient.cwiseAbs().maxCoeff();
            if (!(gmax > 0.0)) break;  // stationary
            const double eta = cfg.step0 / std::sqrt(static_cast<double>(t));
            w = project_l1_positive(w + (eta / gmax) * vg.gradient, r);
            if (on_iterate) on_iterate(w);
            res.iterations = t;
            vg = evaluate(w);
            record(vg.value);
            if (t == 1) period_start = vg.value;
            if (t % cfg.model_select_period == 0) {
                // Improvement within the period, measured under one model.
                if (vg.value - period_start < cfg.tol) break;
                select_model(w);
                vg = evaluate(w);
                period_start = vg.value;
            }
        }
        if (res.iterations == 0) res.objective = res.trace.front();
    } catch (const std::exception& e) {
        res.aborted = true;
        res.error = e.what();
    }
    return res;
}

struct RadiusSolution {
    FeatureWeights weights;
    data::FeatureIndexSet support;
    double objective = -std::numeric_limits<double>::infinity();
    int best_restart = -1;
    int failed_restarts = 0;
    std::vector<double> trace;  // trace of the winning restart
};

/// Best of `cfg.restarts` ascents from random feasible starts; ties go to the
/// lowest restart index. Each restart owns the child stream split(restart).
inline RadiusSolution solve_radius(const data::Dataset& d, double r, const AscentConfig& cfg, Measure measure,
                                   const LsmiSettings& lsmi, std::uint64_t seed) {
    cfg.validate();
    const CounterRng root(seed);
    RadiusSolution best;
    best.weights = {Eigen::VectorXd::Zero(d.m()), r};
    for (int rs = 0; rs < cfg.restarts; ++rs) {
        CounterRng rng = root.split(static_cast<std::uint64_t>(rs));
        const Eigen::VectorXd w0 = random_feasible(d.m(), r, rng);
        const AscentResult a = ascend(d, w0, r, cfg, measure, lsmi, rng.split(0).key());
        if (a.aborted && a.trace.empty()) {
            ++best.failed_restarts;
            continue;
        }
        if (a.aborted) ++best.failed_restarts;
        if (best.best_restart < 0 || a.objective > best.objective) {
            best.objective = a.objective;
            best.weights = a.weights;
            best.best_restart = rs;
            best.trace = a.trace;
        }
    }
    if (best.best_restart < 0) throw std::runtime_error("every restart failed at radius " + std::to_string(r));
    best.support = extract_support(best.weights.w, cfg.nonzero_eps);
    return best;
}

}  // namespace l1lsmi::sparse
