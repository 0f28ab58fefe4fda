#pragma once

#include "l1lsmi/bench/config.hpp"
#include "l1lsmi/bench/f_measure.hpp"
#include "l1lsmi/bench/methods.hpp"
#include "l1lsmi/data/csv.hpp"
#include "l1lsmi/data/toy.hpp"
#include "l1lsmi/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace l1lsmi::bench {

struct TrialReport {
    std::string method;
    std::string dataset;
    int trial = 0;
    std::uint64_t seed = 0;  // selector seed
    int k = 0;
    data::FeatureIndexSet selected;
    double f_measure = 0.0;
    double wall_time_s = 0.0;
    std::string error;  // nonempty when the trial failed
    std::map<std::string, std::string> diagnostics;

    [[nodiscard]] bool ok() const { return error.empty(); }
    bool operator==(const TrialReport&) const = default;
};

struct Aggregate {
    std::string method;
    std::string dataset;
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation; 0 for a single trial
    int trials = 0;    // successful trials
    int failures = 0;
};

struct BenchResult {
    std::vector<TrialReport> reports;  // ordered by (method, dataset, trial) as listed in the config
    std::vector<Aggregate> aggregates;
};

/// Seed of the data drawn for (dataset, trial); shared by every method.
inline std::uint64_t data_seed(std::uint64_t master, const std::string& dataset, int trial) {
    return CounterRng(master)
        .split(hash_name("data"))
        .split(hash_name(dataset))
        .split(static_cast<std::uint64_t>(trial))
        .key();
}

/// Seed handed to the selector for (method, dataset, trial).
inline std::uint64_t selector_seed(std::uint64_t master, const std::string& method, const std::string& dataset,
                                   int trial) {
    return CounterRng(master)
        .split(hash_name(method))
        .split(hash_name(dataset))
        .split(static_cast<std::uint64_t>(trial))
        .key();
}

inline std::vector<Aggregate> aggregate(const std::vector<TrialReport>& reports) {
    std::vector<Aggregate> out;
    std::map<std::pair<std::string, std::string>, std::size_t> slot;
    std::vector<std::vector<double>> values;
    for (const auto& r : reports) {
        const auto key = std::make_pair(r.method, r.dataset);
        auto it = slot.find(key);
        if (it == slot.end()) {
            it = slot.emplace(key, out.size()).first;
            out.push_back({r.method, r.dataset});
            values.emplace_back();
        }
        if (r.ok())
            values[it->second].push_back(r.f_measure);
        else
            ++out[it->second].failures;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& v = values[i];
        out[i].trials = static_cast<int>(v.size());
        if (v.empty()) {
            out[i].mean = std::nan("");
            out[i].std = std::nan("");
            continue;
        }
        double sum = 0.0;
        for (const double x : v) sum += x;
        out[i].mean = sum / static_cast<double>(v.size());
        double ss = 0.0;
        for (const double x : v) ss += (x - out[i].mean) * (x - out[i].mean);
        out[i].std = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    }
    return out;
}

/// Every (method, dataset, trial) cell as an independent job on
/// `cfg.parallelism` worker threads. Results land in preassigned slots, so
/// the output does not depend on scheduling.
inline BenchResult run_benchmark(const BenchConfig& cfg) {
    cfg.validate();
    std::vector<std::optional<data::Dataset>> loaded(cfg.datasets.size());
    for (std::size_t i = 0; i < cfg.datasets.size(); ++i) {
        const auto& spec = cfg.datasets[i];
        if (spec.toy) continue;
        const auto task = spec.task == data::TaskKind::Classification ? data::Task::classification(0)
                                                                       : data::Task::regression();
        loaded[i] = data::standardize(data::load_csv(spec.path, task)).data;
    }

    struct Job {
        std::size_t method;
        std::size_t dataset;
        int trial;
    };
    std::vector<Job> jobs;
    for (std::size_t m = 0; m < cfg.methods.size(); ++m)
        for (std::size_t d = 0; d < cfg.datasets.size(); ++d)
            for (int t = 0; t < cfg.trials; ++t) jobs.push_back({m, d, t});

    BenchResult result;
    result.reports.resize(jobs.size());
    auto run_job = [&](const Job& job) {
        const auto& spec = cfg.datasets[job.dataset];
        TrialReport& rep = result.reports[&job - jobs.data()];
        rep.method = cfg.methods[job.method];
        rep.dataset = spec.name;
        rep.trial = job.trial;
        rep.seed = selector_seed(cfg.master_seed, rep.method, rep.dataset, job.trial);
        const auto start = std::chrono::steady_clock::now();
        try {
            data::Dataset d;
            data::FeatureIndexSet truth;
            if (spec.toy) {
                auto toy = data::generate_toy({*spec.toy, cfg.n, data_seed(cfg.master_seed, spec.name, job.trial)});
                d = data::standardize(toy.data).data;
                truth = toy.true_features;
            } else {
                d = *loaded[job.dataset];
                truth = spec.truth;
            }
            rep.k = spec.k ? *spec.k : cfg.k ? *cfg.k : static_cast<int>(truth.size());
            rep.k = std::min(rep.k, d.m());
            const SelectionResult sel = run_method(rep.method, d, rep.k, cfg.settings, rep.seed);
            rep.selected = sel.selected;
            rep.f_measure = f_measure(sel.selected, truth);
            rep.diagnostics = sel.diagnostics;
            if (sel.flagged) rep.diagnostics["flagged"] = "1";
        } catch (const std::exception& e) {
            rep.error = e.what();
            if (rep.error.empty()) rep.error = "unknown error";
        }
        if (cfg.record_timings)
            rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(jobs[i]);
    };
    const int workers = std::min<int>(cfg.parallelism, static_cast<int>(jobs.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    result.aggregates = aggregate(result.reports);
    return result;
}

}  // namespace l1lsmi::bench
