#pragma once

#include "l1lsmi/bench/methods.hpp"
#include "l1lsmi/data/toy.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace l1lsmi::bench {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A toy generator, or a CSV file with its task, k and known true features.
struct DatasetSpec {
    std::string name;
    std::optional<data::ToyName> toy;
    std::string path;
    data::TaskKind task = data::TaskKind::Regression;
    std::optional<int> k;
    data::FeatureIndexSet truth;

    static DatasetSpec of(data::ToyName t) {
        DatasetSpec d;
        d.name = std::string(data::to_string(t));
        d.toy = t;
        return d;
    }
};

struct BenchConfig {
    std::vector<std::string> methods;
    std::vector<DatasetSpec> datasets;
    int trials = 10;
    int n = 400;
    std::optional<int> k;  // unset: true-feature count
    std::string output = "bench-out";
    std::vector<std::string> formats{"csv", "json", "markdown"};
    int parallelism = 1;
    std::uint64_t master_seed = 0;
    bool record_timings = false;
    MethodSettings settings;

    void validate() const {
        if (methods.empty()) throw ConfigError("config: methods must be nonempty");
        for (const auto& m : methods)
            if (!is_method(m)) throw ConfigError("config: unknown method '" + m + "'");
        if (datasets.empty()) throw ConfigError("config: datasets must be nonempty");
        if (trials < 1) throw ConfigError("config: trials must be >= 1");
        if (n < 2) throw ConfigError("config: n must be >= 2");
        if (parallelism < 1) throw ConfigError("config: parallelism must be >= 1");
        if (k && *k < 1) throw ConfigError("config: k must be >= 1");
        for (const auto& f : formats)
            if (f != "csv" && f != "json" && f != "markdown") throw ConfigError("config: unknown format '" + f + "'");
        for (const auto& d : datasets) {
            if (!d.toy && (!d.k && !k)) throw ConfigError("config: CSV dataset '" + d.name + "' needs an explicit k");
            if (!d.toy && d.truth.empty()) throw ConfigError("config: CSV dataset '" + d.name + "' needs truth");
        }
    }
};

namespace detail {
using nlohmann::json;

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ConfigError("config: unknown key '" + key + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: bad value for '") + key + "'");
    }
}

inline data::TaskKind parse_task(const std::string& s) {
    if (s == "reg" || s == "regression") return data::TaskKind::Regression;
    if (s == "class" || s == "classification") return data::TaskKind::Classification;
    throw ConfigError("config: task must be 'reg' or 'class', got '" + s + "'");
}

inline DatasetSpec parse_dataset(const json& j) {
    DatasetSpec d;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        try {
            d.toy = data::parse_toy_name(s);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        d.name = s;
        return d;
    }
    check_keys(j, {"toy", "csv", "name", "task", "k", "truth"}, "dataset");
    if (j.contains("toy") == j.contains("csv")) throw ConfigError("config: dataset needs exactly one of 'toy' or 'csv'");
    if (j.contains("toy")) {
        std::string s;
        read(j, "toy", s);
        try {
            d.toy = data::parse_toy_name(s);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        d.name = s;
    } else {
        read(j, "csv", d.path);
        d.name = d.path;
        std::string task = "reg";
        read(j, "task", task);
        d.task = parse_task(task);
        std::vector<int> truth;
        read(j, "truth", truth);
        try {
            d.truth = data::FeatureIndexSet(truth);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: truth: ") + e.what());
        }
    }
    read(j, "name", d.name);
    if (j.contains("k")) {
        int k = 0;
        read(j, "k", k);
        d.k = k;
    }
    return d;
}
}  // namespace detail

/// Reads the method-setting sections (cv, ascent, search, basis, ...) of a
/// config object; absent keys keep their defaults.
inline MethodSettings parse_settings(const nlohmann::json& j, MethodSettings s = {}) {
    using detail::read;
    if (j.contains("cv")) {
        const auto& c = j.at("cv");
        detail::check_keys(c, {"sigma_scales", "lambdas", "folds"}, "cv");
        read(c, "sigma_scales", s.l1.lsmi.grid.sigma_scales);
        read(c, "lambdas", s.l1.lsmi.grid.lambdas);
        read(c, "folds", s.l1.lsmi.grid.folds);
    }
    read(j, "basis", s.l1.lsmi.basis);
    if (j.contains("ascent")) {
        const auto& a = j.at("ascent");
        detail::check_keys(a, {"max_iters", "step0", "model_select_period", "tol", "restarts", "nonzero_eps"}, "ascent");
        read(a, "max_iters", s.l1.ascent.max_iters);
        read(a, "step0", s.l1.ascent.step0);
        read(a, "model_select_period", s.l1.ascent.model_select_period);
        read(a, "tol", s.l1.ascent.tol);
        read(a, "restarts", s.l1.ascent.restarts);
        read(a, "nonzero_eps", s.l1.ascent.nonzero_eps);
    }
    if (j.contains("search")) {
        const auto& b = j.at("search");
        detail::check_keys(b, {"max_solves", "time_limit_s"}, "search");
        read(b, "max_solves", s.l1.budget.max_solves);
        read(b, "time_limit_s", s.l1.budget.time_limit_s);
    }
    read(j, "relieff_neighbors", s.relieff_neighbors);
    if (j.contains("qpfs_alpha") && !j.at("qpfs_alpha").is_null()) {
        double a = 0.0;
        read(j, "qpfs_alpha", a);
        s.qpfs_alpha = a;
    }
    if (j.contains("categorical_correlation")) {
        std::string c;
        read(j, "categorical_correlation", c);
        if (c == "one-hot-max")
            s.categorical = measures::CategoricalCorrelation::OneHotMax;
        else if (c == "label-code")
            s.categorical = measures::CategoricalCorrelation::LabelCode;
        else
            throw ConfigError("config: categorical_correlation must be 'one-hot-max' or 'label-code'");
    }
    try {
        s.l1.ascent.validate();
        s.l1.lsmi.grid.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (s.l1.lsmi.basis < 1) throw ConfigError("config: basis must be >= 1");
    if (s.l1.budget.max_solves < 1 || !(s.l1.budget.time_limit_s > 0.0))
        throw ConfigError("config: search budget must be positive");
    if (s.relieff_neighbors < 1) throw ConfigError("config: relieff_neighbors must be >= 1");
    return s;
}

inline const std::set<std::string>& settings_keys() {
    static const std::set<std::string> keys{"cv", "basis", "ascent", "search", "relieff_neighbors", "qpfs_alpha",
                                            "categorical_correlation"};
    return keys;
}

inline BenchConfig parse_bench_config(const nlohmann::json& j) {
    using detail::read;
    std::set<std::string> allowed = settings_keys();
    allowed.insert({"methods", "datasets", "trials", "n", "k", "output", "formats", "parallelism", "master_seed",
                    "record_timings"});
    detail::check_keys(j, allowed, "config");
    BenchConfig cfg;
    read(j, "methods", cfg.methods);
    if (j.contains("datasets")) {
        if (!j.at("datasets").is_array()) throw ConfigError("config: datasets must be a list");
        for (const auto& d : j.at("datasets")) cfg.datasets.push_back(detail::parse_dataset(d));
    }
    read(j, "trials", cfg.trials);
    read(j, "n", cfg.n);
    if (j.contains("k") && !j.at("k").is_null()) {
        if (j.at("k").is_string()) {
            if (j.at("k").get<std::string>() != "truth") throw ConfigError("config: k must be an integer or 'truth'");
        } else {
            int k = 0;
            read(j, "k", k);
            cfg.k = k;
        }
    }
    read(j, "output", cfg.output);
    read(j, "formats", cfg.formats);
    read(j, "parallelism", cfg.parallelism);
    read(j, "master_seed", cfg.master_seed);
    read(j, "record_timings", cfg.record_timings);
    cfg.settings = parse_settings(j);
    cfg.validate();
    return cfg;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return nlohmann::json::parse(in, nullptr, true, true);  // comments allowed
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
}

inline BenchConfig load_bench_config(const std::string& path) { return parse_bench_config(read_json_file(path)); }

/// Settings-only view of a config file, for single selections. Bench keys
/// are tolerated so one file can serve both commands.
inline MethodSettings load_settings(const std::string& path) { return parse_settings(read_json_file(path)); }

}  // namespace l1lsmi::bench
