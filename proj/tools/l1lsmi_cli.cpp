// Command-line front end: toy data generation, single selections, benchmark
// runs, subset scoring and the and-or subset table.

#include "l1lsmi/l1lsmi.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace l1lsmi;

data::Task parse_task_flag(const std::string& s) {
    if (s == "reg") return data::Task::regression();
    if (s == "class") return data::Task::classification(0);
    throw std::invalid_argument("--task must be 'reg' or 'class'");
}

/// Without --task: integer targets with at most 10 distinct values are
/// treated as class labels.
data::Task guess_task(const std::string& path) {
    const auto d = data::load_csv(path, data::Task::regression());
    std::set<double> distinct;
    for (Eigen::Index i = 0; i < d.target().size(); ++i) {
        const double y = d.target()[i];
        if (y != std::floor(y)) return data::Task::regression();
        distinct.insert(y);
    }
    return distinct.size() <= 10 ? data::Task::classification(0) : data::Task::regression();
}

std::vector<int> parse_index_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad feature index '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty feature list");
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

int cmd_gen(const std::string& toy, int n, std::uint64_t seed, const std::string& out) {
    if (n < 1) throw std::invalid_argument("--n must be >= 1");
    const auto t = data::generate_toy({data::parse_toy_name(toy), n, seed});
    data::write_csv(out, t.data);
    std::cout << "wrote " << out << " (" << t.data.m() << " features, " << t.data.n()
              << " samples, true features " << t.true_features.to_string(',') << ")\n";
    return 0;
}

int cmd_select(const std::string& path, const std::string& task, const std::string& method, int k,
               const std::string& config, std::uint64_t seed) {
    if (!bench::is_method(method)) throw std::invalid_argument("unknown method '" + method + "'");
    const bench::MethodSettings settings = config.empty() ? bench::MethodSettings{} : bench::load_settings(config);
    const auto d = data::standardize(data::load_csv(path, parse_task_flag(task))).data;
    const auto sel = bench::run_method(method, d, k, settings, seed);
    std::cout << "selected: " << sel.selected.to_string(',') << '\n';
    if (sel.flagged) std::cout << "note: found " << sel.selected.size() << " features instead of " << k << '\n';
    for (const auto& [key, value] : sel.diagnostics) std::cout << key << ": " << value << '\n';
    return 0;
}

int cmd_bench(const std::string& config, const std::string& out_dir, int parallelism) {
    auto cfg = bench::load_bench_config(config);
    if (!out_dir.empty()) cfg.output = out_dir;
    if (parallelism > 0) cfg.parallelism = parallelism;
    const auto result = bench::run_benchmark(cfg);
    std::filesystem::create_directories(cfg.output);
    for (const auto& f : cfg.formats) {
        const auto format = bench::parse_report_format(f);
        const auto path = std::filesystem::path(cfg.output) / (std::string("reports.") + bench::report_extension(format));
        bench::emit_report(result.reports, format, path.string());
    }
    bench::emit_report(result.reports, bench::ReportFormat::Markdown, std::cout);
    int failures = 0;
    for (const auto& a : result.aggregates) failures += a.failures;
    if (failures > 0) std::cout << failures << " trial(s) failed; see the error column\n";
    return 0;
}

int cmd_lsmi(const std::string& path, const std::string& task, const std::string& features,
             const std::string& config, std::uint64_t seed) {
    const auto t = task.empty() ? guess_task(path) : parse_task_flag(task);
    const auto d = data::standardize(data::load_csv(path, t)).data;
    const data::FeatureIndexSet subset(parse_index_list(features), d.m());
    const bench::MethodSettings settings = config.empty() ? bench::MethodSettings{} : bench::load_settings(config);
    const auto sub = d.restrict(subset);
    const auto cv = measures::lsmi_cv_select(sub.features(), sub.target(), sub.task(), settings.l1.lsmi.basis,
                                             settings.l1.lsmi.grid, seed);
    std::cout << "task: " << (t.is_classification() ? "class" : "reg") << '\n'
              << "features: " << subset.to_string(',') << '\n'
              << "lsmi: " << fmt(cv.fit.value) << '\n'
              << "sigma: " << fmt(cv.model.sigma) << '\n'
              << "lambda: " << cv.model.lambda << '\n';
    return 0;
}

int cmd_andor_table(int n, std::uint64_t seed, const std::string& config) {
    const bench::MethodSettings settings = config.empty() ? bench::MethodSettings{} : bench::load_settings(config);
    const auto rows = bench::enumerate_andor_lsmi(n, seed, settings.l1.lsmi);
    std::cout << "| rank | subset | LSMI |\n|---|---|---|\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::cout << "| " << i + 1 << " | {" << rows[i].subset.to_string(',') << "} | " << fmt(rows[i].value) << " |\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"l1-LSMI feature selection toolkit"};
    app.require_subcommand(1);

    std::string toy, out;
    int n = 400;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen", "generate a toy dataset as CSV");
    gen->add_option("toy", toy, "and-or, quad or xor")->required();
    gen->add_option("--n", n, "sample count");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--out", out, "output CSV path")->required();

    std::string data_path, task, method, config;
    int k = 0;
    auto* select = app.add_subcommand("select", "select k features from a CSV dataset");
    select->add_option("--data", data_path, "CSV file, target in the last column")->required();
    select->add_option("--task", task, "reg or class")->required();
    select->add_option("--method", method, "selector name")->required();
    select->add_option("--k", k, "number of features")->required();
    select->add_option("--config", config, "JSON settings file");
    select->add_option("--seed", seed, "RNG seed");

    std::string out_dir;
    int parallelism = 0;
    auto* benchc = app.add_subcommand("bench", "run a benchmark described by a config file");
    benchc->add_option("--config", config, "JSON config file")->required();
    benchc->add_option("--out", out_dir, "output directory (overrides the config)");
    benchc->add_option("--parallelism", parallelism, "worker threads (overrides the config)");

    std::string features;
    auto* lsmi = app.add_subcommand("lsmi", "LSMI of a feature subset");
    lsmi->add_option("--data", data_path, "CSV file")->required();
    lsmi->add_option("--features", features, "comma-separated 1-based indices")->required();
    lsmi->add_option("--task", task, "reg or class (guessed from the target when omitted)");
    lsmi->add_option("--config", config, "JSON settings file");
    lsmi->add_option("--seed", seed, "RNG seed");

    auto* table = app.add_subcommand("andor-table", "LSMI of all 4-subsets of the and-or candidates");
    table->add_option("--n", n, "sample count");
    table->add_option("--seed", seed, "RNG seed");
    table->add_option("--config", config, "JSON settings file");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*gen) return cmd_gen(toy, n, seed, out);
        if (*select) return cmd_select(data_path, task, method, k, config, seed);
        if (*benchc) return cmd_bench(config, out_dir, parallelism);
        if (*lsmi) return cmd_lsmi(data_path, task, features, config, seed);
        if (*table) return cmd_andor_table(n, seed, config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
