// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include "l1lsmi/l1lsmi.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace l1lsmi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 3) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

data::Dataset toy(data::ToyName name, int n, std::uint64_t seed) {
    return data::standardize(data::generate_toy({name, n, seed}).data).data;
}

int workers() { return static_cast<int>(std::max(4u, std::thread::hardware_concurrency())); }

// 1. Scaled toy benchmark.
Outcome toy_benchmark() {
    struct Target {
        const char* method;
        const char* dataset;
        bool at_least;
        double bound;
    };
    const std::vector<Target> targets{
        {"l1lsmi", "and-or", true, 0.90}, {"l1lsmi", "quad", true, 0.95}, {"l1lsmi", "xor", true, 0.95},
        {"pc", "xor", false, 0.50},       {"pc", "and-or", false, 0.35},  {"mrmr", "quad", true, 0.90},
        {"mrmr", "xor", false, 0.50},     {"blsmi", "xor", true, 0.90},   {"flsmi", "quad", true, 0.95},
    };
    Outcome out{true, ""};
    std::vector<std::string> methods;
    for (const auto& t : targets) {
        if (std::find(methods.begin(), methods.end(), t.method) != methods.end()) continue;
        methods.push_back(t.method);
        std::vector<bench::DatasetSpec> sets;
        for (const auto& u : targets)
            if (std::string(u.method) == t.method) sets.push_back(bench::DatasetSpec::of(data::parse_toy_name(u.dataset)));
        bench::BenchConfig cfg;
        cfg.methods = {t.method};
        cfg.datasets = sets;
        cfg.trials = 10;
        cfg.n = 400;
        cfg.master_seed = 2024;
        cfg.parallelism = workers();
        const auto res = bench::run_benchmark(cfg);
        for (const auto& a : res.aggregates) {
            for (const auto& u : targets) {
                if (a.method != u.method || a.dataset != u.dataset) continue;
                const bool ok = a.failures == 0 && (u.at_least ? a.mean >= u.bound : a.mean <= u.bound);
                out.pass = out.pass && ok;
                out.detail += std::string(out.detail.empty() ? "" : ", ") + u.method + "/" + u.dataset + " " +
                              fmt(a.mean, 2) + (u.at_least ? ">=" : "<=") + fmt(u.bound, 2) + (ok ? "" : " (miss)");
                if (a.failures) out.detail += " [" + std::to_string(a.failures) + " failed]";
            }
        }
    }
    return out;
}

// 2. And-or subset ordering.
Outcome andor_table() {
    int top = 0;
    int low_seeds = 0;
    bool value_ok = true;
    std::string values;
    std::string ranks;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto rows = bench::enumerate_andor_lsmi(400, 9000 + s);
        const bool strict = rows[0].subset == data::FeatureIndexSet({1, 2, 3, 4}) && rows[0].value > rows[1].value;
        top += strict;
        double v = 0.0;
        std::size_t first_redundant = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& sub = rows[i].subset;
            if (sub == data::FeatureIndexSet({1, 2, 3, 4})) v = rows[i].value;
            if (sub.contains(8) && sub.contains(9) && sub.contains(10)) first_redundant = std::min(first_redundant, i);
        }
        // Bottom half of 35 rows: rank 18 or lower.
        low_seeds += first_redundant >= rows.size() / 2;
        value_ok = value_ok && v >= 0.35 && v <= 0.65;
        values += (values.empty() ? "" : " ") + fmt(v);
        ranks += (ranks.empty() ? "" : " ") + std::to_string(first_redundant + 1);
    }
    return {top >= 9 && value_ok && low_seeds == 10,
            "{1,2,3,4} strictly top in " + std::to_string(top) + "/10; values " + values +
                "; {8,9,10} subsets all in bottom half in " + std::to_string(low_seeds) +
                "/10 (best rank per seed: " + ranks + ")"};
}

// 3. Analytic gradient against central differences.
Outcome gradients() {
    CounterRng rng(31);
    const double lambdas[] = {1e-3, 1e-2, 1e-1, 1.0};
    double worst = 0.0;
    int bad = 0;
    for (int t = 0; t < 20; ++t) {
        const auto d = toy(t < 10 ? data::ToyName::AndOr : data::ToyName::Quad, 200, 300 + static_cast<std::uint64_t>(t));
        const sparse::LsmiObjective obj(d, measures::choose_centers(d.n(), 100, rng()));
        const Eigen::VectorXd w = sparse::random_feasible(d.m(), 0.2 + 3.0 * rng.uniform(), rng);
        const double sigma = measures::median_width(w.asDiagonal() * d.features()) * (0.5 + rng.uniform());
        const double lambda = lambdas[rng.below(4)];
        const auto g = obj.evaluate(w, sigma, lambda).gradient;
        const auto fd = oracle::central_difference(
            [&](const Eigen::VectorXd& v) { return obj.evaluate(v, sigma, lambda).value; }, w, 1e-5);
        for (int j = 0; j < d.m(); ++j) {
            if (!oracle::close(g[j], fd[j], 1e-4, 1e-8)) ++bad;
            const double diff = std::abs(g[j] - fd[j]);
            if (diff > 1e-8) worst = std::max(worst, diff / std::abs(fd[j]));
        }
    }
    return {bad == 0, "200 coordinates, " + std::to_string(bad) + " outside tolerance, worst rel err " + sci(worst)};
}

// 4. Projection against the enumeration oracle.
Outcome projection() {
    CounterRng rng(41);
    double worst = 0.0;
    bool invariants = true;
    for (int t = 0; t < 1000; ++t) {
        const int m = 1 + static_cast<int>(rng.below(10));
        Eigen::VectorXd v(m);
        for (int j = 0; j < m; ++j) v[j] = 2.0 * rng.normal();
        const double r = 0.05 + 4.0 * rng.uniform();
        const auto u = sparse::project_l1_positive(v, r);
        worst = std::max(worst, (u - oracle::project_by_enumeration(v, r)).norm());
        invariants = invariants && (u.array() >= 0.0).all() && u.sum() <= r + 1e-12 &&
                     (sparse::project_l1_positive(u, r) - u).norm() <= 1e-12;
    }
    return {worst <= 1e-8 && invariants, "max l2 distance " + sci(worst) + (invariants ? "; feasible and idempotent" : "; invariant broken")};
}

// 5. Independence and factorized H.
Outcome estimator_sanity() {
    int small = 0;
    std::string values;
    for (std::uint64_t s = 0; s < 10; ++s) {
        CounterRng rng(5000 + s);
        Eigen::MatrixXd x(1, 400);
        Eigen::VectorXd y(400);
        for (int i = 0; i < 400; ++i) {
            x(0, i) = rng.normal();
            y[i] = rng.normal();
        }
        const double v = measures::lsmi_cv_select(x, y, data::Task::regression(), 100, measures::CvGrid{}, s).fit.value;
        small += std::abs(v) <= 0.05;
        values += (values.empty() ? "" : " ") + fmt(v);
    }
    CounterRng rng(51);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + static_cast<int>(rng.below(39));
        const int b = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(10, n))));
        Eigen::MatrixXd x(3, n);
        Eigen::VectorXd y(n);
        const bool cls = t % 2 == 1;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < 3; ++j) x(j, i) = rng.normal();
            y[i] = cls ? 1.0 + static_cast<double>(rng.below(2)) : rng.normal();
        }
        const auto task = cls ? data::Task::classification(2) : data::Task::regression();
        const auto basis = measures::build_basis(x, y, task, b, 0.5 + rng.uniform(), rng());
        const auto fit = measures::lsmi_fit_designs(basis.phi_x(), basis.phi_y(), 0.1);
        worst = std::max(worst, (fit.H - oracle::literal_H(basis, x, y)).cwiseAbs().maxCoeff());
    }
    return {small >= 9 && worst <= 1e-10, "|I| <= 0.05 in " + std::to_string(small) + "/10 (" + values +
                                              "); factorized H max diff " + sci(worst)};
}

// 6. HSIC against the expectation expansion.
Outcome hsic_equivalence() {
    CounterRng rng(61);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + static_cast<int>(rng.below(49));
        Eigen::MatrixXd x(2, n);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            x(0, i) = rng.normal();
            x(1, i) = rng.normal();
            y[i] = t % 2 ? 1.0 + static_cast<double>(rng.below(3)) : rng.normal();
        }
        const measures::HsicConfig cfg{0.5 + rng.uniform(), t % 2 ? measures::OutputKernel::delta()
                                                                   : measures::OutputKernel::gaussian(0.5 + rng.uniform())};
        const double v = measures::hsic(x, y, cfg);
        const double ref = oracle::hsic_triple_sum(measures::gaussian_gram(x, cfg.width_x), measures::output_gram(y, cfg.output));
        worst = std::max(worst, std::abs(v - ref));
    }
    double constant = 0.0;
    for (int t = 0; t < 5; ++t) {
        Eigen::MatrixXd x(3, 40);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
        const Eigen::VectorXd y = Eigen::VectorXd::Constant(40, rng.normal());
        constant = std::max(constant, std::abs(measures::hsic(x, y, {1.0, measures::OutputKernel::gaussian(1.0)})));
    }
    return {worst <= 1e-10 && constant <= 1e-12, "max diff " + sci(worst) + "; constant target " + sci(constant)};
}

// 7. QPFS with alpha = 1 ranks like Pearson.
Outcome qpfs_degeneracy() {
    CounterRng rng(71);
    int same = 0;
    for (int t = 0; t < 20; ++t) {
        const int m = 3 + static_cast<int>(rng.below(10));
        const int n = 30 + static_cast<int>(rng.below(70));
        Eigen::MatrixXd x(m, n);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
        Eigen::VectorXd y(n);
        const bool cls = t % 2 == 1;
        for (int i = 0; i < n; ++i) {
            const double s = x(0, i) + 0.5 * x(1, i) + rng.normal();
            y[i] = cls ? (s > 0 ? 2.0 : 1.0) : s;
        }
        const data::Dataset d(x, y, cls ? data::Task::classification(2) : data::Task::regression());
        same += baselines::qpfs(d, m, 1.0).ranking == baselines::rank_pearson(d, m).ranking;
    }
    return {same == 20, std::to_string(same) + "/20 rankings identical"};
}

// 8. Radius-search hand traces and fallback ordering.
Outcome radius_traces() {
    auto floor_support = [](double r) {
        std::vector<int> idx;
        for (int j = 1; j <= static_cast<int>(std::floor(r)); ++j) idx.push_back(j);
        return data::FeatureIndexSet(idx);
    };
    auto zero = [](const data::FeatureIndexSet&) { return 0.0; };
    // Decimal radii such as 2.4 are not representable; allow 4 ulps like EXPECT_DOUBLE_EQ.
    auto same = [](double x, double y) {
        return std::abs(x - y) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(x), std::abs(y));
    };
    auto same_list = [&](const std::vector<double>& x, const std::vector<double>& y) {
        return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), same);
    };
    std::vector<double> a;
    const auto ra = sparse::search_k_features(3, 10, [&](double r, int) { a.push_back(r); return floor_support(r); }, zero);
    const std::vector<double> a_expected{0.2, 0.4, 0.8, 1.6, 3.2};
    const bool first = ra.exact && same(ra.r, 3.2) && same_list(a, a_expected);
    std::vector<double> b;
    const auto rb = sparse::search_k_features(2, 10, [&](double r, int) { b.push_back(r); return floor_support(r); }, zero);
    const std::vector<double> b_expected{0.2, 0.4, 0.8, 1.6, 3.2, 2.4};
    const bool second = rb.exact && same(rb.r, 2.4) && same_list(b, b_expected) && same(rb.state.r_low, 1.6) &&
                        same(rb.state.r_high, 3.2);
    const std::vector<sparse::RadiusCandidate> tried{{0.2, data::FeatureIndexSet({1, 2, 3, 4}), 0.9},
                                                     {0.4, data::FeatureIndexSet({1, 2}), 0.2},
                                                     {0.8, data::FeatureIndexSet({5, 6}), 0.4}};
    const auto order = sparse::fallback_order(tried, 3);
    const bool fallback = !order.empty() && order[0] == 2 && order[1] == 1 && order[2] == 0;
    return {first && second && fallback, std::string("k=3 trace ") + (first ? "ok" : "wrong") + ", k=2 trace " +
                                             (second ? "ok" : "wrong") + ", fallback " + (fallback ? "ok" : "wrong")};
}

// 9. Bench determinism across parallelism degrees.
Outcome determinism() {
    bench::BenchConfig cfg;
    cfg.methods = {"l1lsmi", "l1hsic", "flsmi", "bhsic", "pc", "mrmr", "qpfs", "lasso", "relieff"};
    cfg.datasets = {bench::DatasetSpec::of(data::ToyName::AndOr), bench::DatasetSpec::of(data::ToyName::Xor)};
    cfg.trials = 2;
    cfg.n = 100;
    cfg.master_seed = 77;
    const auto dir = std::filesystem::temp_directory_path() / "l1lsmi_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<std::string> contents;
    for (const int p : {1, 4, 3}) {
        cfg.parallelism = p;
        const auto path = (dir / ("reports_p" + std::to_string(p) + ".csv")).string();
        bench::emit_report(bench::run_benchmark(cfg).reports, bench::ReportFormat::Csv, path);
        std::ifstream in(path, std::ios::binary);
        contents.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    const bool same = contents[0] == contents[1] && contents[0] == contents[2];
    return {same, "parallelism 1/4/3: " + std::string(same ? "identical" : "different") + " CSV (" +
                      std::to_string(contents[0].size()) + " bytes)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 toy benchmark", toy_benchmark},       {"2 and-or subset table", andor_table},
        {"3 gradient vs finite differences", gradients}, {"4 projection oracle", projection},
        {"5 estimator sanity", estimator_sanity}, {"6 HSIC expansion", hsic_equivalence},
        {"7 QPFS alpha=1 ranking", qpfs_degeneracy}, {"8 radius search traces", radius_traces},
        {"9 bench determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << " [" << fmt(secs, 1)
                  << " s]" << std::endl;
        failed += !o.pass;
    }
    std::cout << (failed ? std::to_string(failed) + " criterion(s) failed" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
