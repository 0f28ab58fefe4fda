#include "l1lsmi/baselines/lasso.hpp"
#include "l1lsmi/baselines/mrmr.hpp"
#include "l1lsmi/baselines/pearson_rank.hpp"
#include "l1lsmi/baselines/qpfs.hpp"
#include "l1lsmi/baselines/relieff.hpp"
#include "l1lsmi/baselines/sequential.hpp"
#include "l1lsmi/data/toy.hpp"
#include "l1lsmi/measures/discrete_mi.hpp"
#include "l1lsmi/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace l1lsmi;
using namespace l1lsmi::baselines;

namespace {

data::Dataset toy(data::ToyName name, int n, std::uint64_t seed) {
    return data::standardize(data::generate_toy({name, n, seed}).data).data;
}

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
    return m;
}

data::Dataset permute_features(const data::Dataset& d, const std::vector<int>& perm) {
    Eigen::MatrixXd x(d.m(), d.n());
    for (int j = 0; j < d.m(); ++j) x.row(j) = d.features().row(perm[static_cast<std::size_t>(j)]);
    return data::Dataset(x, d.target(), d.task());
}

std::set<int> mapped(const data::FeatureIndexSet& s, const std::vector<int>& perm) {
    std::set<int> out;
    for (const int j : s.indices()) out.insert(perm[static_cast<std::size_t>(j - 1)] + 1);
    return out;
}

std::set<int> as_set(const data::FeatureIndexSet& s) { return {s.indices().begin(), s.indices().end()}; }

}  // namespace

TEST(Pearson, ExactCopyOfTarget) {
    CounterRng rng(1);
    Eigen::MatrixXd x = random_matrix(5, 40, rng);
    const data::Dataset d(x, x.row(2).transpose(), data::Task::regression());
    EXPECT_EQ(rank_pearson(d, 1).selected, data::FeatureIndexSet({3}));
}

TEST(Pearson, IdenticalPerfectFeaturesTieToLowerIndex) {
    CounterRng rng(2);
    Eigen::MatrixXd x = random_matrix(5, 40, rng);
    x.row(3) = x.row(1);
    const data::Dataset d(x, (2.0 * x.row(1)).transpose(), data::Task::regression());
    EXPECT_EQ(rank_pearson(d, 1).selected, data::FeatureIndexSet({2}));
}

TEST(Pearson, AndOrPicksRedundantCopies) {
    int hits = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto sel = rank_pearson(toy(data::ToyName::AndOr, 400, s), 4).selected;
        hits += sel.contains(8) && sel.contains(9) && sel.contains(10);
    }
    EXPECT_GE(hits, 9);
}

TEST(Pearson, PermutationEquivariant) {
    const auto d = toy(data::ToyName::Quad, 200, 3);
    const std::vector<int> perm{9, 3, 0, 7, 1, 5, 2, 8, 6, 4};
    const auto p = permute_features(d, perm);
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(mapped(rank_pearson(p, k).selected, perm), as_set(rank_pearson(d, k).selected));
}

TEST(Relieff, XorRecoversPair) {
    int hits = 0;
    for (std::uint64_t s = 0; s < 10; ++s)
        hits += relieff(toy(data::ToyName::Xor, 400, s), 2).selected == data::FeatureIndexSet({1, 2});
    EXPECT_GE(hits, 9);
}

TEST(Relieff, SeparatingFeatureAmongNoise) {
    CounterRng rng(4);
    Eigen::MatrixXd x = random_matrix(6, 80, rng);
    Eigen::VectorXd y(80);
    for (int i = 0; i < 80; ++i) {
        y[i] = i < 40 ? 1.0 : 2.0;
        x(4, i) = (i < 40 ? -2.0 : 2.0) + 0.1 * rng.normal();
    }
    const data::Dataset d(x, y, data::Task::classification(2));
    EXPECT_EQ(relieff(d, 1).selected, data::FeatureIndexSet({5}));
}

TEST(Relieff, KeepsBothCopiesOfInformativeFeature) {
    auto base = data::generate_toy({data::ToyName::Xor, 300, 5}).data;
    Eigen::MatrixXd x = base.features();
    // feature 6 becomes a copy of the label indicator, feature 7 a copy of feature 6
    x.row(5) = (base.target().array() - 1.0).matrix().transpose();
    x.row(6) = x.row(5);
    const auto d = data::standardize(data::Dataset(x, base.target(), base.task())).data;
    EXPECT_EQ(relieff(d, 2).selected, data::FeatureIndexSet({6, 7}));
}

TEST(Relieff, Preconditions) {
    EXPECT_THROW(relieff(toy(data::ToyName::Quad, 50, 1), 1), std::invalid_argument);
    EXPECT_THROW(relieff(toy(data::ToyName::Xor, 15, 1), 1), std::invalid_argument);
}

TEST(Relieff, PermutationEquivariant) {
    const auto d = toy(data::ToyName::Xor, 200, 6);
    const std::vector<int> perm{4, 8, 1, 0, 9, 2, 7, 3, 6, 5};
    const auto p = permute_features(d, perm);
    for (int k = 1; k <= 4; ++k) EXPECT_EQ(mapped(relieff(p, k).selected, perm), as_set(relieff(d, k).selected));
}

TEST(Sequential, BoundaryCases) {
    const auto d = toy(data::ToyName::Xor, 60, 1);
    const auto fwd = sequential_search(d, d.m(), Direction::Forward, sparse::Measure::Hsic, {}, 1);
    EXPECT_EQ(fwd.selection.selected.size(), static_cast<std::size_t>(d.m()));
    const auto bwd = sequential_search(d, d.m(), Direction::Backward, sparse::Measure::Hsic, {}, 1);
    EXPECT_TRUE(bwd.trace.empty());
    EXPECT_EQ(bwd.selection.selected.size(), static_cast<std::size_t>(d.m()));
}

TEST(Sequential, ForwardPathsAreNested) {
    const auto d = toy(data::ToyName::Quad, 100, 2);
    for (const auto measure : {sparse::Measure::Hsic, sparse::Measure::Lsmi}) {
        const auto a = sequential_search(d, 2, Direction::Forward, measure, {}, 3).selection.selected;
        const auto b = sequential_search(d, 3, Direction::Forward, measure, {}, 3).selection.selected;
        EXPECT_EQ(a.intersection_size(b), a.size());
    }
}

TEST(Sequential, TraceValuesReproduce) {
    const auto d = toy(data::ToyName::AndOr, 100, 3);
    for (const auto dir : {Direction::Forward, Direction::Backward}) {
        for (const auto measure : {sparse::Measure::Hsic, sparse::Measure::Lsmi}) {
            const int k = dir == Direction::Forward ? 3 : 7;
            const auto res = sequential_search(d, k, dir, measure, {}, 5);
            std::vector<int> current;
            if (dir == Direction::Backward)
                for (int j = 1; j <= d.m(); ++j) current.push_back(j);
            std::set<int> seen;
            for (const auto& step : res.trace) {
                EXPECT_TRUE(seen.insert(step.feature).second);
                if (dir == Direction::Forward)
                    current.push_back(step.feature);
                else
                    current.erase(std::find(current.begin(), current.end(), step.feature));
                const double v = subset_measure(d, data::FeatureIndexSet(current), measure, {}, 5);
                EXPECT_NEAR(v, step.value, 1e-9);
            }
            EXPECT_EQ(res.selection.selected, data::FeatureIndexSet(current));
        }
    }
}

TEST(Sequential, ForwardLsmiMissesXorOften) {
    int misses = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto d = toy(data::ToyName::Xor, 200, 30 + s);
        misses += sequential_search(d, 2, Direction::Forward, sparse::Measure::Lsmi, {}, s).selection.selected !=
                  data::FeatureIndexSet({1, 2});
    }
    EXPECT_GE(misses, 5);
}

TEST(Mrmr, FirstPickIsMostRelevant) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto d = toy(data::ToyName::Quad, 200, s);
        const auto disc = discretize_dataset(d);
        int best = 0;
        double best_mi = -1.0;
        for (int j = 0; j < d.m(); ++j) {
            const double mi = measures::discrete_mi(disc.features[static_cast<std::size_t>(j)], disc.target);
            if (mi > best_mi) {
                best_mi = mi;
                best = j;
            }
        }
        EXPECT_EQ(mrmr(d, 1).ranking.front(), best);
    }
}

TEST(Mrmr, DuplicateOfBestIsNotSecond) {
    auto base = data::generate_toy({data::ToyName::Quad, 300, 7}).data;
    Eigen::MatrixXd x = base.features();
    const auto first = mrmr(data::standardize(base).data, 1).ranking.front();
    x.row(first == 5 ? 6 : 5) = x.row(first);
    const auto d = data::standardize(data::Dataset(x, base.target(), base.task())).data;
    const auto disc = discretize_dataset(d);
    const int copy = first == 5 ? 6 : 5;
    const auto res = mrmr(d, 2);
    ASSERT_EQ(res.ranking.front(), first);
    // exhaustive step-2 scores
    const auto& fb = disc.features[static_cast<std::size_t>(first)];
    const auto& fc = disc.features[static_cast<std::size_t>(copy)];
    bool precondition = false;
    int argmax = -1;
    double best_score = -1e300;
    for (int j = 0; j < d.m(); ++j) {
        if (j == first) continue;
        const auto& fj = disc.features[static_cast<std::size_t>(j)];
        const double rel = measures::discrete_mi(fj, disc.target);
        const double red = measures::discrete_mi(fj, fb);
        if (j != copy && rel > 0.0 && red < measures::discrete_mi(fc, fb)) precondition = true;
        if (rel - red > best_score) {
            best_score = rel - red;
            argmax = j;
        }
    }
    ASSERT_TRUE(precondition);
    EXPECT_EQ(res.ranking[1], argmax);
    EXPECT_NE(res.ranking[1], copy);
}

TEST(Mrmr, QuadRecoversPair) {
    int hits = 0;
    for (std::uint64_t s = 0; s < 10; ++s) hits += mrmr(toy(data::ToyName::Quad, 400, s), 2).selected == data::FeatureIndexSet({1, 2});
    EXPECT_GE(hits, 8);
}

TEST(Qpfs, AlphaOneReducesToPearson) {
    CounterRng rng(8);
    for (int t = 0; t < 5; ++t) {
        const Eigen::MatrixXd x = random_matrix(7, 50, rng);
        const data::Dataset d(x, (x.row(0) + 0.5 * x.row(3) + random_matrix(1, 50, rng)).transpose(), data::Task::regression());
        EXPECT_EQ(qpfs(d, 7, 1.0).ranking, rank_pearson(d, 7).ranking);
    }
}

TEST(Qpfs, TwoFeatureClosedForm) {
    QpfsProblem p;
    p.Q = Eigen::MatrixXd::Identity(2, 2);
    p.f = Eigen::Vector2d(1.0, 0.0);
    for (const double alpha : {0.1, 0.3, 0.5, 0.8}) {
        p.alpha = alpha;
        const auto sol = solve_qpfs(p);
        // minimiser on the segment w = (t, 1 - t): t = min(1, 1 / (2 (1 - alpha)))
        const double t = std::min(1.0, 0.5 / (1.0 - alpha));
        EXPECT_NEAR(sol.w[0], t, 1e-4);
        EXPECT_GT(sol.w[0], sol.w[1]);
        EXPECT_NEAR(sol.w.sum(), 1.0, 1e-12);
        EXPECT_TRUE((sol.w.array() >= 0.0).all());
    }
}

TEST(Qpfs, ObjectiveNonIncreasingAndSimplexFeasible) {
    for (std::uint64_t s = 0; s < 3; ++s) {
        const auto d = toy(data::ToyName::AndOr, 200, s);
        const auto p = make_qpfs_problem(d);
        EXPECT_TRUE(p.Q.isApprox(p.Q.transpose()));
        EXPECT_TRUE((p.Q.array() >= 0.0).all() && (p.Q.array() <= 1.0).all());
        EXPECT_GT(p.alpha, 0.0);
        EXPECT_LT(p.alpha, 1.0);
        const auto sol = solve_qpfs(p);
        for (std::size_t i = 1; i < sol.objective_trace.size(); ++i)
            EXPECT_LE(sol.objective_trace[i], sol.objective_trace[i - 1]);
        EXPECT_NEAR(sol.w.sum(), 1.0, 1e-12);
        EXPECT_EQ(qpfs(d, 4).selected.size(), 4u);
    }
}

TEST(Qpfs, IterationCapIsAnError) {
    const auto p = make_qpfs_problem(toy(data::ToyName::Quad, 100, 1));
    EXPECT_THROW(solve_qpfs(p, 0.0, 3), ConvergenceError);
}

TEST(Lasso, FullShrinkageAndOls) {
    CounterRng rng(9);
    const Eigen::MatrixXd x = random_matrix(4, 60, rng);
    Eigen::VectorXd y = (x.transpose() * Eigen::Vector4d(1.0, -2.0, 0.5, 0.0)) + 0.1 * random_matrix(60, 1, rng);
    y.array() -= y.mean();
    const double lmax = lasso_lambda_max(x, y);
    EXPECT_EQ(lasso_fit(x, y, lmax).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(lasso_fit(x, y, 2.0 * lmax).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_GT(lasso_fit(x, y, 0.99 * lmax).cwiseAbs().maxCoeff(), 0.0);
    const Eigen::VectorXd ols = x.transpose().colPivHouseholderQr().solve(y);
    const Eigen::VectorXd w = lasso_fit(x, y, 0.0);
    EXPECT_LE((w - ols).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_EQ((w.array() != 0.0).count(), 4);
}

TEST(Lasso, SingleFeatureSoftThreshold) {
    CounterRng rng(10);
    Eigen::MatrixXd x = random_matrix(1, 50, rng);
    x.array() -= x.mean();
    x /= std::sqrt(x.squaredNorm() / 50.0);  // unit variance
    const Eigen::VectorXd y = 2.0 * x.row(0).transpose();
    const double n = 50.0;
    const double lmax = lasso_lambda_max(x, y);
    EXPECT_NEAR(lmax, 4.0 * n, 1e-9);
    double prev = 1e300;
    for (const double lambda : {0.0, 10.0, 50.0, 100.0, 199.0, 200.0, 250.0}) {
        const double w = lasso_fit(x, y, lambda)[0];
        // soft(<x, y>, lambda / 2) / ||x||^2 with <x, y> = 2n and ||x||^2 = n
        EXPECT_NEAR(w, std::max(0.0, 2.0 * n - lambda / 2.0) / n, 1e-12);
        EXPECT_LE(w, prev);
        prev = w;
    }
}

TEST(Lasso, SelectsExactlyKOrFlags) {
    const auto d = toy(data::ToyName::Quad, 200, 3);
    for (int k = 1; k <= 4; ++k) {
        const auto res = lasso_select(d, k);
        if (!res.flagged) {
            EXPECT_EQ(res.selected.size(), static_cast<std::size_t>(k));
        }
    }
    EXPECT_EQ(lasso_select(toy(data::ToyName::AndOr, 200, 1), 3).selected.size() > 0, true);
}

TEST(Lasso, MulticlassRejected) {
    Eigen::MatrixXd x(1, 6);
    x << 1, 2, 3, 4, 5, 6;
    Eigen::VectorXd y(6);
    y << 1, 2, 3, 1, 2, 3;
    EXPECT_THROW(lasso_select(data::Dataset(x, y, data::Task::classification(3)), 1), std::invalid_argument);
}

TEST(Selectors, ReturnExactlyKDistinctInRange) {
    const auto d = toy(data::ToyName::AndOr, 150, 11);
    for (int k : {1, 3, 10}) {
        for (const auto& sel : {rank_pearson(d, k), relieff(d, k), mrmr(d, k), qpfs(d, k)}) {
            EXPECT_EQ(sel.selected.size(), static_cast<std::size_t>(k));
            for (const int j : sel.selected.indices()) {
                EXPECT_GE(j, 1);
                EXPECT_LE(j, d.m());
            }
        }
    }
    EXPECT_THROW(rank_pearson(d, 0), std::invalid_argument);
    EXPECT_THROW(mrmr(d, 11), std::invalid_argument);
}
