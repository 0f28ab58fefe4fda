#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace l1lsmi::data {

enum class TaskKind { Regression, Classification };

struct Task {
    TaskKind kind = TaskKind::Regression;
    int classes = 0;  // C for classification, 0 otherwise

    static Task regression() { return {TaskKind::Regression, 0}; }
    static Task classification(int c) { return {TaskKind::Classification, c}; }

    [[nodiscard]] bool is_classification() const { return kind == TaskKind::Classification; }
    bool operator==(const Task&) const = default;
};

/// Sorted, duplicate-free set of 1-based feature indices.
class FeatureIndexSet {
public:
    FeatureIndexSet() = default;

    /// Sorts and deduplicates. Throws if any index falls outside 1..m
    /// (the range check is skipped when m == 0).
    explicit FeatureIndexSet(std::vector<int> indices, int m = 0) : idx_(std::move(indices)) {
        std::sort(idx_.begin(), idx_.end());
        idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
        for (const int i : idx_) {
            if (i < 1 || (m > 0 && i > m))
                throw std::out_of_range("feature index " + std::to_string(i) + " outside 1.." +
                                        std::to_string(m));
        }
    }

    static FeatureIndexSet from_zero_based(const std::vector<int>& zero_based, int m = 0) {
        std::vector<int> one_based;
        one_based.reserve(zero_based.size());
        for (const int i : zero_based) one_based.push_back(i + 1);
        return FeatureIndexSet(std::move(one_based), m);
    }

    [[nodiscard]] const std::vector<int>& indices() const { return idx_; }
    [[nodiscard]] std::vector<int> zero_based() const {
        std::vector<int> out;
        out.reserve(idx_.size());
        for (const int i : idx_) out.push_back(i - 1);
        return out;
    }
    [[nodiscard]] std::size_t size() const { return idx_.size(); }
    [[nodiscard]] bool empty() const { return idx_.empty(); }
    [[nodiscard]] bool contains(int one_based) const {
        return std::binary_search(idx_.begin(), idx_.end(), one_based);
    }
    [[nodiscard]] std::size_t intersection_size(const FeatureIndexSet& other) const {
        std::size_t count = 0;
        for (const int i : idx_) count += other.contains(i) ? 1 : 0;
        return count;
    }

    /// "1;2;5"
    [[nodiscard]] std::string to_string(char sep = ';') const {
        std::string s;
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            if (i) s += sep;
            s += std::to_string(idx_[i]);
        }
        return s;
    }

    bool operator==(const FeatureIndexSet&) const = default;

private:
    std::vector<int> idx_;
};

/// Feature matrix (m features x n samples), target vector and task kind.
/// Immutable after construction.
class Dataset {
public:
    Dataset() = default;

    Dataset(Eigen::MatrixXd features, Eigen::VectorXd target, Task task)
        : features_(std::move(features)), target_(std::move(target)), task_(task) {
        if (features_.cols() != target_.size())
            throw std::invalid_argument("feature matrix has " + std::to_string(features_.cols()) +
                                        " samples but target has " + std::to_string(target_.size()));
        if (!features_.allFinite() || !target_.allFinite())
            throw std::invalid_argument("dataset contains non-finite values");
        if (task_.is_classification()) {
            if (task_.classes < 1) throw std::invalid_argument("classification needs at least one class");
            for (Eigen::Index i = 0; i < target_.size(); ++i) {
                const double v = target_[i];
                if (v != std::floor(v) || v < 1 || v > task_.classes)
                    throw std::invalid_argument("class label " + std::to_string(v) + " outside 1.." +
                                                std::to_string(task_.classes));
            }
        }
    }

    [[nodiscard]] const Eigen::MatrixXd& features() const { return features_; }
    [[nodiscard]] const Eigen::VectorXd& target() const { return target_; }
    [[nodiscard]] const Task& task() const { return task_; }
    [[nodiscard]] int m() const { return static_cast<int>(features_.rows()); }
    [[nodiscard]] int n() const { return static_cast<int>(features_.cols()); }

    /// Class labels in 1..C; empty for regression.
    [[nodiscard]] std::vector<int> labels() const {
        std::vector<int> out;
        if (!task_.is_classification()) return out;
        out.reserve(static_cast<std::size_t>(target_.size()));
        for (Eigen::Index i = 0; i < target_.size(); ++i) out.push_back(static_cast<int>(target_[i]));
        return out;
    }

    /// Dataset restricted to the given features, in index order.
    [[nodiscard]] Dataset restrict(const FeatureIndexSet& subset) const {
        Eigen::MatrixXd sub(static_cast<Eigen::Index>(subset.size()), features_.cols());
        Eigen::Index row = 0;
        for (const int j : subset.indices()) {
            if (j > m()) throw std::out_of_range("feature index " + std::to_string(j) + " > m");
            sub.row(row++) = features_.row(j - 1);
        }
        return Dataset(std::move(sub), target_, task_);
    }

    bool operator==(const Dataset& o) const {
        return task_ == o.task_ && features_.rows() == o.features_.rows() &&
               features_.cols() == o.features_.cols() && features_ == o.features_ && target_ == o.target_;
    }

private:
    Eigen::MatrixXd features_;
    Eigen::VectorXd target_;
    Task task_;
};

struct FeatureScale {
    double mean = 0.0;
    double std = 1.0;
    bool zero_variance = false;
};

struct Standardized {
    Dataset data;
    std::vector<FeatureScale> scales;  // one per feature
    FeatureScale target_scale;         // identity for classification
};

namespace detail {
inline FeatureScale standardize_row(Eigen::Ref<Eigen::RowVectorXd> row) {
    FeatureScale s;
    const auto n = static_cast<double>(row.size());
    s.mean = row.mean();
    row.array() -= s.mean;
    s.std = std::sqrt(row.squaredNorm() / n);  // population convention
    if (!(s.std > 1e-12 * std::max(1.0, std::abs(s.mean)))) {
        s.zero_variance = true;
        s.std = 0.0;
        row.setZero();
    } else {
        row /= s.std;
    }
    return s;
}
}  // namespace detail

/// Zero-mean, unit population variance for every feature row. Constant
/// features become all-zero rows and are flagged, keeping indices stable.
/// A regression target is standardized the same way since the output kernel
/// shares its width with the input kernel.
inline Standardized standardize(const Dataset& data) {
    Standardized out;
    Eigen::MatrixXd x = data.features();
    out.scales.reserve(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
        Eigen::RowVectorXd row = x.row(j);
        out.scales.push_back(detail::standardize_row(row));
        x.row(j) = row;
    }
    Eigen::VectorXd y = data.target();
    if (!data.task().is_classification() && y.size() > 0) {
        Eigen::RowVectorXd row = y.transpose();
        out.target_scale = detail::standardize_row(row);
        y = row.transpose();
    }
    out.data = Dataset(std::move(x), std::move(y), data.task());
    return out;
}

}  // namespace l1lsmi::data
