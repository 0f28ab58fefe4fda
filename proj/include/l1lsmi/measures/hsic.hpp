#pragma once

#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/data/distance.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace l1lsmi::measures {

struct OutputKernel {
    enum class Kind { Gaussian, Delta };
    Kind kind = Kind::Delta;
    double width = 1.0;  // Gaussian only

    static OutputKernel gaussian(double w) { return {Kind::Gaussian, w}; }
    static OutputKernel delta() { return {Kind::Delta, 1.0}; }
};

struct HsicConfig {
    double width_x = 1.0;
    OutputKernel output = OutputKernel::delta();

    void validate() const {
        if (!(width_x > 0.0)) throw std::invalid_argument("HSIC input width must be positive");
        if (output.kind == OutputKernel::Kind::Gaussian && !(output.width > 0.0))
            throw std::invalid_argument("HSIC output width must be positive");
    }
};

/// sigma_med with a fallback of 1 for coincident points.
inline double median_width(const Eigen::MatrixXd& points) {
    const double s = data::median_pairwise_distance(points);
    return s > 0.0 ? s : 1.0;
}

/// exp(-||a_i - a_j||^2 / (2 width^2)) over the columns of `points`.
inline Eigen::MatrixXd gaussian_gram(const Eigen::MatrixXd& points, double width) {
    const Eigen::Index n = points.cols();
    Eigen::MatrixXd k(n, n);
    const double scale = -0.5 / (width * width);
    for (Eigen::Index j = 0; j < n; ++j) {
        k(j, j) = 1.0;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v = std::exp(scale * (points.col(i) - points.col(j)).squaredNorm());
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

inline Eigen::MatrixXd output_gram(const Eigen::VectorXd& y, const OutputKernel& kernel) {
    if (kernel.kind == OutputKernel::Kind::Gaussian) return gaussian_gram(y.transpose(), kernel.width);
    const Eigen::Index n = y.size();
    Eigen::MatrixXd l(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) l(i, j) = y[i] == y[j] ? 1.0 : 0.0;
    return l;
}

/// H L H with H = I - 11^T/n.
inline Eigen::MatrixXd double_center(const Eigen::MatrixXd& l) {
    const Eigen::VectorXd col_mean = l.colwise().mean().transpose();
    const Eigen::VectorXd row_mean = l.rowwise().mean();
    const double all = l.mean();
    Eigen::MatrixXd c = l;
    c.colwise() -= row_mean;
    c.rowwise() -= col_mean.transpose();
    c.array() += all;
    return c;
}

/// tr(K H L H) / (n-1)^2.
inline double hsic_from_grams(const Eigen::MatrixXd& k, const Eigen::MatrixXd& l) {
    const Eigen::Index n = k.rows();
    if (n < 2) throw std::invalid_argument("HSIC needs at least two samples");
    const double denom = static_cast<double>(n - 1) * static_cast<double>(n - 1);
    return (k.array() * double_center(l).array()).sum() / denom;
}

/// Biased empirical HSIC between the columns of `inputs` (d x n) and `y`.
inline double hsic(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& y, const HsicConfig& cfg) {
    cfg.validate();
    if (inputs.cols() != y.size()) throw std::invalid_argument("HSIC: sample count mismatch");
    return hsic_from_grams(gaussian_gram(inputs, cfg.width_x), output_gram(y, cfg.output));
}

/// Median-heuristic configuration: Gaussian input width sigma_med(inputs);
/// delta output kernel for classification, Gaussian sigma_med(y) otherwise.
inline HsicConfig median_config(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& y, const data::Task& task) {
    HsicConfig cfg;
    cfg.width_x = median_width(inputs);
    cfg.output = task.is_classification() ? OutputKernel::delta()
                                          : OutputKernel::gaussian(median_width(y.transpose()));
    return cfg;
}

inline double hsic(const data::Dataset& d, const HsicConfig& cfg) { return hsic(d.features(), d.target(), cfg); }

}  // namespace l1lsmi::measures
