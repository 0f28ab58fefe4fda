#pragma once

#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/measures/hsic.hpp"
#include "l1lsmi/measures/lsmi.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace l1lsmi::sparse {

struct ValueAndGradient {
    double value = 0.0;
    Eigen::VectorXd gradient;
};

class GradientError : public std::runtime_error {
public:
    GradientError(Eigen::Index coordinate, const std::string& what)
        : std::runtime_error(what + " (coordinate " + std::to_string(coordinate + 1) + ")"), coordinate_(coordinate) {}
    [[nodiscard]] Eigen::Index coordinate() const { return coordinate_; }

private:
    Eigen::Index coordinate_;
};

namespace detail {
inline void check_finite(const ValueAndGradient& vg) {
    if (!std::isfinite(vg.value)) throw GradientError(-1, "non-finite objective value");
    for (Eigen::Index j = 0; j < vg.gradient.size(); ++j)
        if (!std::isfinite(vg.gradient[j])) throw GradientError(j, "non-finite gradient");
}
}  // namespace detail

/// LSMI of diag(w) X against Y with the basis centres fixed, and its exact
/// gradient in w with (sigma, lambda) held fixed.
///
/// With A = H + lambda I and alpha = A^{-1} h, the value is h^T alpha / 2 - 1/2
/// and its total derivative is alpha^T dh - alpha^T dH alpha / 2. Only phi^x
/// depends on w:  d phi_l^x / d w_j = -phi_l^x w_j (x_j - x_{c(l),j})^2 / sigma^2.
class LsmiObjective {
public:
    LsmiObjective(const data::Dataset& d, std::vector<Eigen::Index> centers)
        : data_(&d), centers_(std::move(centers)) {
        const auto b = static_cast<Eigen::Index>(centers_.size());
        const Eigen::Index n = d.n();
        const Eigen::MatrixXd& x = d.features();
        sq_feature_.resize(static_cast<std::size_t>(d.m()));
        for (int j = 0; j < d.m(); ++j) {
            Eigen::MatrixXd& dj = sq_feature_[static_cast<std::size_t>(j)];
            dj.resize(b, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index l = 0; l < b; ++l) {
                    const double diff = x(j, i) - x(j, centers_[static_cast<std::size_t>(l)]);
                    dj(l, i) = diff * diff;
                }
        }
        phi_y_match_.resize(b, n);
        const Eigen::VectorXd& y = d.target();
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index l = 0; l < b; ++l) {
                const double dy = y[i] - y[centers_[static_cast<std::size_t>(l)]];
                phi_y_match_(l, i) = d.task().is_classification() ? (dy == 0.0 ? 1.0 : 0.0) : dy * dy;
            }
    }

    [[nodiscard]] const std::vector<Eigen::Index>& centers() const { return centers_; }

    [[nodiscard]] ValueAndGradient evaluate(const Eigen::VectorXd& w, double sigma, double lambda) const {
        const data::Dataset& d = *data_;
        if (w.size() != d.m()) throw std::invalid_argument("weight vector length differs from feature count");
        const Eigen::Index b = static_cast<Eigen::Index>(centers_.size());
        const Eigen::Index n = d.n();
        const double inv2s2 = 0.5 / (sigma * sigma);

        Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(b, n);
        for (int j = 0; j < d.m(); ++j)
            if (w[j] != 0.0) sq.noalias() += (w[j] * w[j]) * sq_feature_[static_cast<std::size_t>(j)];
        const Eigen::MatrixXd phi_x = (-inv2s2 * sq.array()).exp().matrix();
        const Eigen::MatrixXd phi_y = d.task().is_classification()
                                          ? phi_y_match_
                                          : Eigen::MatrixXd((-inv2s2 * phi_y_match_.array()).exp().matrix());

        const measures::LsmiFit fit = measures::lsmi_fit_designs(phi_x, phi_y, lambda);
        const Eigen::VectorXd& alpha = fit.alpha;

        Eigen::MatrixXd gy(b, b);
        gy.setZero();
        gy.selfadjointView<Eigen::Lower>().rankUpdate(phi_y);
        gy.triangularView<Eigen::StrictlyUpper>() = gy.transpose();

        const auto nd = static_cast<double>(n);
        // coeff(l, i) = alpha_l phi_x(l, i) [phi_y(l, i)/n - (Gy diag(alpha) Phi_x)(l, i)/n^2]
        const Eigen::MatrixXd cross = gy * (alpha.asDiagonal() * phi_x);
        const Eigen::MatrixXd coeff =
            (alpha.asDiagonal() * phi_x).cwiseProduct(phi_y / nd - cross / (nd * nd));

        ValueAndGradient out;
        out.value = fit.value;
        out.gradient = Eigen::VectorXd::Zero(d.m());
        for (int j = 0; j < d.m(); ++j) {
            if (w[j] == 0.0) continue;
            const double s = coeff.cwiseProduct(sq_feature_[static_cast<std::size_t>(j)]).sum();
            out.gradient[j] = -w[j] * s / (sigma * sigma);
        }
        detail::check_finite(out);
        return out;
    }

private:
    const data::Dataset* data_;
    std::vector<Eigen::Index> centers_;
    std::vector<Eigen::MatrixXd> sq_feature_;  // per feature: b x n squared differences to centres
    Eigen::MatrixXd phi_y_match_;              // label match (classification) or squared target difference
};

/// HSIC of diag(w) X against Y for a fixed Gaussian input width, with its
/// gradient in w. The centred output Gram is computed once.
class HsicObjective {
public:
    HsicObjective(const data::Dataset& d, const measures::OutputKernel& output)
        : data_(&d), centered_l_(measures::double_center(measures::output_gram(d.target(), output))) {}

    [[nodiscard]] ValueAndGradient evaluate(const Eigen::VectorXd& w, double width) const {
        const data::Dataset& d = *data_;
        if (w.size() != d.m()) throw std::invalid_argument("weight vector length differs from feature count");
        const Eigen::Index n = d.n();
        const Eigen::MatrixXd z = w.asDiagonal() * d.features();
        const Eigen::MatrixXd k = measures::gaussian_gram(z, width);
        const double denom = static_cast<double>(n - 1) * static_cast<double>(n - 1);
        const Eigen::MatrixXd kl = k.cwiseProduct(centered_l_);

        ValueAndGradient out;
        out.value = kl.sum() / denom;
        out.gradient = Eigen::VectorXd::Zero(d.m());
        const Eigen::MatrixXd& x = d.features();
        for (int j = 0; j < d.m(); ++j) {
            if (w[j] == 0.0) continue;
            double s = 0.0;
            for (Eigen::Index c = 0; c < n; ++c)
                for (Eigen::Index r = c + 1; r < n; ++r) {
                    const double diff = x(j, r) - x(j, c);
                    s += kl(r, c) * diff * diff;
                }
            out.gradient[j] = -w[j] * 2.0 * s / (width * width * denom);
        }
        detail::check_finite(out);
        return out;
    }

private:
    const data::Dataset* data_;
    Eigen::MatrixXd centered_l_;
};

}  // namespace l1lsmi::sparse
