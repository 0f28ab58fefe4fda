#pragma once

#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/data/distance.hpp"
#include "l1lsmi/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace l1lsmi::measures {

/// Candidate (sigma, lambda) values for K-fold model selection. Sigma
/// candidates are multiples of sigma_med of the inputs being scored.
struct CvGrid {
    std::vector<double> sigma_scales{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.5, 2.0};
    std::vector<double> lambdas{1e-3, 1e-2, 1e-1, 1.0};
    int folds = 5;

    void validate() const {
        if (sigma_scales.empty() || lambdas.empty()) throw std::invalid_argument("CV grid lists must be nonempty");
        for (const double s : sigma_scales)
            if (!(s > 0.0)) throw std::invalid_argument("CV sigma scales must be positive");
        for (const double l : lambdas)
            if (!(l > 0.0)) throw std::invalid_argument("CV lambdas must be positive");
        if (folds < 2) throw std::invalid_argument("CV needs at least two folds");
    }
};

/// Basis count b = min(100, n) unless overridden.
inline constexpr int kDefaultBasisCount = 100;

struct LsmiModel {
    std::vector<Eigen::Index> centers;  // sample indices c(l), distinct
    double sigma = 1.0;
    double lambda = 1e-3;
    Eigen::VectorXd alpha;

    [[nodiscard]] int b() const { return static_cast<int>(centers.size()); }
};

struct LsmiFit {
    Eigen::MatrixXd H;  // b x b
    Eigen::VectorXd h;
    Eigen::VectorXd alpha;
    double value = 0.0;  // h^T alpha / 2 - 1/2, not clipped
};

class SolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// b distinct sample indices drawn without replacement.
inline std::vector<Eigen::Index> choose_centers(int n, int b, std::uint64_t seed) {
    if (b > n) throw std::invalid_argument("basis count " + std::to_string(b) + " exceeds sample count " + std::to_string(n));
    if (b < 1) throw std::invalid_argument("basis count must be positive");
    CounterRng rng(seed);
    const auto picks = rng.sample_without_replacement(static_cast<std::size_t>(n), static_cast<std::size_t>(b));
    return {picks.begin(), picks.end()};
}

/// Product-kernel basis phi_l(x, y) = phi_l^x(x) * phi_l^y(y).
///
/// phi_l^x is a Gaussian of width sigma centred at the (already weighted)
/// input of sample c(l). phi_l^y is a Gaussian of the same width on a real
/// target, or the delta kernel on a class label.
class ProductBasis {
public:
    ProductBasis(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& target, data::Task task,
                 std::vector<Eigen::Index> centers, double sigma)
        : task_(task), centers_(std::move(centers)), sigma_(sigma) {
        if (!(sigma > 0.0)) throw std::invalid_argument("basis width must be positive");
        if (inputs.cols() != target.size()) throw std::invalid_argument("basis: sample count mismatch");
        const auto b = static_cast<Eigen::Index>(centers_.size());
        center_x_.resize(inputs.rows(), b);
        center_y_.resize(b);
        for (Eigen::Index l = 0; l < b; ++l) {
            const Eigen::Index c = centers_[static_cast<std::size_t>(l)];
            if (c < 0 || c >= inputs.cols()) throw std::out_of_range("basis center outside sample range");
            center_x_.col(l) = inputs.col(c);
            center_y_[l] = target[c];
        }
        phi_x_ = input_design(inputs);
        phi_y_ = output_design(target);
    }

    [[nodiscard]] int b() const { return static_cast<int>(centers_.size()); }
    [[nodiscard]] double sigma() const { return sigma_; }
    [[nodiscard]] const std::vector<Eigen::Index>& centers() const { return centers_; }

    double input_factor(int l, const Eigen::Ref<const Eigen::VectorXd>& x) const {
        return std::exp(-(x - center_x_.col(l)).squaredNorm() / (2.0 * sigma_ * sigma_));
    }
    double output_factor(int l, double y) const {
        if (task_.is_classification()) return y == center_y_[l] ? 1.0 : 0.0;
        const double d = y - center_y_[l];
        return std::exp(-d * d / (2.0 * sigma_ * sigma_));
    }
    double operator()(int l, const Eigen::Ref<const Eigen::VectorXd>& x, double y) const {
        return input_factor(l, x) * output_factor(l, y);
    }

    /// b x n matrix of phi_l^x over the columns of `inputs`.
    [[nodiscard]] Eigen::MatrixXd input_design(const Eigen::MatrixXd& inputs) const {
        Eigen::MatrixXd out(b(), inputs.cols());
        for (Eigen::Index i = 0; i < inputs.cols(); ++i)
            for (int l = 0; l < b(); ++l) out(l, i) = input_factor(l, inputs.col(i));
        return out;
    }
    [[nodiscard]] Eigen::MatrixXd output_design(const Eigen::VectorXd& target) const {
        Eigen::MatrixXd out(b(), target.size());
        for (Eigen::Index i = 0; i < target.size(); ++i)
            for (int l = 0; l < b(); ++l) out(l, i) = output_factor(l, target[i]);
        return out;
    }

    /// Designs on the samples the basis was built from.
    [[nodiscard]] const Eigen::MatrixXd& phi_x() const { return phi_x_; }
    [[nodiscard]] const Eigen::MatrixXd& phi_y() const { return phi_y_; }

private:
    data::Task task_;
    std::vector<Eigen::Index> centers_;
    double sigma_;
    Eigen::MatrixXd center_x_;
    Eigen::VectorXd center_y_;
    Eigen::MatrixXd phi_x_;
    Eigen::MatrixXd phi_y_;
};

inline ProductBasis build_basis(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& target, data::Task task, int b,
                                double sigma, std::uint64_t seed) {
    return ProductBasis(inputs, target, task, choose_centers(static_cast<int>(inputs.cols()), b, seed), sigma);
}

/// Solves (H + lambda I) alpha = h. Cholesky first; a pivoted QR solve if
/// the factorization reports failure.
inline Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& H, const Eigen::VectorXd& h, double lambda) {
    Eigen::MatrixXd A = H;
    A.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    Eigen::VectorXd alpha;
    if (llt.info() == Eigen::Success) alpha = llt.solve(h);
    if (alpha.size() == 0 || !alpha.allFinite()) alpha = A.colPivHouseholderQr().solve(h);
    if (!alpha.allFinite()) {
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
        const auto& s = svd.singularValues();
        std::ostringstream msg;
        msg << "ridge solve produced non-finite coefficients (b=" << A.rows() << ", lambda=" << lambda
            << ", max singular value=" << s(0) << ", min singular value=" << s(s.size() - 1) << ")";
        throw SolveError(msg.str());
    }
    return alpha;
}

/// H = (1/n^2) (Phi_x Phi_x^T) .* (Phi_y Phi_y^T),  h = (1/n) rowsum(Phi_x .* Phi_y).
inline LsmiFit lsmi_fit_designs(const Eigen::MatrixXd& phi_x, const Eigen::MatrixXd& phi_y, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("ridge parameter must be positive");
    const auto n = static_cast<double>(phi_x.cols());
    LsmiFit fit;
    Eigen::MatrixXd gx(phi_x.rows(), phi_x.rows());
    gx.setZero();
    gx.selfadjointView<Eigen::Lower>().rankUpdate(phi_x);
    Eigen::MatrixXd gy(phi_y.rows(), phi_y.rows());
    gy.setZero();
    gy.selfadjointView<Eigen::Lower>().rankUpdate(phi_y);
    fit.H = gx.cwiseProduct(gy) / (n * n);
    fit.H.triangularView<Eigen::StrictlyUpper>() = fit.H.transpose();
    fit.h = phi_x.cwiseProduct(phi_y).rowwise().sum() / n;
    fit.alpha = ridge_solve(fit.H, fit.h, lambda);
    fit.value = 0.5 * fit.h.dot(fit.alpha) - 0.5;
    return fit;
}

/// LSMI of (inputs, target) with a fixed basis and ridge parameter.
inline LsmiFit lsmi_fit(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& target, data::Task task,
                        const std::vector<Eigen::Index>& centers, double sigma, double lambda) {
    const ProductBasis basis(inputs, target, task, centers, sigma);
    return lsmi_fit_designs(basis.phi_x(), basis.phi_y(), lambda);
}

struct CvCandidate {
    double sigma = 0.0;
    double lambda = 0.0;
    double score = 0.0;  // J^(K-CV), lower is better
};

struct CvResult {
    LsmiModel model;  // alpha refitted on all samples
    LsmiFit fit;
    double sigma_med = 0.0;
    std::vector<CvCandidate> candidates;
};

namespace detail {

// Precomputed distances from the basis centres, columns reordered so that
// every fold is a contiguous block.
struct CvLayout {
    Eigen::MatrixXd sq_x;  // b x n
    Eigen::MatrixXd sq_y;  // b x n (regression) or label match indicator (classification)
    std::vector<Eigen::Index> fold_begin;
    std::vector<Eigen::Index> fold_size;
};

inline CvLayout make_layout(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& target, const data::Task& task,
                            const std::vector<Eigen::Index>& centers, int folds, std::uint64_t fold_seed) {
    const auto n = static_cast<int>(inputs.cols());
    CounterRng rng(fold_seed);
    const auto perm = rng.sample_without_replacement(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::vector<Eigen::Index> order;
    order.reserve(static_cast<std::size_t>(n));
    CvLayout lay;
    for (int k = 0; k < folds; ++k) {
        lay.fold_begin.push_back(static_cast<Eigen::Index>(order.size()));
        for (int pos = k; pos < n; pos += folds) order.push_back(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(pos)]));
        lay.fold_size.push_back(static_cast<Eigen::Index>(order.size()) - lay.fold_begin.back());
    }
    const auto b = static_cast<Eigen::Index>(centers.size());
    lay.sq_x.resize(b, n);
    lay.sq_y.resize(b, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index s = order[static_cast<std::size_t>(i)];
        for (Eigen::Index l = 0; l < b; ++l) {
            const Eigen::Index c = centers[static_cast<std::size_t>(l)];
            lay.sq_x(l, i) = (inputs.col(s) - inputs.col(c)).squaredNorm();
            const double dy = target[s] - target[c];
            lay.sq_y(l, i) = task.is_classification() ? (dy == 0.0 ? 1.0 : 0.0) : dy * dy;
        }
    }
    return lay;
}

inline Eigen::MatrixXd gram(const Eigen::Ref<const Eigen::MatrixXd>& phi) {
    Eigen::MatrixXd g(phi.rows(), phi.rows());
    g.setZero();
    g.selfadjointView<Eigen::Lower>().rankUpdate(phi);
    g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
    return g;
}

}  // namespace detail

/// Picks (sigma, lambda) minimising the K-fold hold-out squared-loss
/// criterion, then refits on all samples. Ties go to the larger sigma, then
/// the larger lambda. Centres and fold assignment come from `seed`.
inline CvResult lsmi_cv_select(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& target, const data::Task& task,
                               const std::vector<Eigen::Index>& centers, const CvGrid& grid, std::uint64_t seed) {
    grid.validate();
    const auto n = static_cast<int>(inputs.cols());
    if (n < grid.folds) throw std::invalid_argument("CV needs at least as many samples as folds");
    const CounterRng root(seed);
    const auto lay = detail::make_layout(inputs, target, task, centers, grid.folds, root.split(1).key());
    const auto b = static_cast<Eigen::Index>(centers.size());
    const int folds = grid.folds;

    CvResult result;
    result.sigma_med = data::median_pairwise_distance(inputs);
    const double base = result.sigma_med > 0.0 ? result.sigma_med : 1.0;

    std::vector<double> sigmas;
    for (const double s : grid.sigma_scales) sigmas.push_back(s * base);
    std::vector<double> lambdas = grid.lambdas;
    std::sort(sigmas.begin(), sigmas.end());
    sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

    // Classification output designs do not depend on sigma.
    std::vector<Eigen::MatrixXd> gy_fold;
    Eigen::MatrixXd gy_total;
    auto fold_cols = [&](const Eigen::MatrixXd& m, int k) {
        return m.middleCols(lay.fold_begin[static_cast<std::size_t>(k)], lay.fold_size[static_cast<std::size_t>(k)]);
    };
    auto build_gy = [&](const Eigen::MatrixXd& phi_y) {
        gy_fold.clear();
        gy_total = Eigen::MatrixXd::Zero(b, b);
        for (int k = 0; k < folds; ++k) {
            gy_fold.push_back(detail::gram(fold_cols(phi_y, k)));
            gy_total += gy_fold.back();
        }
    };
    Eigen::MatrixXd phi_y;
    if (task.is_classification()) {
        phi_y = lay.sq_y;
        build_gy(phi_y);
    }

    double best_score = std::numeric_limits<double>::infinity();
    double best_sigma = 0.0;
    double best_lambda = 0.0;
    bool found = false;

    for (const double sigma : sigmas) {
        const double scale = -0.5 / (sigma * sigma);
        const Eigen::MatrixXd phi_x = (lay.sq_x.array() * scale).exp().matrix();
        if (!task.is_classification()) {
            phi_y = (lay.sq_y.array() * scale).exp().matrix();
            build_gy(phi_y);
        }
        std::vector<Eigen::MatrixXd> gx_fold;
        std::vector<Eigen::VectorXd> hs_fold;
        Eigen::MatrixXd gx_total = Eigen::MatrixXd::Zero(b, b);
        Eigen::VectorXd hs_total = Eigen::VectorXd::Zero(b);
        for (int k = 0; k < folds; ++k) {
            gx_fold.push_back(detail::gram(fold_cols(phi_x, k)));
            gx_total += gx_fold.back();
            hs_fold.push_back(fold_cols(phi_x, k).cwiseProduct(fold_cols(phi_y, k)).rowwise().sum());
            hs_total += hs_fold.back();
        }
        std::vector<double> score(lambdas.size(), 0.0);
        for (int k = 0; k < folds; ++k) {
            const auto nk = static_cast<double>(lay.fold_size[static_cast<std::size_t>(k)]);
            const double ntr = static_cast<double>(n) - nk;
            const Eigen::MatrixXd h_train = (gx_total - gx_fold[k]).cwiseProduct(gy_total - gy_fold[k]) / (ntr * ntr);
            const Eigen::VectorXd hvec_train = (hs_total - hs_fold[k]) / ntr;
            const Eigen::MatrixXd h_test = gx_fold[k].cwiseProduct(gy_fold[k]) / (nk * nk);
            const Eigen::VectorXd hvec_test = hs_fold[k] / nk;
            for (std::size_t li = 0; li < lambdas.size(); ++li) {
                Eigen::VectorXd alpha;
                try {
                    alpha = ridge_solve(h_train, hvec_train, lambdas[li]);
                } catch (const SolveError&) {
                    score[li] = std::numeric_limits<double>::quiet_NaN();
                    continue;
                }
                score[li] += 0.5 * alpha.dot(h_test * alpha) - hvec_test.dot(alpha);
            }
        }
        for (std::size_t li = 0; li < lambdas.size(); ++li) {
            const double s = score[li] / folds;
            result.candidates.push_back({sigma, lambdas[li], s});
            if (!std::isfinite(s)) continue;
            // Ascending iteration over sigma and lambda: <= hands ties to the larger values.
            if (!found || s <= best_score) {
                best_score = s;
                best_sigma = sigma;
                best_lambda = lambdas[li];
                found = true;
            }
        }
    }
    if (!found) throw SolveError("LSMI model selection: every (sigma, lambda) candidate was non-finite");

    result.model.centers = centers;
    result.model.sigma = best_sigma;
    result.model.lambda = best_lambda;
    result.fit = lsmi_fit(inputs, target, task, centers, best_sigma, best_lambda);
    result.model.alpha = result.fit.alpha;
    return result;
}

/// Convenience overload: b = min(basis, n) centres drawn from `seed`.
inline CvResult lsmi_cv_select(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& target, const data::Task& task,
                               int basis, const CvGrid& grid, std::uint64_t seed) {
    const int n = static_cast<int>(inputs.cols());
    const auto centers = choose_centers(n, std::min(basis, n), CounterRng(seed).split(0).key());
    return lsmi_cv_select(inputs, target, task, centers, grid, seed);
}

/// CV-selected LSMI of a dataset restricted to `subset`.
inline double lsmi_score(const data::Dataset& d, const data::FeatureIndexSet& subset, const CvGrid& grid,
                         int basis, std::uint64_t seed) {
    const auto sub = d.restrict(subset);
    return lsmi_cv_select(sub.features(), sub.target(), sub.task(), basis, grid, seed).fit.value;
}

}  // namespace l1lsmi::measures
