#pragma once

#include <limits>

#include "shrinkrisk/model.h"

namespace shrinkrisk {

/// A shrinkage parameter in [0, inf]. Infinity is a first-class value meaning
/// total shrinkage (the zero estimator).
class ShrinkageParam {
public:
    constexpr ShrinkageParam() = default;
    explicit ShrinkageParam(double value);

    static constexpr ShrinkageParam infinity() { return ShrinkageParam(Unchecked{}, kInf); }

    constexpr double value() const { return value_; }
    constexpr bool is_infinite() const { return value_ == kInf; }
    /// (1 + lambda)^{-1}, exactly 0 at infinity.
    constexpr double shrink_factor() const { return is_infinite() ? 0.0 : 1.0 / (1.0 + value_); }

    friend constexpr bool operator==(ShrinkageParam a, ShrinkageParam b) = default;

private:
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    struct Unchecked {};
    constexpr ShrinkageParam(Unchecked, double v) : value_(v) {}

    double value_ = 0.0;
};

/// Plug-in noise variance and signal-to-noise ratio.
struct AdaptiveState {
    double sigma2_hat = 0.0;
    double eta2_hat = 0.0;
};

/// Normal-equation statistics of a full-rank dataset with d < n. The fast
/// paths below work from these so a simulation replicate builds X'X once.
struct NormalEquations {
    static NormalEquations from(const Dataset& ds);

    MatrixXd gram;  ///< X'X, both triangles filled
    VectorXd xty;   ///< X'y
    double yty = 0.0;
    Index n = 0;
    Index d = 0;
};

/// Moore-Penrose least squares (X'X)^- X'y. Well-conditioned designs with
/// d <= n are solved through Cholesky of X'X; everything else goes through an
/// SVD of X with singular values below max(n, d) * eps * s_max set to zero.
VectorXd ols(const Dataset& ds);

/// (1 + lambda)^{-1} ols(ds).
VectorXd james_stein(const Dataset& ds, ShrinkageParam lam);

/// (X'X + n lambda Sigma)^{-1} X'y; lambda = 0 is ols, lambda = inf is 0.
VectorXd ridge(const Dataset& ds, ShrinkageParam lam, const MatrixXd& sigma);

/// n^{-1} Sigma^{-1} X'y.
VectorXd marginal(const Dataset& ds, const MatrixXd& sigma);

/// (1 + lambda)^{-1} marginal(ds, sigma).
VectorXd marginal_shrinkage(const Dataset& ds, ShrinkageParam lam, const MatrixXd& sigma);

/// sigma2_hat = RSS / (n - d), eta2_hat = max(|y|^2 / (n sigma2_hat) - 1, 0).
/// Throws std::domain_error when d >= n.
AdaptiveState estimate_snr(const Dataset& ds);

/// Second form of the signal-to-noise estimate, max(|X b|^2/(n s2) - d/n, 0).
/// Algebraically identical to estimate_snr; kept as a cross-check.
double estimate_snr_fitted_form(const Dataset& ds);

/// Plug-in tuning parameters. An estimate of zero maps to infinity.
ShrinkageParam adaptive_ridge_lambda(const AdaptiveState& st, Index n, Index d);
ShrinkageParam adaptive_js_lambda(const AdaptiveState& st, Index n, Index d);
ShrinkageParam adaptive_marginal_lambda(const AdaptiveState& st, Index n, Index d);

VectorXd adaptive_ridge(const Dataset& ds, const MatrixXd& sigma);
/// Requires d < n - 1.
VectorXd adaptive_james_stein(const Dataset& ds);
VectorXd adaptive_marginal_shrinkage(const Dataset& ds, const MatrixXd& sigma);

struct BaranchikResult {
    VectorXd coef;
    /// 1 - c RSS / |X b_ols|^2; may be negative.
    double multiplier = 1.0;
    /// c RSS / (|X b_ols|^2 - c RSS); negative or infinite when multiplier <= 0.
    double lambda_hat = 0.0;
    /// False when c, d, n fall outside 0 < c < 2(d-2)/(n-d+2), d >= 3, n-d >= 2.
    bool within_minimax_range = true;
};

/// Baranchik's data-driven James-Stein multiplier. The raw multiplier is used
/// unless `positive_part` is set, in which case it is clamped at 0. Throws
/// std::invalid_argument for c <= 0 or d >= n, std::domain_error for a zero
/// fitted vector.
BaranchikResult baranchik(const Dataset& ds, double c, bool positive_part = false);

/// Zero when d >= n - 1 or eta2 < d / (n - d - 1), else ols.
VectorXd dominating(const Dataset& ds, double eta2);

// Normal-equation overloads; these require a positive definite X'X.
VectorXd ols(const NormalEquations& ne);
VectorXd ridge(const NormalEquations& ne, ShrinkageParam lam, const MatrixXd& sigma);
AdaptiveState estimate_snr(const NormalEquations& ne);

}  // namespace shrinkrisk
