#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shrinkrisk/estimators.h"
#include "shrinkrisk/model.h"
#include "shrinkrisk/risk_point.h"

namespace shrinkrisk {

/// Seed for the k-th point of a grid run under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k);

/// Estimator plus whatever fixed tuning it needs. Oracle estimators read the
/// true signal-to-noise ratio from the model.
struct EstimatorSpec {
    EstimatorId id = EstimatorId::Ols;
    /// Fixed lambda for js, ridge and ms.
    double lambda = 0.0;
    /// Baranchik constant.
    double c = 0.0;
    bool positive_part = false;
};

/// True for estimators whose A in beta_hat = A y depends on X only.
bool is_linear_in_y(EstimatorId id);

/// Applies the estimator to a dataset drawn from `spec`.
VectorXd apply_estimator(const EstimatorSpec& est, const Dataset& ds, const ModelSpec& spec);

/// (b - beta)' Sigma (b - beta) / noise_var.
double prediction_loss(const VectorXd& b, const ModelSpec& spec);

struct McOptions {
    unsigned workers = 1;
    /// Simulate (X, eps) and average losses even for linear estimators.
    bool force_naive = false;
};

/// Monte Carlo predictive risk. Linear estimators average the exact
/// conditional risk given X over design replicates; the rest average the
/// realized loss over (X, eps) draws. Replicate r uses
/// CounterRng::stream(seed, r), X drawn before eps, so results do not depend
/// on the worker count.
RiskPoint mc_risk(const ModelSpec& spec, const EstimatorSpec& est, int replicates,
                  std::uint64_t seed, const McOptions& opts = {});
RiskPoint mc_risk(const CanonicalSpec& spec, const EstimatorSpec& est, int replicates,
                  std::uint64_t seed, const McOptions& opts = {});

/// Eigenvalues of n^{-1}X'X for one standard Gaussian design.
struct SpectralSample {
    VectorXd eigenvalues;  ///< non-increasing
    int n = 0;
    int d = 0;

    /// Fraction of eigenvalues <= s.
    double ecdf(double s) const;
    /// Eigenvalues at most `tol` in absolute value.
    int zero_count(double tol = 1e-8) const;
    double mean() const;
};

SpectralSample spectral_sample(int n, int d, std::uint64_t seed);

/// sup_s |ecdf(s) - F_rho(s)|, evaluated on both sides of every jump.
double esd_sup_distance(const SpectralSample& sample, double rho);

/// A grid of experiment points. Either d_values or rho_values (with
/// n_values as base sizes) defines the dimensions.
struct ExperimentGrid {
    std::vector<int> n_values;
    std::vector<int> d_values;
    std::vector<double> rho_values;
    std::vector<double> eta2_values;
    std::vector<EstimatorSpec> estimators;
    int replicates = 4000;
    std::uint64_t master_seed = 0;
    std::optional<double> theta_lo;
    std::optional<double> theta_hi;

    /// (n, d) pairs in row-major order over n_values x (d_values | rho_values).
    std::vector<std::pair<int, int>> dimensions() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Throws std::invalid_argument (naming the estimator) if (n, d) is outside
/// the estimator's domain. Adaptive estimators need d < n, adaptive
/// James-Stein d < n - 1, Baranchik d < n and c > 0. Fixed lambdas must be
/// non-negative.
void check_estimator_domain(const EstimatorSpec& est, int n, int d);

/// mc_risk over every grid point; point k is seeded with derive_seed(master, k).
std::vector<RiskPoint> run_grid(const ExperimentGrid& grid, unsigned workers = 1);

struct AdaptiveGapRow {
    std::string pair;  ///< "ridge", "js" or "ms"
    int n = 0;
    int d = 0;
    double eta2 = 0.0;
    double adaptive_risk = 0.0;
    double adaptive_se = 0.0;
    double oracle_risk = 0.0;
    double oracle_se = 0.0;
    /// Mean paired difference adaptive - oracle on common datasets.
    double gap = 0.0;
    double gap_se = 0.0;
    /// |gap| sqrt(n) (eta2 + 1) for ridge and js; |gap| sqrt(n) for ms.
    double normalized_gap = 0.0;
    double normalized_gap_se = 0.0;
};

/// Adaptive vs oracle risk for ridge, James-Stein and marginal shrinkage at
/// d = floor(rho n), Sigma = I. Requires rho in (0, 1) and n - d > 6.
std::vector<AdaptiveGapRow> adaptive_gap_experiment(double rho, double eta2,
                                                    const std::vector<int>& n_values,
                                                    int replicates, std::uint64_t seed,
                                                    unsigned workers = 1);

enum class CovSource { TrueSigma, SampleCov, ShrunkSampleCov };
std::string_view to_token(CovSource s);

struct PluginRidgeRow {
    CovSource source = CovSource::TrueSigma;
    double risk = 0.0;
    double se = 0.0;
};

struct PluginRidgeReport {
    std::vector<PluginRidgeRow> rows;
    /// Max |b_true - adaptive_ridge| over replicates (same code path, expect 0).
    double max_dev_true_vs_adaptive_ridge = 0.0;
    /// Max |b_sample - james_stein(lam_r_hat)|: the exact ridge-to-JS reduction.
    double max_dev_sample_vs_js_same_lambda = 0.0;
    /// Max |b_sample - adaptive_james_stein|; nonzero because the adaptive
    /// James-Stein rule uses a different plug-in lambda.
    double max_dev_sample_vs_adaptive_js = 0.0;
    double adaptive_js_risk = 0.0;
    double adaptive_js_se = 0.0;
};

/// Ridge with the plug-in lambda and a covariance taken from `sources`:
/// the true Sigma, S = n^{-1}X'X, or (1 - w) S + w diag(S).
PluginRidgeReport plugin_ridge_experiment(const ModelSpec& spec,
                                          const std::vector<CovSource>& sources, int replicates,
                                          std::uint64_t seed, double shrink_weight = 0.5,
                                          unsigned workers = 1);

struct BaranchikRow {
    double c = 0.0;
    double lambda_bar = 0.0;
    double risk_baranchik = 0.0;
    double se_baranchik = 0.0;
    double risk_adaptive_js = 0.0;
    double se_adaptive_js = 0.0;
    double risk_ols = 0.0;
    double se_ols = 0.0;
    /// Paired mean of loss(Baranchik) - loss(adaptive JS).
    double gap = 0.0;
    double gap_se = 0.0;
    /// R_js(lambda_bar, d/n, eta2) - R_js(lambda_js, d/n, eta2).
    double predicted_gap = 0.0;
};

/// Baranchik vs adaptive James-Stein at d = floor(rho n), Sigma = I. Every c
/// must satisfy 0 < c < 2(d-2)/(n-d+2).
std::vector<BaranchikRow> baranchik_experiment(double rho, double eta2,
                                               const std::vector<double>& c_values, int n,
                                               int replicates, std::uint64_t seed,
                                               unsigned workers = 1);

}  // namespace shrinkrisk
