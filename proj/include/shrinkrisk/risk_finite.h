#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shrinkrisk/estimators.h"
#include "shrinkrisk/model.h"
#include "shrinkrisk/risk_point.h"

namespace shrinkrisk {

// Exact finite-sample predictive risks, standardized by the noise variance.
// Every function here depends on the model only through (n, d, eta2).

RiskPoint risk_null(int n, int d, double eta2);

/// d/(n-d-1) for d < n-1; n/(d-n-1) + eta2 (d-n)/d for d > n+1; inf in between.
RiskPoint risk_ols(int n, int d, double eta2);

/// d/n + eta2 (d+1)/n.
RiskPoint risk_marginal(int n, int d, double eta2);

/// Risk-minimizing James-Stein parameter; inf when eta2 = 0 or d is within one of n.
ShrinkageParam oracle_js_lambda(int n, int d, double eta2);

/// Risk of (1+lam)^{-1} ols at a fixed lam in [0, inf].
RiskPoint risk_js(int n, int d, double eta2, ShrinkageParam lam);

/// Closed-form minimum over lam of risk_js, with the oracle lambda attached.
RiskPoint risk_js_oracle(int n, int d, double eta2);

/// d / (n eta2); inf when eta2 = 0.
ShrinkageParam oracle_ridge_lambda(int n, int d, double eta2);

/// Monte Carlo estimate of E tr(X'X + n lam* I)^{-1} over standard Gaussian
/// designs, evaluated from the eigenvalues of n^{-1}X'X. Replicate r uses
/// CounterRng::stream(seed, r).
RiskPoint risk_ridge_oracle_expectation(int n, int d, double eta2, int replicates,
                                        std::uint64_t seed, unsigned workers = 1);

/// Same estimate for several eta2 values sharing one set of sampled spectra.
std::vector<RiskPoint> risk_ridge_oracle_expectation(int n, int d, const std::vector<double>& eta2s,
                                                     int replicates, std::uint64_t seed,
                                                     unsigned workers = 1);

/// d/(n eta2) + (d+1)/n; inf when eta2 = 0.
ShrinkageParam oracle_marginal_lambda(int n, int d, double eta2);

/// Oracle marginal-shrinkage parameter and its risk
/// eta2 (eta2 (d+1) + d) / (eta2 (n+d+1) + d).
std::pair<ShrinkageParam, RiskPoint> risk_marginal_shrinkage_oracle(int n, int d, double eta2);

/// Risk of the oracle estimator that is 0 or ols depending on eta2 and d.
RiskPoint risk_dominating(int n, int d, double eta2);

/// Exact risk of beta_hat = A y conditional on X:
///   noise_var^{-1} beta'(AX - I)' Sigma (AX - I) beta + tr(Sigma A A').
/// A is d x n, X is n x d.
double conditional_risk_linear(const MatrixXd& a, const MatrixXd& x, const VectorXd& beta,
                               const MatrixXd& sigma, double noise_var);

/// Same quantity for A = M X', computed from M (d x d) and G = X'X without
/// touching the n-dimensional side.
double conditional_risk_gram(const MatrixXd& m, const MatrixXd& gram, const VectorXd& beta,
                             const MatrixXd& sigma, double noise_var);

struct DominanceCheck {
    std::string name;
    std::string relation;
    double lhs = 0.0;
    double rhs = 0.0;
    bool passed = false;
};

struct DominanceReport {
    int n = 0;
    int d = 0;
    double eta2 = 0.0;
    std::vector<DominanceCheck> checks;

    bool all_passed() const;
};

struct DominanceOptions {
    int ridge_replicates = 4000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    /// Relative slack allowed on ridge <= js for the Monte Carlo ridge risk.
    double ridge_margin = 0.01;
};

/// Checks ridge* <= js* < ols, marginal; js* <= null; dominating <= marginal;
/// and the three-way equivalence between marginal <= ols, eta2 <= d/(n-d-1)
/// and null <= marginal (d < n-1), or null <= marginal (d >= n-1).
DominanceReport check_dominance(int n, int d, double eta2, const DominanceOptions& opts = {});

/// Variant taking an already computed oracle-ridge risk.
DominanceReport check_dominance(int n, int d, double eta2, const RiskPoint& ridge_oracle,
                                double ridge_margin);

}  // namespace shrinkrisk
