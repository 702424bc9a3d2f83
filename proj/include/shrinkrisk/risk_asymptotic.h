#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "shrinkrisk/risk_point.h"

namespace shrinkrisk {

/// Marcenko-Pastur law with aspect ratio rho: support [a, b] plus an atom at
/// zero of mass max(1 - 1/rho, 0).
struct MPParams {
    explicit MPParams(double rho);

    double rho;
    double support_lo;
    double support_hi;
    double mass_at_zero;
};

/// Continuous part of the density; zero outside [a, b] and at z = 0.
double mp_density(double rho, double z);

/// Distribution function, atom included. The continuous part is integrated
/// by Gauss-Kronrod after z = rho + 1 + 2 sqrt(rho) sin(theta), which removes
/// the square-root edge behaviour.
double mp_cdf(double rho, double z);

/// Stieltjes transform m_rho(s) = int (z - s)^{-1} dF_rho(z) for s < 0, in
/// closed form. Throws std::invalid_argument for s >= 0.
double mp_stieltjes(double rho, double s);

struct AsymptoticRiskPoint {
    EstimatorId estimator = EstimatorId::Null;
    double rho = 0.0;
    double eta2 = 0.0;
    double risk = 0.0;
};

AsymptoticRiskPoint risk_ridge_asymptotic(double rho, double eta2);
AsymptoticRiskPoint risk_ols_asymptotic(double rho, double eta2);
AsymptoticRiskPoint risk_js_oracle_asymptotic(double rho, double eta2);
AsymptoticRiskPoint risk_marginal_asymptotic(double rho, double eta2);
AsymptoticRiskPoint risk_marginal_shrinkage_asymptotic(double rho, double eta2);
AsymptoticRiskPoint risk_dominating_asymptotic(double rho, double eta2);

/// Limit risk of (1+lam)^{-1} ols for rho in (0, 1):
/// (lam^2 eta2 + rho/(1-rho)) / (1+lam)^2.
double risk_js_lambda_asymptotic(double lam, double rho, double eta2);

/// Limit of Baranchik's data-driven lambda: c(1-rho) / (eta2 + rho - c(1-rho)).
/// Throws std::domain_error if the denominator is not positive.
double lambda_bar(double c, double rho, double eta2);

/// rho / (eta2 (1 - rho)).
double lambda_js_limit(double rho, double eta2);

/// The Baranchik constant whose limiting lambda equals lambda_js_limit.
double optimal_baranchik_c(double rho, double eta2);

/// (d/n) m_{d/n}(-lam*) with lam* = d/(n eta2): the random-matrix
/// approximation of the oracle ridge risk at finite (n, d).
RiskPoint risk_ridge_mp_approximation(int n, int d, double eta2);

struct FigureRow {
    std::string figure_id;
    AsymptoticRiskPoint point;
};

/// Valid ids: "1a", "1b", "2", "3".
const std::vector<std::string>& figure_ids();

/// Curve data behind a figure, `resolution` points per curve.
///   1a: ols and marginal vs rho, eta2 in {0.5, 1, 2.5, 5}
///   1b: marginal and dominating vs rho at eta2 = 2.5
///   2:  ridge, js, ms oracles and ols vs rho at eta2 in {1, 5, 10}
///   3:  the same four vs eta2 in [0, 20] at rho in {0.25, 0.75, 2}
/// The rho axis spans [0.02, 3] and always contains rho = 1.
std::vector<FigureRow> figure_grid(std::string_view figure_id, int resolution = 200);

}  // namespace shrinkrisk
