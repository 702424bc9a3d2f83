#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shrinkrisk {

enum class EstimatorId {
    Null,
    Ols,
    Marginal,
    JamesStein,
    JamesSteinOracle,
    Ridge,
    RidgeOracle,
    MarginalShrinkage,
    MarginalShrinkageOracle,
    Dominating,
    AdaptiveRidge,
    AdaptiveJamesStein,
    AdaptiveMarginalShrinkage,
    Baranchik,
};

/// Command-line / CSV token, e.g. "js-oracle".
std::string_view to_token(EstimatorId id);
/// Throws std::invalid_argument on an unknown token.
EstimatorId estimator_from_token(std::string_view token);
const std::vector<EstimatorId>& all_estimators();

enum class Provenance { Formula, MonteCarlo, MpApproximation };

std::string_view to_token(Provenance p);

/// One evaluated finite-sample risk.
struct RiskPoint {
    EstimatorId estimator = EstimatorId::Null;
    int n = 0;
    int d = 0;
    double eta2 = 0.0;
    /// Non-negative; +inf allowed.
    double risk = 0.0;
    Provenance provenance = Provenance::Formula;
    /// Set exactly when provenance is MonteCarlo.
    std::optional<double> mc_stderr;
    /// Tuning parameter the estimator used, when it has one.
    std::optional<double> lambda;
    /// Free-form flag, e.g. "singular-band" for MC runs where the true risk is infinite.
    std::string note;
};

}  // namespace shrinkrisk
