#include "shrinkrisk/risk_point.h"

#include <array>
#include <stdexcept>
#include <utility>

namespace shrinkrisk {

namespace {

constexpr std::array<std::pair<EstimatorId, std::string_view>, 14> kTokens{{
    {EstimatorId::Null, "null"},
    {EstimatorId::Ols, "ols"},
    {EstimatorId::Marginal, "marginal"},
    {EstimatorId::JamesStein, "js"},
    {EstimatorId::JamesSteinOracle, "js-oracle"},
    {EstimatorId::Ridge, "ridge"},
    {EstimatorId::RidgeOracle, "ridge-oracle"},
    {EstimatorId::MarginalShrinkage, "ms"},
    {EstimatorId::MarginalShrinkageOracle, "ms-oracle"},
    {EstimatorId::Dominating, "dominating"},
    {EstimatorId::AdaptiveRidge, "adaptive-ridge"},
    {EstimatorId::AdaptiveJamesStein, "adaptive-js"},
    {EstimatorId::AdaptiveMarginalShrinkage, "adaptive-ms"},
    {EstimatorId::Baranchik, "baranchik"},
}};

}  // namespace

std::string_view to_token(EstimatorId id) {
    for (const auto& [key, token] : kTokens) {
        if (key == id) return token;
    }
    return "unknown";
}

EstimatorId estimator_from_token(std::string_view token) {
    for (const auto& [key, name] : kTokens) {
        if (name == token) return key;
    }
    std::string valid;
    for (const auto& [key, name] : kTokens) {
        if (!valid.empty()) valid += ", ";
        valid += name;
    }
    throw std::invalid_argument("unknown estimator '" + std::string(token) + "' (valid: " + valid + ")");
}

const std::vector<EstimatorId>& all_estimators() {
    static const std::vector<EstimatorId> ids = [] {
        std::vector<EstimatorId> v;
        for (const auto& entry : kTokens) v.push_back(entry.first);
        return v;
    }();
    return ids;
}

std::string_view to_token(Provenance p) {
    switch (p) {
        case Provenance::Formula: return "formula";
        case Provenance::MonteCarlo: return "monte-carlo";
        case Provenance::MpApproximation: return "mp-approximation";
    }
    return "unknown";
}

}  // namespace shrinkrisk
