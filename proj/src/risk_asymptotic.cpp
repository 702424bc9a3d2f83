#include "shrinkrisk/risk_asymptotic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace shrinkrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_rho(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be positive and finite");
}

void require_eta2(double eta2) {
    if (!(eta2 >= 0.0) || !std::isfinite(eta2)) {
        throw std::invalid_argument("eta2 must be finite and non-negative");
    }
}

void require_unit_interval(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
}

/// x + sqrt(x^2 + q) for q >= 0 without cancellation when x < 0.
double add_root(double x, double q) {
    const double root = std::sqrt(x * x + q);
    return x >= 0.0 ? x + root : q / (root - x);
}

/// Mass of the continuous part on [a, min(z, b)].
double mp_continuous_mass(double rho, double z) {
    const double sr = std::sqrt(rho);
    const double a = (1.0 - sr) * (1.0 - sr);
    const double u = std::clamp((z - rho - 1.0) / (2.0 * sr), -1.0, 1.0);
    const double hi = std::asin(u);
    const double lo = -std::numbers::pi / 2.0;
    if (hi <= lo) return 0.0;
    auto integrand = [&](double theta) {
        const double c = std::cos(theta);
        const double half = std::sin(theta / 2.0 + std::numbers::pi / 4.0);
        const double zz = a + 4.0 * sr * half * half;  // rho + 1 + 2 sqrt(rho) sin(theta)
        if (zz <= 0.0) return 0.0;
        return 2.0 * c * c / (std::numbers::pi * zz);
    };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 15,
                                                                         1e-13, &err);
}

AsymptoticRiskPoint point(EstimatorId id, double rho, double eta2, double risk) {
    return AsymptoticRiskPoint{id, rho, eta2, risk};
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        v[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
    }
    return v;
}

std::vector<double> rho_axis(int resolution) {
    std::vector<double> v = linspace(0.02, 3.0, resolution);
    if (std::find(v.begin(), v.end(), 1.0) == v.end()) {
        v.push_back(1.0);
        std::sort(v.begin(), v.end());
    }
    return v;
}

}  // namespace

MPParams::MPParams(double rho_) : rho(rho_) {
    require_rho(rho);
    const double sr = std::sqrt(rho);
    support_lo = (1.0 - sr) * (1.0 - sr);
    support_hi = (1.0 + sr) * (1.0 + sr);
    mass_at_zero = std::max(1.0 - 1.0 / rho, 0.0);
}

double mp_density(double rho, double z) {
    const MPParams mp(rho);
    if (z <= 0.0 || z < mp.support_lo || z > mp.support_hi) return 0.0;
    const double t = z - rho - 1.0;
    const double disc = std::max(4.0 * rho - t * t, 0.0);
    return std::sqrt(disc) / (2.0 * std::numbers::pi * rho * z);
}

double mp_cdf(double rho, double z) {
    const MPParams mp(rho);
    if (z < 0.0) return 0.0;
    if (z < mp.support_lo) return mp.mass_at_zero;
    return mp.mass_at_zero + mp_continuous_mass(rho, std::min(z, mp.support_hi));
}

double mp_stieltjes(double rho, double s) {
    require_rho(rho);
    if (!(s < 0.0)) throw std::invalid_argument("Stieltjes transform is evaluated at s < 0");
    const double x = s + rho - 1.0;
    const double root = std::sqrt(x * x - 4.0 * rho * s);
    if (x >= 0.0) return -(x + root) / (2.0 * rho * s);
    return 2.0 / (root - x);
}

AsymptoticRiskPoint risk_ridge_asymptotic(double rho, double eta2) {
    require_rho(rho);
    require_eta2(eta2);
    const double x = eta2 * (rho - 1.0) - rho;
    const double r = add_root(x, 4.0 * rho * rho * eta2) / (2.0 * rho);
    return point(EstimatorId::RidgeOracle, rho, eta2, r);
}

AsymptoticRiskPoint risk_ols_asymptotic(double rho, double eta2) {
    require_rho(rho);
    require_eta2(eta2);
    double r = kInf;
    if (rho < 1.0) {
        r = rho / (1.0 - rho);
    } else if (rho > 1.0) {
        r = 1.0 / (rho - 1.0) + eta2 * (rho - 1.0) / rho;
    }
    return point(EstimatorId::Ols, rho, eta2, r);
}

AsymptoticRiskPoint risk_js_oracle_asymptotic(double rho, double eta2) {
    require_rho(rho);
    require_eta2(eta2);
    const double r = eta2 * std::min(rho, 1.0) / (eta2 * std::abs(1.0 - rho) + rho) +
                     eta2 * (std::max(rho, 1.0) - 1.0) / rho;
    return point(EstimatorId::JamesSteinOracle, rho, eta2, r);
}

AsymptoticRiskPoint risk_marginal_asymptotic(double rho, double eta2) {
    require_rho(rho);
    require_eta2(eta2);
    return point(EstimatorId::Marginal, rho, eta2, (eta2 + 1.0) * rho);
}

AsymptoticRiskPoint risk_marginal_shrinkage_asymptotic(double rho, double eta2) {
    require_rho(rho);
    require_eta2(eta2);
    const double r = eta2 * (eta2 + 1.0) * rho / (eta2 * (1.0 + rho) + rho);
    return point(EstimatorId::MarginalShrinkageOracle, rho, eta2, r);
}

AsymptoticRiskPoint risk_dominating_asymptotic(double rho, double eta2) {
    require_rho(rho);
    require_eta2(eta2);
    double r = eta2;
    if (rho < 1.0) {
        const double ols = rho / (1.0 - rho);
        if (ols < eta2) r = ols;
    }
    return point(EstimatorId::Dominating, rho, eta2, r);
}

double risk_js_lambda_asymptotic(double lam, double rho, double eta2) {
    require_unit_interval(rho);
    require_eta2(eta2);
    if (!(lam >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    if (std::isinf(lam)) return eta2;
    return (lam * lam * eta2 + rho / (1.0 - rho)) / ((1.0 + lam) * (1.0 + lam));
}

double lambda_bar(double c, double rho, double eta2) {
    require_unit_interval(rho);
    require_eta2(eta2);
    // Extended precision so the equality case c = c* rounds to lambda_js exactly.
    const long double num = static_cast<long double>(c) * (1.0L - rho);
    const long double denom = static_cast<long double>(eta2) + rho - num;
    if (!(denom > 0.0L)) {
        throw std::domain_error("lambda_bar: c is too large for this (rho, eta2)");
    }
    return static_cast<double>(num / denom);
}

double lambda_js_limit(double rho, double eta2) {
    require_unit_interval(rho);
    require_eta2(eta2);
    if (eta2 == 0.0) return kInf;
    return rho / (eta2 * (1.0 - rho));
}

double optimal_baranchik_c(double rho, double eta2) {
    require_unit_interval(rho);
    require_eta2(eta2);
    return (eta2 * rho + rho * rho) / (eta2 * (1.0 - rho) * (1.0 - rho) + rho * (1.0 - rho));
}

RiskPoint risk_ridge_mp_approximation(int n, int d, double eta2) {
    if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
    require_eta2(eta2);
    RiskPoint p;
    p.estimator = EstimatorId::RidgeOracle;
    p.n = n;
    p.d = d;
    p.eta2 = eta2;
    p.provenance = Provenance::MpApproximation;
    const double rho = static_cast<double>(d) / n;
    if (eta2 == 0.0) {
        p.risk = 0.0;
        p.lambda = kInf;
        return p;
    }
    const double lam = rho / eta2;
    p.lambda = lam;
    p.risk = rho * mp_stieltjes(rho, -lam);
    return p;
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"1a", "1b", "2", "3"};
    return ids;
}

std::vector<FigureRow> figure_grid(std::string_view figure_id, int resolution) {
    if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
    std::vector<FigureRow> rows;
    const std::string id(figure_id);
    auto emit = [&](const AsymptoticRiskPoint& p) { rows.push_back({id, p}); };

    if (figure_id == "1a") {
        for (double eta2 : {0.5, 1.0, 2.5, 5.0}) {
            for (double rho : rho_axis(resolution)) emit(risk_ols_asymptotic(rho, eta2));
            for (double rho : rho_axis(resolution)) emit(risk_marginal_asymptotic(rho, eta2));
        }
    } else if (figure_id == "1b") {
        for (double rho : rho_axis(resolution)) emit(risk_marginal_asymptotic(rho, 2.5));
        for (double rho : rho_axis(resolution)) emit(risk_dominating_asymptotic(rho, 2.5));
    } else if (figure_id == "2") {
        for (double eta2 : {1.0, 5.0, 10.0}) {
            const auto axis = rho_axis(resolution);
            for (double rho : axis) emit(risk_ridge_asymptotic(rho, eta2));
            for (double rho : axis) emit(risk_js_oracle_asymptotic(rho, eta2));
            for (double rho : axis) emit(risk_marginal_shrinkage_asymptotic(rho, eta2));
            for (double rho : axis) emit(risk_ols_asymptotic(rho, eta2));
        }
    } else if (figure_id == "3") {
        for (double rho : {0.25, 0.75, 2.0}) {
            const auto axis = linspace(0.0, 20.0, resolution);
            for (double eta2 : axis) emit(risk_ridge_asymptotic(rho, eta2));
            for (double eta2 : axis) emit(risk_js_oracle_asymptotic(rho, eta2));
            for (double eta2 : axis) emit(risk_marginal_shrinkage_asymptotic(rho, eta2));
            for (double eta2 : axis) emit(risk_ols_asymptotic(rho, eta2));
        }
    } else {
        throw std::invalid_argument("unknown figure id '" + id + "' (valid: 1a, 1b, 2, 3)");
    }
    return rows;
}

}  // namespace shrinkrisk
