#include "shrinkrisk/risk_finite.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "shrinkrisk/parallel.h"

namespace shrinkrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dims(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
}

void require_eta2(double eta2) {
    if (!(eta2 >= 0.0) || !std::isfinite(eta2)) {
        throw std::invalid_argument("eta2 must be finite and non-negative");
    }
}

bool singular_band(int n, int d) { return d >= n - 1 && d <= n + 1; }

RiskPoint formula_point(EstimatorId id, int n, int d, double eta2, double risk) {
    RiskPoint p;
    p.estimator = id;
    p.n = n;
    p.d = d;
    p.eta2 = eta2;
    p.risk = risk;
    p.provenance = Provenance::Formula;
    return p;
}

}  // namespace

RiskPoint risk_null(int n, int d, double eta2) {
    require_dims(n, d);
    require_eta2(eta2);
    return formula_point(EstimatorId::Null, n, d, eta2, eta2);
}

RiskPoint risk_ols(int n, int d, double eta2) {
    require_dims(n, d);
    require_eta2(eta2);
    const double nn = n;
    const double dd = d;
    double r = kInf;
    if (d < n - 1) {
        r = dd / (nn - dd - 1.0);
    } else if (d > n + 1) {
        r = nn / (dd - nn - 1.0) + eta2 * (dd - nn) / dd;
    }
    return formula_point(EstimatorId::Ols, n, d, eta2, r);
}

RiskPoint risk_marginal(int n, int d, double eta2) {
    require_dims(n, d);
    require_eta2(eta2);
    // Single division keeps rational boundary cases exact.
    const double r = (static_cast<double>(d) + eta2 * static_cast<double>(d + 1)) / n;
    return formula_point(EstimatorId::Marginal, n, d, eta2, r);
}

ShrinkageParam oracle_js_lambda(int n, int d, double eta2) {
    require_dims(n, d);
    require_eta2(eta2);
    if (eta2 == 0.0 || singular_band(n, d)) return ShrinkageParam::infinity();
    const double dd = d;
    if (d < n - 1) return ShrinkageParam(dd / (eta2 * (n - dd - 1.0)));
    return ShrinkageParam(dd / (eta2 * (dd - n - 1.0)));
}

RiskPoint risk_js(int n, int d, double eta2, ShrinkageParam lam) {
    require_dims(n, d);
    require_eta2(eta2);
    const double c = lam.shrink_factor();
    const double nn = n;
    const double dd = d;
    double r;
    if (d < n - 1) {
        r = c * c * dd / (nn - dd - 1.0) + (1.0 - c) * (1.0 - c) * eta2;
    } else if (d > n + 1) {
        r = c * c * nn / (dd - nn - 1.0) + (1.0 - c) * (1.0 - c) * (nn / dd) * eta2 +
            (dd - nn) / dd * eta2;
    } else {
        r = lam.is_infinite() ? eta2 : kInf;
    }
    RiskPoint p = formula_point(EstimatorId::JamesStein, n, d, eta2, r);
    p.lambda = lam.value();
    return p;
}

RiskPoint risk_js_oracle(int n, int d, double eta2) {
    require_dims(n, d);
    require_eta2(eta2);
    const double nn = n;
    const double dd = d;
    double r;
    if (d < n - 1) {
        r = eta2 * dd / (eta2 * (nn - dd - 1.0) + dd);
    } else if (d > n + 1) {
        r = eta2 * nn / (eta2 * (dd - nn - 1.0) + dd) + eta2 * (dd - nn) / dd;
    } else {
        r = eta2;
    }
    RiskPoint p = formula_point(EstimatorId::JamesSteinOracle, n, d, eta2, r);
    p.lambda = oracle_js_lambda(n, d, eta2).value();
    return p;
}

ShrinkageParam oracle_ridge_lambda(int n, int d, double eta2) {
    require_dims(n, d);
    require_eta2(eta2);
    if (eta2 == 0.0) return ShrinkageParam::infinity();
    return ShrinkageParam(static_cast<double>(d) / (static_cast<double>(n) * eta2));
}

std::vector<RiskPoint> risk_ridge_oracle_expectation(int n, int d, const std::vector<double>& eta2s,
                                                     int replicates, std::uint64_t seed,
                                                     unsigned workers) {
    require_dims(n, d);
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    std::vector<ShrinkageParam> lams;
    for (double e : eta2s) lams.push_back(oracle_ridge_lambda(n, d, e));

    const bool any_finite = std::any_of(lams.begin(), lams.end(),
                                        [](ShrinkageParam l) { return !l.is_infinite(); });
    std::vector<std::vector<double>> traces;
    if (any_finite) {
        traces = run_indexed(static_cast<std::size_t>(replicates), workers, [&](std::size_t r) {
            CounterRng rng = CounterRng::stream(seed, r);
            const VectorXd s = gram_eigenvalues(standard_normal_matrix(n, d, rng));
            std::vector<double> out(lams.size(), 0.0);
            for (std::size_t k = 0; k < lams.size(); ++k) {
                if (lams[k].is_infinite()) continue;
                double acc = 0.0;
                for (Index j = 0; j < s.size(); ++j) acc += 1.0 / (s(j) + lams[k].value());
                out[k] = acc / n;
            }
            return out;
        });
    }

    std::vector<RiskPoint> points;
    for (std::size_t k = 0; k < lams.size(); ++k) {
        RiskPoint p;
        p.estimator = EstimatorId::RidgeOracle;
        p.n = n;
        p.d = d;
        p.eta2 = eta2s[k];
        p.provenance = Provenance::MonteCarlo;
        p.lambda = lams[k].value();
        if (lams[k].is_infinite()) {
            p.risk = 0.0;
            p.mc_stderr = 0.0;
        } else {
            std::vector<double> column(traces.size());
            for (std::size_t r = 0; r < traces.size(); ++r) column[r] = traces[r][k];
            const MeanEstimate est = summarize(column);
            p.risk = est.mean;
            p.mc_stderr = est.std_error;
        }
        points.push_back(std::move(p));
    }
    return points;
}

RiskPoint risk_ridge_oracle_expectation(int n, int d, double eta2, int replicates,
                                        std::uint64_t seed, unsigned workers) {
    require_eta2(eta2);
    return risk_ridge_oracle_expectation(n, d, std::vector<double>{eta2}, replicates, seed,
                                         workers)
        .front();
}

ShrinkageParam oracle_marginal_lambda(int n, int d, double eta2) {
    require_dims(n, d);
    require_eta2(eta2);
    if (eta2 == 0.0) return ShrinkageParam::infinity();
    const double nn = n;
    return ShrinkageParam(d / (nn * eta2) + (d + 1.0) / nn);
}

std::pair<ShrinkageParam, RiskPoint> risk_marginal_shrinkage_oracle(int n, int d, double eta2) {
    const ShrinkageParam lam = oracle_marginal_lambda(n, d, eta2);
    const double dd = d;
    const double r = eta2 == 0.0
                         ? 0.0
                         : eta2 * (eta2 * (dd + 1.0) + dd) / (eta2 * (n + dd + 1.0) + dd);
    RiskPoint p = formula_point(EstimatorId::MarginalShrinkageOracle, n, d, eta2, r);
    p.lambda = lam.value();
    return {lam, p};
}

RiskPoint risk_dominating(int n, int d, double eta2) {
    require_dims(n, d);
    require_eta2(eta2);
    double r = eta2;
    if (d < n - 1) {
        const double threshold = static_cast<double>(d) / (n - d - 1.0);
        if (eta2 >= threshold) r = threshold;
    }
    return formula_point(EstimatorId::Dominating, n, d, eta2, r);
}

double conditional_risk_linear(const MatrixXd& a, const MatrixXd& x, const VectorXd& beta,
                               const MatrixXd& sigma, double noise_var) {
    const Index d = x.cols();
    if (a.rows() != d || a.cols() != x.rows() || beta.size() != d || sigma.rows() != d ||
        sigma.cols() != d) {
        throw std::invalid_argument("conditional_risk_linear: dimension mismatch");
    }
    if (!(noise_var > 0.0)) throw std::invalid_argument("noise_var must be positive");
    const VectorXd bias = a * (x * beta) - beta;
    const double bias_term = bias.dot(sigma * bias) / noise_var;
    // tr(Sigma A A') = sum of squares of L' A with Sigma = L L'.
    Eigen::LLT<MatrixXd> llt(sigma);
    const MatrixXd la = llt.matrixU() * a;
    return bias_term + la.squaredNorm();
}

double conditional_risk_gram(const MatrixXd& m, const MatrixXd& gram, const VectorXd& beta,
                             const MatrixXd& sigma, double noise_var) {
    const Index d = gram.rows();
    if (m.rows() != d || m.cols() != d || gram.cols() != d || beta.size() != d ||
        sigma.rows() != d || sigma.cols() != d) {
        throw std::invalid_argument("conditional_risk_gram: dimension mismatch");
    }
    if (!(noise_var > 0.0)) throw std::invalid_argument("noise_var must be positive");
    const VectorXd bias = m * (gram * beta) - beta;
    const double bias_term = bias.dot(sigma * bias) / noise_var;
    const double var_term = (sigma * m * gram).cwiseProduct(m).sum();  // tr(Sigma M G M')
    return bias_term + var_term;
}

bool DominanceReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const DominanceCheck& c) { return c.passed; });
}

DominanceReport check_dominance(int n, int d, double eta2, const RiskPoint& ridge_oracle,
                                double ridge_margin) {
    require_dims(n, d);
    require_eta2(eta2);
    DominanceReport rep;
    rep.n = n;
    rep.d = d;
    rep.eta2 = eta2;

    const double r_ridge = ridge_oracle.risk;
    const double r_js = risk_js_oracle(n, d, eta2).risk;
    const double r_ols = risk_ols(n, d, eta2).risk;
    const double r_m = risk_marginal(n, d, eta2).risk;
    const double r_null = risk_null(n, d, eta2).risk;
    const double r_dom = risk_dominating(n, d, eta2).risk;

    auto add = [&](std::string name, std::string relation, double lhs, double rhs, bool ok) {
        rep.checks.push_back({std::move(name), std::move(relation), lhs, rhs, ok});
    };
    add("ridge-oracle <= js-oracle", "<=", r_ridge, r_js, r_ridge <= r_js * (1.0 + ridge_margin));
    add("js-oracle < ols", "<", r_js, r_ols, r_js < r_ols);
    add("js-oracle < marginal", "<", r_js, r_m, r_js < r_m);
    add("js-oracle <= null", "<=", r_js, r_null, r_js <= r_null);
    add("dominating <= marginal", "<=", r_dom, r_m, r_dom <= r_m);
    if (d < n - 1) {
        const double threshold = static_cast<double>(d) / (n - d - 1.0);
        const bool m_le_ols = r_m <= r_ols;
        const bool eta_le = eta2 <= threshold;
        const bool null_le_m = r_null <= r_m;
        add("marginal<=ols iff eta2<=d/(n-d-1) iff null<=marginal", "iff", r_m, r_ols,
            m_le_ols == eta_le && eta_le == null_le_m);
    } else {
        add("null <= marginal", "<=", r_null, r_m, r_null <= r_m);
    }
    return rep;
}

DominanceReport check_dominance(int n, int d, double eta2, const DominanceOptions& opts) {
    const RiskPoint ridge =
        risk_ridge_oracle_expectation(n, d, eta2, opts.ridge_replicates, opts.seed, opts.workers);
    return check_dominance(n, d, eta2, ridge, opts.ridge_margin);
}

}  // namespace shrinkrisk
