#include "shrinkrisk/simulation.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "shrinkrisk/parallel.h"
#include "shrinkrisk/risk_asymptotic.h"
#include "shrinkrisk/risk_finite.h"

namespace shrinkrisk {

namespace {

constexpr double kGramRcondFloor = 1e-10;

std::string where(int n, int d) {
    return " (n = " + std::to_string(n) + ", d = " + std::to_string(d) + ")";
}

MatrixXd full_gram(const MatrixXd& x) {
    MatrixXd g = MatrixXd::Zero(x.cols(), x.cols());
    g.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
    return g;
}

MatrixXd pseudo_inverse(const MatrixXd& x) {
    Eigen::BDCSVD<MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    MatrixXd pinv = MatrixXd::Zero(x.cols(), x.rows());
    if (s.size() == 0 || s(0) == 0.0) return pinv;
    const double cutoff = static_cast<double>(std::max(x.rows(), x.cols())) *
                          std::numeric_limits<double>::epsilon() * s(0);
    for (Index k = 0; k < s.size(); ++k) {
        if (s(k) > cutoff) {
            pinv.noalias() += (svd.matrixV().col(k) / s(k)) * svd.matrixU().col(k).transpose();
        }
    }
    return pinv;
}

/// beta_hat = M X'y (gram form) or beta_hat = A y (general form).
struct LinearMap {
    bool gram_form = true;
    MatrixXd matrix;
};

/// OLS as a linear map: (X'X)^{-1} when well conditioned, else X^+.
LinearMap ols_map(const MatrixXd& x, const MatrixXd& gram) {
    if (x.cols() <= x.rows()) {
        Eigen::LLT<MatrixXd> llt(gram);
        if (llt.info() == Eigen::Success && llt.rcond() > kGramRcondFloor) {
            return {true, llt.solve(MatrixXd::Identity(gram.rows(), gram.cols()))};
        }
    }
    return {false, pseudo_inverse(x)};
}

LinearMap scaled(LinearMap map, double factor) {
    map.matrix *= factor;
    return map;
}

LinearMap zero_map(Index d) { return {true, MatrixXd::Zero(d, d)}; }

LinearMap marginal_map(const MatrixXd& sigma, Index n, double factor) {
    Eigen::LLT<MatrixXd> llt(sigma);
    const Index d = sigma.rows();
    return {true, llt.solve(MatrixXd::Identity(d, d)) * (factor / static_cast<double>(n))};
}

LinearMap ridge_map(const MatrixXd& x, const MatrixXd& gram, const MatrixXd& sigma, Index n,
                    ShrinkageParam lam) {
    if (lam.is_infinite()) return zero_map(gram.rows());
    if (lam.value() == 0.0) return ols_map(x, gram);
    Eigen::LLT<MatrixXd> llt(gram + (static_cast<double>(n) * lam.value()) * sigma);
    if (llt.info() != Eigen::Success) throw std::runtime_error("ridge system factorization failed");
    return {true, llt.solve(MatrixXd::Identity(gram.rows(), gram.cols()))};
}

LinearMap linear_map(const EstimatorSpec& est, const MatrixXd& x, const MatrixXd& gram,
                     const ModelSpec& spec, double eta2) {
    const int n = static_cast<int>(spec.n());
    const int d = static_cast<int>(spec.d());
    switch (est.id) {
        case EstimatorId::Null: return zero_map(d);
        case EstimatorId::Ols: return ols_map(x, gram);
        case EstimatorId::JamesStein: {
            const ShrinkageParam lam(est.lambda);
            return lam.is_infinite() ? zero_map(d) : scaled(ols_map(x, gram), lam.shrink_factor());
        }
        case EstimatorId::JamesSteinOracle: {
            const ShrinkageParam lam = oracle_js_lambda(n, d, eta2);
            return lam.is_infinite() ? zero_map(d) : scaled(ols_map(x, gram), lam.shrink_factor());
        }
        case EstimatorId::Ridge:
            return ridge_map(x, gram, spec.sigma(), n, ShrinkageParam(est.lambda));
        case EstimatorId::RidgeOracle:
            return ridge_map(x, gram, spec.sigma(), n, oracle_ridge_lambda(n, d, eta2));
        case EstimatorId::Marginal: return marginal_map(spec.sigma(), n, 1.0);
        case EstimatorId::MarginalShrinkage: {
            const ShrinkageParam lam(est.lambda);
            return marginal_map(spec.sigma(), n, lam.shrink_factor());
        }
        case EstimatorId::MarginalShrinkageOracle:
            return marginal_map(spec.sigma(), n, oracle_marginal_lambda(n, d, eta2).shrink_factor());
        case EstimatorId::Dominating:
            if (d >= n - 1 || eta2 < static_cast<double>(d) / (n - d - 1.0)) return zero_map(d);
            return ols_map(x, gram);
        default: break;
    }
    throw std::logic_error("estimator is not linear in y");
}

std::optional<double> lambda_used(const EstimatorSpec& est, int n, int d, double eta2) {
    switch (est.id) {
        case EstimatorId::JamesStein:
        case EstimatorId::Ridge:
        case EstimatorId::MarginalShrinkage: return est.lambda;
        case EstimatorId::JamesSteinOracle: return oracle_js_lambda(n, d, eta2).value();
        case EstimatorId::RidgeOracle: return oracle_ridge_lambda(n, d, eta2).value();
        case EstimatorId::MarginalShrinkageOracle: return oracle_marginal_lambda(n, d, eta2).value();
        default: return std::nullopt;
    }
}

bool has_infinite_risk(const EstimatorSpec& est, int n, int d) {
    if (d < n - 1 || d > n + 1) return false;
    switch (est.id) {
        case EstimatorId::Ols: return true;
        case EstimatorId::JamesStein: return !ShrinkageParam(est.lambda).is_infinite();
        case EstimatorId::Ridge: return est.lambda == 0.0;
        default: return false;
    }
}

MeanEstimate column_summary(const std::vector<std::vector<double>>& rows, std::size_t k) {
    std::vector<double> col(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) col[r] = rows[r][k];
    return summarize(col);
}

MeanEstimate difference_summary(const std::vector<std::vector<double>>& rows, std::size_t a,
                                std::size_t b) {
    std::vector<double> col(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) col[r] = rows[r][a] - rows[r][b];
    return summarize(col);
}

int floor_dimension(double rho, int n) {
    return static_cast<int>(std::floor(rho * n + 1e-9));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
    CounterRng rng = CounterRng::stream(master, k);
    return rng();
}

bool is_linear_in_y(EstimatorId id) {
    switch (id) {
        case EstimatorId::AdaptiveRidge:
        case EstimatorId::AdaptiveJamesStein:
        case EstimatorId::AdaptiveMarginalShrinkage:
        case EstimatorId::Baranchik: return false;
        default: return true;
    }
}

namespace {

VectorXd apply_estimator(const EstimatorSpec& est, const Dataset& ds, const ModelSpec& spec,
                         double eta2) {
    const int n = static_cast<int>(ds.n());
    const int d = static_cast<int>(ds.d());
    const MatrixXd& sigma = spec.sigma();
    switch (est.id) {
        case EstimatorId::Null: return VectorXd::Zero(d);
        case EstimatorId::Ols: return ols(ds);
        case EstimatorId::Marginal: return marginal(ds, sigma);
        case EstimatorId::JamesStein: return james_stein(ds, ShrinkageParam(est.lambda));
        case EstimatorId::JamesSteinOracle: return james_stein(ds, oracle_js_lambda(n, d, eta2));
        case EstimatorId::Ridge: return ridge(ds, ShrinkageParam(est.lambda), sigma);
        case EstimatorId::RidgeOracle: return ridge(ds, oracle_ridge_lambda(n, d, eta2), sigma);
        case EstimatorId::MarginalShrinkage:
            return marginal_shrinkage(ds, ShrinkageParam(est.lambda), sigma);
        case EstimatorId::MarginalShrinkageOracle:
            return marginal_shrinkage(ds, oracle_marginal_lambda(n, d, eta2), sigma);
        case EstimatorId::Dominating: return dominating(ds, eta2);
        case EstimatorId::AdaptiveRidge: return adaptive_ridge(ds, sigma);
        case EstimatorId::AdaptiveJamesStein: return adaptive_james_stein(ds);
        case EstimatorId::AdaptiveMarginalShrinkage: return adaptive_marginal_shrinkage(ds, sigma);
        case EstimatorId::Baranchik: return baranchik(ds, est.c, est.positive_part).coef;
    }
    throw std::logic_error("unhandled estimator");
}

RiskPoint mc_risk_at(const ModelSpec& spec, double eta2, const EstimatorSpec& est, int replicates,
                     std::uint64_t seed, const McOptions& opts) {
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    const int n = static_cast<int>(spec.n());
    const int d = static_cast<int>(spec.d());
    check_estimator_domain(est, n, d);
    const bool rao_blackwell = is_linear_in_y(est.id) && !opts.force_naive;

    const std::vector<double> values =
        run_indexed(static_cast<std::size_t>(replicates), opts.workers, [&](std::size_t r) {
            CounterRng rng = CounterRng::stream(seed, r);
            const Dataset ds = generate_dataset(spec, rng);
            if (!rao_blackwell) return prediction_loss(apply_estimator(est, ds, spec, eta2), spec);
            const MatrixXd gram = full_gram(ds.x);
            const LinearMap map = linear_map(est, ds.x, gram, spec, eta2);
            if (map.gram_form) {
                return conditional_risk_gram(map.matrix, gram, spec.beta(), spec.sigma(),
                                             spec.noise_var());
            }
            return conditional_risk_linear(map.matrix, ds.x, spec.beta(), spec.sigma(),
                                           spec.noise_var());
        });

    const MeanEstimate est_mean = summarize(values);
    RiskPoint p;
    p.estimator = est.id;
    p.n = n;
    p.d = d;
    p.eta2 = eta2;
    p.risk = est_mean.mean;
    p.provenance = Provenance::MonteCarlo;
    p.mc_stderr = est_mean.std_error;
    p.lambda = lambda_used(est, n, d, eta2);
    if (has_infinite_risk(est, n, d)) p.note = "singular-band";
    return p;
}

}  // namespace

VectorXd apply_estimator(const EstimatorSpec& est, const Dataset& ds, const ModelSpec& spec) {
    return apply_estimator(est, ds, spec, snr(spec));
}

double prediction_loss(const VectorXd& b, const ModelSpec& spec) {
    const VectorXd diff = b - spec.beta();
    return diff.dot(spec.sigma() * diff) / spec.noise_var();
}

RiskPoint mc_risk(const ModelSpec& spec, const EstimatorSpec& est, int replicates,
                  std::uint64_t seed, const McOptions& opts) {
    return mc_risk_at(spec, snr(spec), est, replicates, seed, opts);
}

RiskPoint mc_risk(const CanonicalSpec& spec, const EstimatorSpec& est, int replicates,
                  std::uint64_t seed, const McOptions& opts) {
    return mc_risk_at(spec.to_model(), spec.eta2, est, replicates, seed, opts);
}

double SpectralSample::ecdf(double s) const {
    if (eigenvalues.size() == 0) return 0.0;
    const auto count = std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                     [s](double v) { return v <= s; });
    return static_cast<double>(count) / static_cast<double>(eigenvalues.size());
}

int SpectralSample::zero_count(double tol) const {
    return static_cast<int>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                          [tol](double v) { return std::abs(v) <= tol; }));
}

double SpectralSample::mean() const { return eigenvalues.size() ? eigenvalues.mean() : 0.0; }

SpectralSample spectral_sample(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
    CounterRng rng(seed);
    SpectralSample s;
    s.n = n;
    s.d = d;
    s.eigenvalues = gram_eigenvalues(standard_normal_matrix(n, d, rng));
    return s;
}

double esd_sup_distance(const SpectralSample& sample, double rho) {
    std::vector<double> v(sample.eigenvalues.begin(), sample.eigenvalues.end());
    std::sort(v.begin(), v.end());
    const double total = static_cast<double>(v.size());
    double sup = 0.0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        const double s = v[i];
        const double f_right = mp_cdf(rho, s);
        // The limit law is continuous except at 0.
        const double f_left = s <= 0.0 ? 0.0 : f_right;
        const double emp_left = static_cast<double>(i) / total;
        const double emp_right = static_cast<double>(j) / total;
        sup = std::max({sup, std::abs(f_left - emp_left), std::abs(f_right - emp_right)});
        i = j;
    }
    return sup;
}

std::vector<std::pair<int, int>> ExperimentGrid::dimensions() const {
    std::vector<std::pair<int, int>> dims;
    for (int n : n_values) {
        if (!d_values.empty()) {
            for (int d : d_values) dims.emplace_back(n, d);
        } else {
            for (double rho : rho_values) {
                dims.emplace_back(n, std::max(1, static_cast<int>(std::lround(rho * n))));
            }
        }
    }
    return dims;
}

void check_estimator_domain(const EstimatorSpec& est, int n, int d) {
    const std::string name(to_token(est.id));
    switch (est.id) {
        case EstimatorId::AdaptiveRidge:
        case EstimatorId::AdaptiveMarginalShrinkage:
            if (d >= n) {
                throw std::invalid_argument(name +
                                            ": adaptive estimators require d < n; the noise "
                                            "variance estimate is undefined when d >= n" +
                                            where(n, d));
            }
            break;
        case EstimatorId::AdaptiveJamesStein:
            if (d >= n - 1) {
                throw std::invalid_argument(name + ": requires d < n - 1; the noise variance "
                                                   "estimate is undefined when d >= n" +
                                            where(n, d));
            }
            break;
        case EstimatorId::Baranchik:
            if (!(est.c > 0.0)) throw std::invalid_argument(name + ": c must be positive");
            if (d >= n) throw std::invalid_argument(name + ": requires d < n" + where(n, d));
            break;
        case EstimatorId::JamesStein:
        case EstimatorId::Ridge:
        case EstimatorId::MarginalShrinkage:
            if (!(est.lambda >= 0.0)) throw std::invalid_argument(name + ": lambda must be >= 0");
            break;
        default: break;
    }
}

void ExperimentGrid::validate() const {
    if (n_values.empty()) throw std::invalid_argument("n: at least one value required");
    for (int n : n_values) {
        if (n < 1) throw std::invalid_argument("n: values must be positive");
    }
    if (d_values.empty() && rho_values.empty()) {
        throw std::invalid_argument("d: provide d or rho values");
    }
    for (int d : d_values) {
        if (d < 1) throw std::invalid_argument("d: values must be positive");
    }
    for (double rho : rho_values) {
        if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho: values must be positive");
    }
    if (eta2_values.empty()) throw std::invalid_argument("eta2: at least one value required");
    for (double e : eta2_values) {
        if (!(e >= 0.0) || !std::isfinite(e)) {
            throw std::invalid_argument("eta2: values must be finite and non-negative");
        }
    }
    if (estimators.empty()) throw std::invalid_argument("estimators: no estimators selected");
    if (replicates < 1) throw std::invalid_argument("replicates: must be >= 1");
    for (const auto& [n, d] : dimensions()) {
        const double ratio = static_cast<double>(d) / n;
        if (theta_lo && ratio < *theta_lo) {
            throw std::invalid_argument("theta_lo: d/n below the regime bound" + where(n, d));
        }
        if (theta_hi && ratio > *theta_hi) {
            throw std::invalid_argument("theta_hi: d/n above the regime bound" + where(n, d));
        }
        for (const auto& est : estimators) check_estimator_domain(est, n, d);
    }
}

std::vector<RiskPoint> run_grid(const ExperimentGrid& grid, unsigned workers) {
    grid.validate();
    std::vector<RiskPoint> out;
    std::uint64_t k = 0;
    for (const auto& [n, d] : grid.dimensions()) {
        for (double eta2 : grid.eta2_values) {
            for (const auto& est : grid.estimators) {
                const CanonicalSpec spec(n, d, eta2);
                out.push_back(mc_risk(spec, est, grid.replicates, derive_seed(grid.master_seed, k),
                                      McOptions{workers, false}));
                ++k;
            }
        }
    }
    return out;
}

std::vector<AdaptiveGapRow> adaptive_gap_experiment(double rho, double eta2,
                                                    const std::vector<int>& n_values,
                                                    int replicates, std::uint64_t seed,
                                                    unsigned workers) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
    if (!(eta2 >= 0.0) || !std::isfinite(eta2)) throw std::invalid_argument("eta2 must be >= 0");
    if (replicates < 2) throw std::invalid_argument("replicates must be >= 2");

    std::vector<AdaptiveGapRow> rows;
    for (std::size_t idx = 0; idx < n_values.size(); ++idx) {
        const int n = n_values[idx];
        const int d = floor_dimension(rho, n);
        if (d < 1 || n - d <= 6) {
            throw std::invalid_argument("adaptive gap experiment needs 1 <= d and n - d > 6" +
                                        where(n, d));
        }
        const CanonicalSpec spec(n, d, eta2);
        const VectorXd beta = spec.beta();
        const MatrixXd identity = MatrixXd::Identity(d, d);
        const ShrinkageParam lam_r = oracle_ridge_lambda(n, d, eta2);
        const ShrinkageParam lam_js = oracle_js_lambda(n, d, eta2);
        const ShrinkageParam lam_m = oracle_marginal_lambda(n, d, eta2);
        const std::uint64_t point_seed = derive_seed(seed, idx);

        // Columns: ridge adaptive/oracle, js adaptive/oracle, ms adaptive/oracle.
        const auto losses =
            run_indexed(static_cast<std::size_t>(replicates), workers, [&](std::size_t r) {
                CounterRng rng = CounterRng::stream(point_seed, r);
                const Dataset ds = generate_dataset(spec, rng);
                const NormalEquations ne = NormalEquations::from(ds);
                const AdaptiveState st = estimate_snr(ne);
                const VectorXd b_ols = ols(ne);
                const VectorXd b_marg = ne.xty / static_cast<double>(n);
                auto loss = [&](const VectorXd& b) { return (b - beta).squaredNorm(); };
                std::vector<double> out(6);
                out[0] = loss(ridge(ne, adaptive_ridge_lambda(st, n, d), identity));
                out[1] = loss(ridge(ne, lam_r, identity));
                out[2] = loss(adaptive_js_lambda(st, n, d).shrink_factor() * b_ols);
                out[3] = loss(lam_js.shrink_factor() * b_ols);
                out[4] = loss(adaptive_marginal_lambda(st, n, d).shrink_factor() * b_marg);
                out[5] = loss(lam_m.shrink_factor() * b_marg);
                return out;
            });

        const std::array<const char*, 3> names{"ridge", "js", "ms"};
        for (std::size_t p = 0; p < names.size(); ++p) {
            const MeanEstimate a = column_summary(losses, 2 * p);
            const MeanEstimate o = column_summary(losses, 2 * p + 1);
            const MeanEstimate g = difference_summary(losses, 2 * p, 2 * p + 1);
            AdaptiveGapRow row;
            row.pair = names[p];
            row.n = n;
            row.d = d;
            row.eta2 = eta2;
            row.adaptive_risk = a.mean;
            row.adaptive_se = a.std_error;
            row.oracle_risk = o.mean;
            row.oracle_se = o.std_error;
            row.gap = g.mean;
            row.gap_se = g.std_error;
            const double scale = std::sqrt(static_cast<double>(n)) * (p == 2 ? 1.0 : eta2 + 1.0);
            row.normalized_gap = std::abs(g.mean) * scale;
            row.normalized_gap_se = g.std_error * scale;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string_view to_token(CovSource s) {
    switch (s) {
        case CovSource::TrueSigma: return "true-sigma";
        case CovSource::SampleCov: return "sample-cov";
        case CovSource::ShrunkSampleCov: return "shrunk-sample-cov";
    }
    return "unknown";
}

PluginRidgeReport plugin_ridge_experiment(const ModelSpec& spec,
                                          const std::vector<CovSource>& sources, int replicates,
                                          std::uint64_t seed, double shrink_weight,
                                          unsigned workers) {
    const Index n = spec.n();
    const Index d = spec.d();
    if (d >= n - 1) throw std::invalid_argument("plugin ridge experiment requires d < n - 1");
    if (!(shrink_weight >= 0.0 && shrink_weight <= 1.0)) {
        throw std::invalid_argument("shrink weight must lie in [0, 1]");
    }
    if (replicates < 2) throw std::invalid_argument("replicates must be >= 2");
    if (sources.empty()) throw std::invalid_argument("no covariance sources selected");

    const std::size_t k = sources.size();
    // Columns: one loss per source, adaptive-JS loss, then three deviations.
    const auto rows = run_indexed(static_cast<std::size_t>(replicates), workers, [&](std::size_t r) {
        CounterRng rng = CounterRng::stream(seed, r);
        const Dataset ds = generate_dataset(spec, rng);
        const AdaptiveState st = estimate_snr(ds);
        const ShrinkageParam lam = adaptive_ridge_lambda(st, n, d);
        const MatrixXd sample = full_gram(ds.x) / static_cast<double>(n);
        const VectorXd ajs = adaptive_james_stein(ds);

        std::vector<double> out(k + 4, 0.0);
        for (std::size_t s = 0; s < k; ++s) {
            MatrixXd cov;
            switch (sources[s]) {
                case CovSource::TrueSigma: cov = spec.sigma(); break;
                case CovSource::SampleCov: cov = sample; break;
                case CovSource::ShrunkSampleCov: {
                    MatrixXd diag = sample.diagonal().asDiagonal();
                    cov = (1.0 - shrink_weight) * sample + shrink_weight * diag;
                    break;
                }
            }
            const VectorXd b = ridge(ds, lam, cov);
            out[s] = prediction_loss(b, spec);
            if (sources[s] == CovSource::TrueSigma) {
                out[k + 1] = (b - adaptive_ridge(ds, spec.sigma())).cwiseAbs().maxCoeff();
            } else if (sources[s] == CovSource::SampleCov) {
                out[k + 2] = (b - james_stein(ds, lam)).cwiseAbs().maxCoeff();
                out[k + 3] = (b - ajs).cwiseAbs().maxCoeff();
            }
        }
        out[k] = prediction_loss(ajs, spec);
        return out;
    });

    PluginRidgeReport rep;
    for (std::size_t s = 0; s < k; ++s) {
        const MeanEstimate m = column_summary(rows, s);
        rep.rows.push_back({sources[s], m.mean, m.std_error});
    }
    const MeanEstimate ajs = column_summary(rows, k);
    rep.adaptive_js_risk = ajs.mean;
    rep.adaptive_js_se = ajs.std_error;
    for (const auto& row : rows) {
        rep.max_dev_true_vs_adaptive_ridge = std::max(rep.max_dev_true_vs_adaptive_ridge, row[k + 1]);
        rep.max_dev_sample_vs_js_same_lambda =
            std::max(rep.max_dev_sample_vs_js_same_lambda, row[k + 2]);
        rep.max_dev_sample_vs_adaptive_js = std::max(rep.max_dev_sample_vs_adaptive_js, row[k + 3]);
    }
    return rep;
}

std::vector<BaranchikRow> baranchik_experiment(double rho, double eta2,
                                               const std::vector<double>& c_values, int n,
                                               int replicates, std::uint64_t seed,
                                               unsigned workers) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
    if (replicates < 2) throw std::invalid_argument("replicates must be >= 2");
    if (c_values.empty()) throw std::invalid_argument("no Baranchik constants given");
    const int d = floor_dimension(rho, n);
    if (d < 3 || n - d < 2) {
        throw std::invalid_argument("Baranchik experiment needs d >= 3 and n - d >= 2" + where(n, d));
    }
    const double c_max = 2.0 * (d - 2.0) / (n - d + 2.0);
    for (double c : c_values) {
        if (!(c > 0.0 && c < c_max)) {
            throw std::invalid_argument("c = " + std::to_string(c) + " is outside (0, " +
                                        std::to_string(c_max) + ")" + where(n, d));
        }
    }

    const CanonicalSpec spec(n, d, eta2);
    const ModelSpec model = spec.to_model();
    const std::size_t k = c_values.size();
    // Columns: Baranchik per c, adaptive JS, OLS.
    const auto losses = run_indexed(static_cast<std::size_t>(replicates), workers, [&](std::size_t r) {
        CounterRng rng = CounterRng::stream(seed, r);
        const Dataset ds = generate_dataset(spec, rng);
        std::vector<double> out(k + 2);
        for (std::size_t j = 0; j < k; ++j) {
            out[j] = prediction_loss(baranchik(ds, c_values[j]).coef, model);
        }
        out[k] = prediction_loss(adaptive_james_stein(ds), model);
        out[k + 1] = prediction_loss(ols(ds), model);
        return out;
    });

    const double rho_nd = static_cast<double>(d) / n;
    const double lam_js = lambda_js_limit(rho_nd, eta2);
    const double r_js = risk_js_lambda_asymptotic(lam_js, rho_nd, eta2);
    const MeanEstimate ajs = column_summary(losses, k);
    const MeanEstimate ols_est = column_summary(losses, k + 1);

    std::vector<BaranchikRow> rows;
    for (std::size_t j = 0; j < k; ++j) {
        BaranchikRow row;
        row.c = c_values[j];
        row.lambda_bar = lambda_bar(row.c, rho_nd, eta2);
        const MeanEstimate bar = column_summary(losses, j);
        const MeanEstimate gap = difference_summary(losses, j, k);
        row.risk_baranchik = bar.mean;
        row.se_baranchik = bar.std_error;
        row.risk_adaptive_js = ajs.mean;
        row.se_adaptive_js = ajs.std_error;
        row.risk_ols = ols_est.mean;
        row.se_ols = ols_est.std_error;
        row.gap = gap.mean;
        row.gap_se = gap.std_error;
        row.predicted_gap = risk_js_lambda_asymptotic(row.lambda_bar, rho_nd, eta2) - r_js;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace shrinkrisk
