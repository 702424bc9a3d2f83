#include "shrinkrisk/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "shrinkrisk/csv.h"
#include "shrinkrisk/estimators.h"
#include "shrinkrisk/risk_asymptotic.h"
#include "shrinkrisk/risk_finite.h"
#include "shrinkrisk/simulation.h"

namespace shrinkrisk::cli {

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string seed;
    unsigned workers = 1;
    std::string n;
    std::string d;
    std::string rho;
    std::string eta2;
    std::optional<int> replicates;
    std::optional<std::string> estimators;
    std::string figure;
    int resolution = 200;
    double lambda = 0.0;
    std::string c;
    std::string experiment = "risk";
    std::optional<double> theta_lo;
    std::optional<double> theta_hi;
    double shrink_weight = 0.5;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
    throw std::invalid_argument(std::string(key) + ": invalid value '" + std::string(value) +
                                "' (" + std::string(what) + ")");
}

int parse_int(std::string_view key, const std::string& s) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        bad_value(key, s, "expected an integer");
    }
    if (pos != s.size() || v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        bad_value(key, s, "expected an integer");
    }
    return static_cast<int>(v);
}

double parse_double(std::string_view key, const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        bad_value(key, s, "expected a number");
    }
    if (pos != s.size()) bad_value(key, s, "expected a number");
    return v;
}

std::vector<int> int_list(std::string_view key, const std::string& text) {
    std::vector<int> v;
    for (const auto& item : split_list(text)) v.push_back(parse_int(key, item));
    return v;
}

std::vector<double> double_list(std::string_view key, const std::string& text) {
    std::vector<double> v;
    for (const auto& item : split_list(text)) v.push_back(parse_double(key, item));
    return v;
}

double single_double(std::string_view key, const std::string& text) {
    const auto v = double_list(key, text);
    if (v.size() != 1) {
        throw std::invalid_argument(std::string(key) + ": exactly one value required");
    }
    return v.front();
}

int single_int(std::string_view key, const std::string& text) {
    const auto v = int_list(key, text);
    if (v.size() != 1) {
        throw std::invalid_argument(std::string(key) + ": exactly one value required");
    }
    return v.front();
}

std::uint64_t parse_seed(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        bad_value("seed", s, "expected an unsigned 64-bit integer");
    }
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        bad_value("seed", s, "expected an unsigned 64-bit integer");
    }
}

std::uint64_t required_seed(const Options& o, std::string_view command) {
    if (o.seed.empty()) {
        throw std::invalid_argument("seed: required for " + std::string(command) +
                                    " (pass --seed or set seed in the config file)");
    }
    return parse_seed(o.seed);
}

std::vector<EstimatorSpec> parse_estimators(const Options& o,
                                            const std::vector<EstimatorId>& defaults) {
    std::vector<EstimatorId> ids;
    if (o.estimators) {
        for (const auto& tok : split_list(*o.estimators)) {
            try {
                ids.push_back(estimator_from_token(tok));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(std::string("estimators: ") + e.what());
            }
        }
    } else {
        ids = defaults;
    }
    if (ids.empty()) throw std::invalid_argument("estimators: no estimators selected");
    const auto cs = double_list("c", o.c);
    std::vector<EstimatorSpec> specs;
    for (EstimatorId id : ids) {
        EstimatorSpec s;
        s.id = id;
        s.lambda = o.lambda;
        if (id == EstimatorId::Baranchik) {
            if (cs.size() != 1) throw std::invalid_argument("c: baranchik needs exactly one c value");
            s.c = cs.front();
        }
        specs.push_back(s);
    }
    return specs;
}

/// (n, d) pairs from --n with either --d or --rho.
std::vector<std::pair<int, int>> dimension_pairs(const Options& o, ExperimentGrid& grid) {
    grid.n_values = int_list("n", o.n);
    grid.d_values = int_list("d", o.d);
    grid.rho_values = double_list("rho", o.rho);
    if (!grid.d_values.empty() && !grid.rho_values.empty()) {
        throw std::invalid_argument("d: give either d or rho values, not both");
    }
    if (grid.n_values.empty()) throw std::invalid_argument("n: at least one value required");
    if (grid.d_values.empty() && grid.rho_values.empty()) {
        throw std::invalid_argument("d: provide d or rho values");
    }
    for (int n : grid.n_values) {
        if (n < 1) throw std::invalid_argument("n: values must be positive");
    }
    for (int d : grid.d_values) {
        if (d < 1) throw std::invalid_argument("d: values must be positive");
    }
    for (double r : grid.rho_values) {
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("rho: values must be positive");
    }
    return grid.dimensions();
}

std::vector<double> eta2_values(const Options& o) {
    auto v = double_list("eta2", o.eta2);
    if (v.empty()) throw std::invalid_argument("eta2: at least one value required");
    for (double e : v) {
        if (!(e >= 0.0) || !std::isfinite(e)) {
            throw std::invalid_argument("eta2: values must be finite and non-negative");
        }
    }
    return v;
}

RiskPoint formula_risk(const EstimatorSpec& est, int n, int d, double eta2) {
    switch (est.id) {
        case EstimatorId::Null: return risk_null(n, d, eta2);
        case EstimatorId::Ols: return risk_ols(n, d, eta2);
        case EstimatorId::Marginal: return risk_marginal(n, d, eta2);
        case EstimatorId::JamesStein: return risk_js(n, d, eta2, ShrinkageParam(est.lambda));
        case EstimatorId::JamesSteinOracle: return risk_js_oracle(n, d, eta2);
        case EstimatorId::MarginalShrinkageOracle:
            return risk_marginal_shrinkage_oracle(n, d, eta2).second;
        case EstimatorId::Dominating: return risk_dominating(n, d, eta2);
        case EstimatorId::RidgeOracle: return risk_ridge_mp_approximation(n, d, eta2);
        default: break;
    }
    throw std::invalid_argument("estimators: '" + std::string(to_token(est.id)) +
                                "' has no closed-form risk; use the simulate command");
}

std::string cmd_formulas(const Options& o) {
    ExperimentGrid grid;
    const auto dims = dimension_pairs(o, grid);
    const auto etas = eta2_values(o);
    const auto ests = parse_estimators(
        o, {EstimatorId::Null, EstimatorId::Ols, EstimatorId::Marginal, EstimatorId::JamesSteinOracle,
            EstimatorId::MarginalShrinkageOracle, EstimatorId::Dominating});
    if (!(o.lambda >= 0.0)) throw std::invalid_argument("lambda: must be >= 0");
    std::vector<RiskPoint> points;
    for (const auto& [n, d] : dims) {
        for (double e : etas) {
            for (const auto& est : ests) points.push_back(formula_risk(est, n, d, e));
        }
    }
    std::ostringstream os;
    write_risk_points(os, points);
    return os.str();
}

std::string cmd_asymptotic(const Options& o) {
    if (o.figure.empty()) throw std::invalid_argument("figure: required (valid: 1a, 1b, 2, 3)");
    const auto& ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), o.figure) == ids.end()) {
        throw std::invalid_argument("figure: unknown figure id '" + o.figure +
                                    "' (valid: 1a, 1b, 2, 3)");
    }
    if (o.resolution < 2) throw std::invalid_argument("resolution: must be >= 2");
    auto rows = figure_grid(o.figure, o.resolution);
    const auto etas = double_list("eta2", o.eta2);
    if (!etas.empty()) {
        if (o.figure == "3") {
            throw std::invalid_argument("eta2: figure 3 uses eta2 as its axis; no filter allowed");
        }
        std::erase_if(rows, [&](const FigureRow& r) {
            return std::find(etas.begin(), etas.end(), r.point.eta2) == etas.end();
        });
        if (rows.empty()) {
            throw std::invalid_argument("eta2: none of the given values appear in figure " + o.figure);
        }
    }
    std::ostringstream os;
    write_figure_rows(os, rows);
    return os.str();
}

std::string simulate_risk(const Options& o) {
    ExperimentGrid grid;
    dimension_pairs(o, grid);
    grid.eta2_values = eta2_values(o);
    grid.estimators = parse_estimators(o, {EstimatorId::Ols, EstimatorId::Marginal,
                                           EstimatorId::JamesSteinOracle,
                                           EstimatorId::MarginalShrinkageOracle});
    grid.replicates = o.replicates.value_or(4000);
    grid.master_seed = required_seed(o, "simulate");
    grid.theta_lo = o.theta_lo;
    grid.theta_hi = o.theta_hi;
    grid.validate();
    std::ostringstream os;
    write_risk_points(os, run_grid(grid, o.workers));
    return os.str();
}

std::string simulate_baranchik(const Options& o) {
    const std::uint64_t seed = required_seed(o, "simulate");
    const int n = single_int("n", o.n);
    const double rho = single_double("rho", o.rho);
    const double eta2 = single_double("eta2", o.eta2);
    std::vector<double> cs = double_list("c", o.c);
    if (cs.empty()) throw std::invalid_argument("c: at least one value required");
    const auto rows = baranchik_experiment(rho, eta2, cs, n, o.replicates.value_or(4000), seed,
                                           o.workers);
    std::ostringstream os;
    os << "c,lambda_bar,risk_baranchik,se_baranchik,risk_adaptive_js,se_adaptive_js,risk_ols,se_ols,"
          "gap,gap_se,predicted_gap\n";
    for (const auto& r : rows) {
        os << csv_line({format_double(r.c), format_double(r.lambda_bar), format_double(r.risk_baranchik),
                        format_double(r.se_baranchik), format_double(r.risk_adaptive_js),
                        format_double(r.se_adaptive_js), format_double(r.risk_ols),
                        format_double(r.se_ols), format_double(r.gap), format_double(r.gap_se),
                        format_double(r.predicted_gap)})
           << '\n';
    }
    return os.str();
}

std::string simulate_plugin(const Options& o) {
    const std::uint64_t seed = required_seed(o, "simulate");
    const int n = single_int("n", o.n);
    const int d = single_int("d", o.d);
    const double eta2 = single_double("eta2", o.eta2);
    if (!(eta2 >= 0.0) || !std::isfinite(eta2)) throw std::invalid_argument("eta2: must be >= 0");
    if (n < 1 || d < 1) throw std::invalid_argument("n: n and d must be positive");
    const CanonicalSpec spec(n, d, eta2);
    const std::vector<CovSource> sources{CovSource::TrueSigma, CovSource::SampleCov,
                                         CovSource::ShrunkSampleCov};
    const auto rep = plugin_ridge_experiment(spec.to_model(), sources, o.replicates.value_or(4000),
                                             seed, o.shrink_weight, o.workers);
    std::ostringstream os;
    os << "quantity,value,mc_stderr\n";
    for (const auto& r : rep.rows) {
        os << csv_line({"risk:" + std::string(to_token(r.source)), format_double(r.risk),
                        format_double(r.se)})
           << '\n';
    }
    os << csv_line({"risk:adaptive-js", format_double(rep.adaptive_js_risk),
                    format_double(rep.adaptive_js_se)})
       << '\n';
    os << csv_line({"max-abs-dev:true-sigma-vs-adaptive-ridge",
                    format_double(rep.max_dev_true_vs_adaptive_ridge), ""})
       << '\n';
    os << csv_line({"max-abs-dev:sample-cov-vs-js-same-lambda",
                    format_double(rep.max_dev_sample_vs_js_same_lambda), ""})
       << '\n';
    os << csv_line({"max-abs-dev:sample-cov-vs-adaptive-js",
                    format_double(rep.max_dev_sample_vs_adaptive_js), ""})
       << '\n';
    return os.str();
}

std::string cmd_simulate(const Options& o) {
    if (o.experiment == "risk") return simulate_risk(o);
    if (o.experiment == "baranchik") return simulate_baranchik(o);
    if (o.experiment == "plugin") return simulate_plugin(o);
    throw std::invalid_argument("experiment: unknown experiment '" + o.experiment +
                                "' (valid: risk, baranchik, plugin)");
}

std::string cmd_adaptive(const Options& o) {
    const std::uint64_t seed = required_seed(o, "adaptive");
    const double rho = single_double("rho", o.rho);
    const double eta2 = single_double("eta2", o.eta2);
    std::vector<int> ns = int_list("n", o.n);
    if (ns.empty()) ns = {200, 400, 800, 1600};
    const auto rows =
        adaptive_gap_experiment(rho, eta2, ns, o.replicates.value_or(2000), seed, o.workers);
    std::ostringstream os;
    os << "pair,n,d,eta2,adaptive_risk,adaptive_se,oracle_risk,oracle_se,gap,gap_se,"
          "normalized_gap,normalized_gap_se\n";
    for (const auto& r : rows) {
        os << csv_line({r.pair, std::to_string(r.n), std::to_string(r.d), format_double(r.eta2),
                        format_double(r.adaptive_risk), format_double(r.adaptive_se),
                        format_double(r.oracle_risk), format_double(r.oracle_se),
                        format_double(r.gap), format_double(r.gap_se),
                        format_double(r.normalized_gap), format_double(r.normalized_gap_se)})
           << '\n';
    }
    return os.str();
}

std::string cmd_spectra(const Options& o) {
    const std::uint64_t seed = required_seed(o, "spectra");
    ExperimentGrid grid;
    const auto dims = dimension_pairs(o, grid);
    std::ostringstream os;
    os << "n,d,rho,mean_eigenvalue,zero_count,expected_zero_count,sup_distance\n";
    std::uint64_t k = 0;
    for (const auto& [n, d] : dims) {
        const SpectralSample s = spectral_sample(n, d, derive_seed(seed, k++));
        const double rho = static_cast<double>(d) / n;
        os << csv_line({std::to_string(n), std::to_string(d), format_double(rho),
                        format_double(s.mean()), std::to_string(s.zero_count()),
                        std::to_string(std::max(d - n, 0)),
                        format_double(esd_sup_distance(s, rho))})
           << '\n';
    }
    return os.str();
}

class VerifyReport {
public:
    explicit VerifyReport(std::ostream& os) : os_(os) {}

    void check(const std::string& name, bool ok, const std::string& detail) {
        os_ << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        ok ? ++passed_ : ++failed_;
    }
    int failed() const { return failed_; }
    int passed() const { return passed_; }

private:
    std::ostream& os_;
    int passed_ = 0;
    int failed_ = 0;
};

MatrixXd random_covariance(Index d, CounterRng& rng) {
    const MatrixXd a = standard_normal_matrix(d, d, rng);
    return a * a.transpose() / static_cast<double>(d) + MatrixXd::Identity(d, d);
}

int cmd_verify(const Options& o, std::ostream& report) {
    const std::uint64_t seed = o.seed.empty() ? kDefaultVerifySeed : parse_seed(o.seed);
    const int reps = o.replicates.value_or(1000);
    if (reps < 2) throw std::invalid_argument("replicates: must be >= 2");
    VerifyReport rep(report);
    report << "shrinkrisk verify (seed " << seed << ", " << reps << " replicates)\n";

    // Finite-sample dominance grid.
    const int n = 200;
    const std::vector<double> etas{0.5, 1.0, 2.0, 5.0};
    std::uint64_t k = 0;
    for (int d : {20, 60, 100, 140, 180}) {
        const auto ridge = risk_ridge_oracle_expectation(n, d, etas, reps, derive_seed(seed, k++),
                                                         o.workers);
        for (std::size_t j = 0; j < etas.size(); ++j) {
            const DominanceReport dr = check_dominance(n, d, etas[j], ridge[j], 0.01);
            for (const auto& c : dr.checks) {
                std::ostringstream detail;
                detail << "n=" << n << " d=" << d << " eta2=" << etas[j] << " lhs=" << format_double(c.lhs)
                       << " rhs=" << format_double(c.rhs);
                rep.check("dominance " + c.name, c.passed, detail.str());
            }
        }
    }

    // LS invariance: a general model and its canonical form share MC risk.
    {
        CounterRng rng(derive_seed(seed, k++));
        const Index nn = 60;
        const Index dd = 20;
        const MatrixXd sigma = random_covariance(dd, rng);
        const VectorXd beta = standard_normal_vector(dd, rng) / std::sqrt(static_cast<double>(dd));
        const ModelSpec general(nn, dd, beta, sigma, 2.0);
        const CanonicalSpec canon = canonicalize(general);
        for (EstimatorId id : {EstimatorId::Ols, EstimatorId::Marginal, EstimatorId::JamesSteinOracle,
                               EstimatorId::MarginalShrinkageOracle}) {
            EstimatorSpec est;
            est.id = id;
            const RiskPoint a = mc_risk(general, est, reps, derive_seed(seed, k++), {o.workers, false});
            const RiskPoint b = mc_risk(canon, est, reps, derive_seed(seed, k++), {o.workers, false});
            const double tol = 3.0 * std::hypot(*a.mc_stderr, *b.mc_stderr);
            std::ostringstream detail;
            detail << to_token(id) << " general=" << format_double(a.risk)
                   << " canonical=" << format_double(b.risk) << " tol=" << format_double(tol);
            rep.check("ls-invariance", std::abs(a.risk - b.risk) <= tol, detail.str());
        }
    }

    // Reduction identities with the sample covariance.
    {
        double max_ridge = 0.0;
        double max_marg = 0.0;
        CounterRng rng(derive_seed(seed, k++));
        for (int r = 0; r < 20; ++r) {
            const Index dd = 30;
            const ModelSpec spec(80, dd, standard_normal_vector(dd, rng), random_covariance(dd, rng), 1.0);
            const Dataset ds = generate_dataset(spec, rng);
            const MatrixXd s = ds.x.transpose() * ds.x / static_cast<double>(ds.n());
            const ShrinkageParam lam(0.3 + 0.1 * r);
            max_ridge = std::max(max_ridge,
                                 (ridge(ds, lam, s) - james_stein(ds, lam)).cwiseAbs().maxCoeff());
            max_marg = std::max(max_marg, (marginal(ds, s) - ols(ds)).cwiseAbs().maxCoeff());
        }
        rep.check("reduction ridge(S) = james-stein", max_ridge <= 1e-9,
                  "max abs deviation " + format_double(max_ridge));
        rep.check("reduction marginal(S) = ols", max_marg <= 1e-9,
                  "max abs deviation " + format_double(max_marg));
    }

    // Asymptotic chain on a rho x eta2 sweep.
    {
        int violations = 0;
        int points = 0;
        std::string first;
        for (int i = 0; i < 100; ++i) {
            const double rho = 0.05 + (5.0 - 0.05) * i / 99.0;
            for (int j = 1; j <= 100; ++j) {
                const double eta2 = 20.0 * j / 100.0;
                const double r = risk_ridge_asymptotic(rho, eta2).risk;
                const double js = risk_js_oracle_asymptotic(rho, eta2).risk;
                const double ol = risk_ols_asymptotic(rho, eta2).risk;
                const double m = risk_marginal_asymptotic(rho, eta2).risk;
                const double ms = risk_marginal_shrinkage_asymptotic(rho, eta2).risk;
                ++points;
                if (!(r <= js && js < ol && js < m && r <= ms)) {
                    if (violations++ == 0) {
                        first = " first at rho=" + format_double(rho) + " eta2=" + format_double(eta2);
                    }
                }
            }
        }
        rep.check("asymptotic chain", violations == 0,
                  std::to_string(violations) + " violations over " + std::to_string(points) +
                      " points" + first);
    }

    report << rep.passed() << " passed, " << rep.failed() << " failed\n";
    return rep.failed() == 0 ? kExitOk : kExitVerifyFailed;
}

void add_flags(CLI::App* sub, Options& o, bool grid, bool sim) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", o.config, "flat key = value config file");
    sub->add_option("--out", o.out, "output CSV path (default: stdout)");
    sub->add_option("--seed", o.seed, "master seed (unsigned 64-bit)");
    sub->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    if (grid) {
        sub->add_option("--n", o.n, "sample sizes, comma separated");
        sub->add_option("--d", o.d, "dimensions, comma separated");
        sub->add_option("--rho", o.rho, "aspect ratios d/n, comma separated");
        sub->add_option("--eta2", o.eta2, "signal-to-noise ratios, comma separated");
        sub->add_option("--estimators", o.estimators, "estimator tokens, comma separated");
        sub->add_option("--lambda", o.lambda, "fixed lambda for js, ridge, ms");
        sub->add_option("--c", o.c, "Baranchik constants, comma separated");
    }
    if (sim) {
        sub->add_option("--replicates", o.replicates, "Monte Carlo replicates per point");
        sub->add_option("--theta-lo", o.theta_lo, "lower bound on d/n for every grid point");
        sub->add_option("--theta-hi", o.theta_hi, "upper bound on d/n for every grid point");
        sub->add_option("--experiment", o.experiment, "simulate: risk | baranchik | plugin");
        sub->add_option("--shrink-weight", o.shrink_weight, "plugin: weight on diag(S)");
    }
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    std::vector<std::string> expanded;
    for (std::size_t i = 0; i < args.size(); ++i) {
        // CLI11 rejects "--key=" so an empty value becomes its own token.
        const std::string& a = args[i];
        if (a.size() > 3 && a.rfind("--", 0) == 0 && a.back() == '=' &&
            a.find('=') == a.size() - 1) {
            expanded.push_back(a.substr(0, a.size() - 1));
            expanded.emplace_back();
        } else {
            expanded.push_back(a);
        }
        if (i == 0 && path) {
            for (auto& tok : read_config_file(*path)) expanded.push_back(std::move(tok));
        }
    }
    return expanded;
}

void emit(const Options& o, const std::string& csv, std::ostream& out) {
    if (o.out.empty()) {
        out << csv;
        return;
    }
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("out: cannot open '" + o.out + "' for writing");
    f << csv;
    if (!f) throw std::runtime_error("failed writing '" + o.out + "'");
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find(',', start);
        const auto piece = trim(text.substr(start, end == std::string_view::npos ? text.npos : end - start));
        if (!piece.empty()) items.push_back(piece);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return items;
}

std::vector<std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot read '" + path + "'");
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        ": expected key = value");
        }
        std::string key = trim(std::string_view(body).substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        if (key.empty()) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) + ": empty key");
        }
        if (key == "config") {
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        ": nested config files are not supported");
        }
        tokens.push_back("--" + key);
        tokens.push_back(trim(std::string_view(body).substr(eq + 1)));
    }
    return tokens;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Predictive risk of shrinkage estimators in high-dimensional regression",
                 "shrinkrisk"};
    app.require_subcommand(1, 1);
    auto* formulas = app.add_subcommand("formulas", "closed-form finite-sample risks over a grid");
    auto* asymptotic = app.add_subcommand("asymptotic", "curve data behind the asymptotic figures");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo risk experiments");
    auto* adaptive = app.add_subcommand("adaptive", "adaptive vs oracle risk gap over n");
    auto* spectra = app.add_subcommand("spectra", "sample spectra against the Marcenko-Pastur law");
    auto* verify = app.add_subcommand("verify", "dominance, invariance and identity checks");
    add_flags(formulas, o, true, false);
    add_flags(asymptotic, o, false, false);
    asymptotic->add_option("--figure", o.figure, "figure id: 1a, 1b, 2, 3");
    asymptotic->add_option("--resolution", o.resolution, "points per curve");
    asymptotic->add_option("--eta2", o.eta2, "keep only curves at these eta2 values");
    add_flags(simulate, o, true, true);
    add_flags(adaptive, o, true, true);
    add_flags(spectra, o, true, false);
    add_flags(verify, o, false, true);

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (verify->parsed()) return cmd_verify(o, out);
        std::string csv;
        if (formulas->parsed()) csv = cmd_formulas(o);
        else if (asymptotic->parsed()) csv = cmd_asymptotic(o);
        else if (simulate->parsed()) csv = cmd_simulate(o);
        else if (adaptive->parsed()) csv = cmd_adaptive(o);
        else if (spectra->parsed()) csv = cmd_spectra(o);
        emit(o, csv, out);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace shrinkrisk::cli
