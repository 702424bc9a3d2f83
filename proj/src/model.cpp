#include "shrinkrisk/model.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace shrinkrisk {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kPdRatio = 1e-12;
constexpr double kMaxCondition = 1e12;

}  // namespace

void validate_covariance(const MatrixXd& sigma) {
    if (sigma.rows() == 0 || sigma.rows() != sigma.cols()) {
        throw std::invalid_argument("covariance must be a non-empty square matrix");
    }
    if (!sigma.allFinite()) {
        throw std::invalid_argument("covariance has non-finite entries");
    }
    const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
        throw std::invalid_argument("covariance is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(hi > 0.0) || !(lo > kPdRatio * hi)) {
        throw std::invalid_argument("covariance is not positive definite (min eigenvalue " +
                                    std::to_string(lo) + ", max " + std::to_string(hi) + ")");
    }
}

MatrixXd covariance_identity(Index d) {
    if (d < 1) throw std::invalid_argument("covariance dimension must be positive");
    return MatrixXd::Identity(d, d);
}

MatrixXd covariance_diagonal(const VectorXd& diag) {
    MatrixXd sigma = diag.asDiagonal();
    validate_covariance(sigma);
    return sigma;
}

MatrixXd covariance_dense(const MatrixXd& sigma) {
    validate_covariance(sigma);
    // Exact symmetry downstream; the validated asymmetry is below 1e-10.
    return 0.5 * (sigma + sigma.transpose());
}

ModelSpec::ModelSpec(Index n, Index d, VectorXd beta, MatrixXd sigma, double noise_var)
    : n_(n), d_(d), beta_(std::move(beta)), noise_var_(noise_var) {
    if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
    if (beta_.size() != d) throw std::invalid_argument("beta must have length d");
    if (!beta_.allFinite()) throw std::invalid_argument("beta has non-finite entries");
    if (sigma.rows() != d) throw std::invalid_argument("sigma must be d x d");
    sigma_ = covariance_dense(sigma);
    if (!(noise_var_ > 0.0) || !std::isfinite(noise_var_)) {
        throw std::invalid_argument("noise_var must be positive and finite");
    }
    Eigen::LLT<MatrixXd> llt(sigma_);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("covariance Cholesky factorization failed");
    }
    chol_ = llt.matrixL();
    identity_ = sigma_.isIdentity(0.0);
}

CanonicalSpec::CanonicalSpec(Index n_, Index d_, double eta2_)
    : CanonicalSpec(n_, d_, eta2_, VectorXd::Unit(std::max<Index>(d_, 1), 0)) {}

CanonicalSpec::CanonicalSpec(Index n_, Index d_, double eta2_, VectorXd unit_dir_)
    : n(n_), d(d_), eta2(eta2_), unit_dir(std::move(unit_dir_)) {
    if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
    if (!(eta2 >= 0.0) || !std::isfinite(eta2)) {
        throw std::invalid_argument("eta2 must be finite and non-negative");
    }
    if (unit_dir.size() != d) throw std::invalid_argument("unit_dir must have length d");
    if (std::abs(unit_dir.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("unit_dir must have unit norm");
    }
}

VectorXd CanonicalSpec::beta() const { return std::sqrt(eta2) * unit_dir; }

ModelSpec CanonicalSpec::to_model() const {
    return ModelSpec(n, d, beta(), MatrixXd::Identity(d, d), 1.0);
}

Dataset::Dataset(MatrixXd x_, VectorXd y_) : x(std::move(x_)), y(std::move(y_)) {
    if (x.rows() != y.size()) {
        throw std::invalid_argument("design row count must equal response length");
    }
}

double snr(const ModelSpec& spec) {
    const double signal = spec.beta().dot(spec.sigma() * spec.beta());
    return std::max(0.0, signal) / spec.noise_var();
}

CanonicalSpec canonicalize(const ModelSpec& spec) {
    return CanonicalSpec(spec.n(), spec.d(), snr(spec));
}

MatrixXd standard_normal_matrix(Index n, Index d, CounterRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    MatrixXd z(n, d);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < d; ++j) z(i, j) = normal(rng);
    }
    return z;
}

VectorXd standard_normal_vector(Index n, CounterRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    VectorXd z(n);
    for (Index i = 0; i < n; ++i) z(i) = normal(rng);
    return z;
}

Dataset generate_dataset(const ModelSpec& spec, CounterRng& rng) {
    MatrixXd x = standard_normal_matrix(spec.n(), spec.d(), rng);
    if (!spec.sigma_is_identity()) x = x * spec.sigma_chol().transpose();
    VectorXd eps = standard_normal_vector(spec.n(), rng);
    VectorXd y = x * spec.beta() + std::sqrt(spec.noise_var()) * eps;
    return Dataset(std::move(x), std::move(y));
}

Dataset generate_dataset(const CanonicalSpec& spec, CounterRng& rng) {
    MatrixXd x = standard_normal_matrix(spec.n, spec.d, rng);
    VectorXd eps = standard_normal_vector(spec.n, rng);
    VectorXd y = x * spec.beta() + eps;
    return Dataset(std::move(x), std::move(y));
}

Dataset generate_dataset(const ModelSpec& spec, std::uint64_t seed) {
    CounterRng rng(seed);
    return generate_dataset(spec, rng);
}

Dataset generate_dataset(const CanonicalSpec& spec, std::uint64_t seed) {
    CounterRng rng(seed);
    return generate_dataset(spec, rng);
}

Dataset equivariance_transform(const Dataset& ds, const MatrixXd& a) {
    if (a.rows() != ds.d() || a.cols() != ds.d()) {
        throw std::invalid_argument("transform must be d x d");
    }
    Eigen::JacobiSVD<MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || sv(0) / smin >= kMaxCondition) {
        throw std::invalid_argument("transform is singular or ill-conditioned");
    }
    return Dataset(ds.x * a, ds.y);
}

VectorXd gram_eigenvalues(const MatrixXd& x) {
    const Index n = x.rows();
    const Index d = x.cols();
    const Index m = std::min(n, d);
    MatrixXd gram = MatrixXd::Zero(m, m);
    if (d <= n) {
        gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose(), 1.0 / static_cast<double>(n));
    } else {
        gram.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / static_cast<double>(n));
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    VectorXd out = VectorXd::Zero(d);
    // Eigen returns ascending order.
    for (Index k = 0; k < m; ++k) out(k) = std::max(0.0, eig.eigenvalues()(m - 1 - k));
    return out;
}

}  // namespace shrinkrisk
