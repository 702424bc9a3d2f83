#pragma once

#include <cstdint>
#include <Eigen/Dense>

#include "shrinkrisk/rng.h"

namespace shrinkrisk {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Builds a dense covariance from the three accepted encodings. All of them
/// are validated by `validate_covariance`.
MatrixXd covariance_identity(Index d);
MatrixXd covariance_diagonal(const VectorXd& diag);
MatrixXd covariance_dense(const MatrixXd& sigma);

/// Throws std::invalid_argument unless `sigma` is square, symmetric within
/// 1e-10 (relative to its largest entry), and its smallest eigenvalue exceeds
/// 1e-12 times its largest.
void validate_covariance(const MatrixXd& sigma);

/// The data-generating model y = X beta + eps with rows of X ~ N(0, Sigma)
/// and eps ~ N(0, noise_var I). No intercept.
class ModelSpec {
public:
    ModelSpec(Index n, Index d, VectorXd beta, MatrixXd sigma, double noise_var);

    Index n() const { return n_; }
    Index d() const { return d_; }
    const VectorXd& beta() const { return beta_; }
    const MatrixXd& sigma() const { return sigma_; }
    double noise_var() const { return noise_var_; }
    /// Lower Cholesky factor of sigma.
    const MatrixXd& sigma_chol() const { return chol_; }
    bool sigma_is_identity() const { return identity_; }

private:
    Index n_;
    Index d_;
    VectorXd beta_;
    MatrixXd sigma_;
    double noise_var_;
    MatrixXd chol_;
    bool identity_ = false;
};

/// The reduced model with Sigma = I, noise variance 1 and beta = eta * u.
struct CanonicalSpec {
    CanonicalSpec(Index n, Index d, double eta2);
    CanonicalSpec(Index n, Index d, double eta2, VectorXd unit_dir);

    Index n;
    Index d;
    double eta2;
    VectorXd unit_dir;

    VectorXd beta() const;
    ModelSpec to_model() const;
};

struct Dataset {
    Dataset(MatrixXd x, VectorXd y);

    MatrixXd x;
    VectorXd y;

    Index n() const { return x.rows(); }
    Index d() const { return x.cols(); }
};

/// beta' Sigma beta / noise_var.
double snr(const ModelSpec& spec);

/// Same n, d and signal-to-noise ratio, with the unit direction fixed to e1.
CanonicalSpec canonicalize(const ModelSpec& spec);

/// Draws one dataset. X is filled row by row, then eps, from
/// CounterRng(seed), so equal seeds give bit-identical datasets.
Dataset generate_dataset(const ModelSpec& spec, std::uint64_t seed);
Dataset generate_dataset(const CanonicalSpec& spec, std::uint64_t seed);
Dataset generate_dataset(const ModelSpec& spec, CounterRng& rng);
Dataset generate_dataset(const CanonicalSpec& spec, CounterRng& rng);

/// (y, X a). Throws std::invalid_argument if `a` is not square d x d or its
/// condition number is at least 1e12.
Dataset equivariance_transform(const Dataset& ds, const MatrixXd& a);

/// Eigenvalues of n^{-1} X'X in non-increasing order, computed from the Gram
/// matrix of the smaller dimension. When d > n the trailing d - n entries are
/// exact zeros.
VectorXd gram_eigenvalues(const MatrixXd& x);

/// Fills an n x d matrix with iid standard normals in row-major draw order.
MatrixXd standard_normal_matrix(Index n, Index d, CounterRng& rng);
VectorXd standard_normal_vector(Index n, CounterRng& rng);

}  // namespace shrinkrisk
