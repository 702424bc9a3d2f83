#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "shrinkrisk/model.h"
#include "shrinkrisk/rng.h"

namespace shrinkrisk::testing {

inline MatrixXd random_spd(Index d, CounterRng& rng) {
    const MatrixXd a = standard_normal_matrix(d, d, rng);
    return a * a.transpose() / static_cast<double>(d) + 0.5 * MatrixXd::Identity(d, d);
}

/// Random matrix with condition number exactly `cond`: Q1 diag Q2.
inline MatrixXd random_with_condition(Index d, double cond, CounterRng& rng) {
    Eigen::HouseholderQR<MatrixXd> q1(standard_normal_matrix(d, d, rng));
    Eigen::HouseholderQR<MatrixXd> q2(standard_normal_matrix(d, d, rng));
    VectorXd s(d);
    for (Index i = 0; i < d; ++i) {
        s(i) = d == 1 ? 1.0 : std::pow(cond, static_cast<double>(i) / static_cast<double>(d - 1));
    }
    const MatrixXd u = q1.householderQ() * MatrixXd::Identity(d, d);
    const MatrixXd v = q2.householderQ() * MatrixXd::Identity(d, d);
    return u * s.asDiagonal() * v.transpose();
}

inline MatrixXd random_orthogonal(Index d, CounterRng& rng) {
    Eigen::HouseholderQR<MatrixXd> qr(standard_normal_matrix(d, d, rng));
    return qr.householderQ() * MatrixXd::Identity(d, d);
}

inline double max_abs_diff(const VectorXd& a, const VectorXd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace shrinkrisk::testing
