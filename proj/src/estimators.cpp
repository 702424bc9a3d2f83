#include "shrinkrisk/estimators.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shrinkrisk {

namespace {

// Below this reciprocal condition of X'X the Cholesky path hands over to SVD.
constexpr double kGramRcondFloor = 1e-10;

void require_sigma(const MatrixXd& sigma, Index d) {
    if (sigma.rows() != d || sigma.cols() != d) {
        throw std::invalid_argument("covariance must be d x d (d = " + std::to_string(d) + ")");
    }
}

void require_d_below_n(Index n, Index d) {
    if (d >= n) {
        throw std::domain_error(
            "adaptive estimation requires d < n: the noise variance estimate is undefined "
            "when d >= n (got n = " + std::to_string(n) + ", d = " + std::to_string(d) + ")");
    }
}

MatrixXd gram_of(const MatrixXd& x) {
    MatrixXd g = MatrixXd::Zero(x.cols(), x.cols());
    g.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
    return g;
}

VectorXd pinv_solve(const MatrixXd& x, const VectorXd& y) {
    Eigen::BDCSVD<MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    VectorXd coef = VectorXd::Zero(x.cols());
    if (s.size() == 0 || s(0) == 0.0) return coef;
    const double cutoff = static_cast<double>(std::max(x.rows(), x.cols())) *
                          std::numeric_limits<double>::epsilon() * s(0);
    VectorXd uty = svd.matrixU().transpose() * y;
    for (Index k = 0; k < s.size(); ++k) {
        if (s(k) > cutoff) coef += (uty(k) / s(k)) * svd.matrixV().col(k);
    }
    return coef;
}

AdaptiveState snr_from_sums(double yty, double rss, Index n, Index d) {
    AdaptiveState st;
    st.sigma2_hat = std::max(rss, 0.0) / static_cast<double>(n - d);
    if (st.sigma2_hat > 0.0) {
        st.eta2_hat = std::max(yty / (static_cast<double>(n) * st.sigma2_hat) - 1.0, 0.0);
    } else {
        // Zero residual: any nonzero response is pure signal.
        st.eta2_hat = yty > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return st;
}

}  // namespace

ShrinkageParam::ShrinkageParam(double value) : value_(value) {
    if (!(value >= 0.0)) {
        throw std::invalid_argument("shrinkage parameter must be >= 0");
    }
}

NormalEquations NormalEquations::from(const Dataset& ds) {
    NormalEquations ne;
    ne.n = ds.n();
    ne.d = ds.d();
    ne.gram = gram_of(ds.x);
    ne.xty = ds.x.transpose() * ds.y;
    ne.yty = ds.y.squaredNorm();
    return ne;
}

VectorXd ols(const Dataset& ds) {
    if (ds.d() <= ds.n()) {
        const MatrixXd g = gram_of(ds.x);
        Eigen::LLT<MatrixXd> llt(g);
        if (llt.info() == Eigen::Success && llt.rcond() > kGramRcondFloor) {
            return llt.solve(ds.x.transpose() * ds.y);
        }
    }
    return pinv_solve(ds.x, ds.y);
}

VectorXd ols(const NormalEquations& ne) {
    Eigen::LLT<MatrixXd> llt(ne.gram);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("X'X is not positive definite");
    }
    return llt.solve(ne.xty);
}

VectorXd james_stein(const Dataset& ds, ShrinkageParam lam) {
    if (lam.is_infinite()) return VectorXd::Zero(ds.d());
    if (lam.value() == 0.0) return ols(ds);
    return lam.shrink_factor() * ols(ds);
}

VectorXd ridge(const NormalEquations& ne, ShrinkageParam lam, const MatrixXd& sigma) {
    require_sigma(sigma, ne.d);
    if (lam.is_infinite()) return VectorXd::Zero(ne.d);
    if (lam.value() == 0.0) return ols(ne);
    const MatrixXd op = ne.gram + (static_cast<double>(ne.n) * lam.value()) * sigma;
    Eigen::LLT<MatrixXd> llt(op);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("ridge system factorization failed");
    }
    return llt.solve(ne.xty);
}

VectorXd ridge(const Dataset& ds, ShrinkageParam lam, const MatrixXd& sigma) {
    require_sigma(sigma, ds.d());
    if (lam.is_infinite()) return VectorXd::Zero(ds.d());
    if (lam.value() == 0.0) return ols(ds);
    NormalEquations ne = NormalEquations::from(ds);
    return ridge(ne, lam, sigma);
}

VectorXd marginal(const Dataset& ds, const MatrixXd& sigma) {
    require_sigma(sigma, ds.d());
    Eigen::LLT<MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("covariance factorization failed");
    }
    return llt.solve(ds.x.transpose() * ds.y) / static_cast<double>(ds.n());
}

VectorXd marginal_shrinkage(const Dataset& ds, ShrinkageParam lam, const MatrixXd& sigma) {
    if (lam.is_infinite()) {
        require_sigma(sigma, ds.d());
        return VectorXd::Zero(ds.d());
    }
    VectorXd b = marginal(ds, sigma);
    if (lam.value() == 0.0) return b;
    return lam.shrink_factor() * b;
}

AdaptiveState estimate_snr(const Dataset& ds) {
    require_d_below_n(ds.n(), ds.d());
    const VectorXd b = ols(ds);
    const double rss = (ds.y - ds.x * b).squaredNorm();
    return snr_from_sums(ds.y.squaredNorm(), rss, ds.n(), ds.d());
}

AdaptiveState estimate_snr(const NormalEquations& ne) {
    require_d_below_n(ne.n, ne.d);
    const VectorXd b = ols(ne);
    return snr_from_sums(ne.yty, ne.yty - b.dot(ne.xty), ne.n, ne.d);
}

double estimate_snr_fitted_form(const Dataset& ds) {
    require_d_below_n(ds.n(), ds.d());
    const VectorXd b = ols(ds);
    const VectorXd fitted = ds.x * b;
    const double s2 = (ds.y - fitted).squaredNorm() / static_cast<double>(ds.n() - ds.d());
    const double n = static_cast<double>(ds.n());
    return std::max(fitted.squaredNorm() / (n * s2) - static_cast<double>(ds.d()) / n, 0.0);
}

ShrinkageParam adaptive_ridge_lambda(const AdaptiveState& st, Index n, Index d) {
    if (st.eta2_hat == 0.0) return ShrinkageParam::infinity();
    return ShrinkageParam(static_cast<double>(d) / (static_cast<double>(n) * st.eta2_hat));
}

ShrinkageParam adaptive_js_lambda(const AdaptiveState& st, Index n, Index d) {
    if (d >= n - 1) {
        throw std::domain_error("adaptive James-Stein requires d < n - 1");
    }
    if (st.eta2_hat == 0.0) return ShrinkageParam::infinity();
    return ShrinkageParam(static_cast<double>(d) /
                          (st.eta2_hat * static_cast<double>(n - d - 1)));
}

ShrinkageParam adaptive_marginal_lambda(const AdaptiveState& st, Index n, Index d) {
    if (st.eta2_hat == 0.0) return ShrinkageParam::infinity();
    const double nn = static_cast<double>(n);
    return ShrinkageParam(static_cast<double>(d) / (nn * st.eta2_hat) +
                          static_cast<double>(d + 1) / nn);
}

VectorXd adaptive_ridge(const Dataset& ds, const MatrixXd& sigma) {
    const AdaptiveState st = estimate_snr(ds);
    return ridge(ds, adaptive_ridge_lambda(st, ds.n(), ds.d()), sigma);
}

VectorXd adaptive_james_stein(const Dataset& ds) {
    if (ds.d() >= ds.n() - 1) {
        throw std::domain_error("adaptive James-Stein requires d < n - 1");
    }
    const AdaptiveState st = estimate_snr(ds);
    return james_stein(ds, adaptive_js_lambda(st, ds.n(), ds.d()));
}

VectorXd adaptive_marginal_shrinkage(const Dataset& ds, const MatrixXd& sigma) {
    const AdaptiveState st = estimate_snr(ds);
    return marginal_shrinkage(ds, adaptive_marginal_lambda(st, ds.n(), ds.d()), sigma);
}

BaranchikResult baranchik(const Dataset& ds, double c, bool positive_part) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("Baranchik constant c must be positive and finite");
    }
    const Index n = ds.n();
    const Index d = ds.d();
    if (d >= n) throw std::invalid_argument("Baranchik estimator requires d < n");

    BaranchikResult out;
    const VectorXd b = ols(ds);
    const VectorXd fitted = ds.x * b;
    const double fss = fitted.squaredNorm();
    if (fss == 0.0) throw std::domain_error("Baranchik estimator: fitted vector is zero");
    const double rss = (ds.y - fitted).squaredNorm();

    out.within_minimax_range =
        d >= 3 && n - d >= 2 &&
        c < 2.0 * static_cast<double>(d - 2) / static_cast<double>(n - d + 2);
    out.multiplier = 1.0 - c * rss / fss;
    if (positive_part) out.multiplier = std::max(out.multiplier, 0.0);
    const double denom = fss - c * rss;
    out.lambda_hat = denom == 0.0 ? std::numeric_limits<double>::infinity() : c * rss / denom;
    out.coef = out.multiplier * b;
    return out;
}

VectorXd dominating(const Dataset& ds, double eta2) {
    if (!(eta2 >= 0.0)) throw std::invalid_argument("eta2 must be non-negative");
    const Index n = ds.n();
    const Index d = ds.d();
    if (d >= n - 1) return VectorXd::Zero(d);
    if (eta2 < static_cast<double>(d) / static_cast<double>(n - d - 1)) return VectorXd::Zero(d);
    return ols(ds);
}

}  // namespace shrinkrisk
