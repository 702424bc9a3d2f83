#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "shrinkrisk/estimators.h"
#include "shrinkrisk/parallel.h"
#include "test_support.h"

namespace shrinkrisk {
namespace {

using testing::max_abs_diff;
using testing::random_spd;
using testing::random_with_condition;

constexpr double kInf = std::numeric_limits<double>::infinity();

Dataset sample(Index n, Index d, double eta2, std::uint64_t seed) {
    return generate_dataset(CanonicalSpec(n, d, eta2), seed);
}

MatrixXd sample_cov(const Dataset& ds) {
    return ds.x.transpose() * ds.x / static_cast<double>(ds.n());
}

/// Dataset whose response has a prescribed split between the column space
/// and its orthogonal complement.
Dataset with_split(Index n, Index d, double fitted_sq, double resid_sq, std::uint64_t seed) {
    CounterRng rng(seed);
    const MatrixXd x = standard_normal_matrix(n, d, rng);
    const VectorXd z = standard_normal_vector(n, rng);
    Eigen::HouseholderQR<MatrixXd> qr(x);
    const MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, d);
    VectorXd f = q * (q.transpose() * z);
    VectorXd r = z - f;
    f *= std::sqrt(fitted_sq) / f.norm();
    r *= std::sqrt(resid_sq) / r.norm();
    return Dataset(x, f + r);
}

TEST(ShrinkageParam, RejectsNegativeAndNan) {
    EXPECT_THROW(ShrinkageParam(-1e-12), std::invalid_argument);
    EXPECT_THROW(ShrinkageParam(std::nan("")), std::invalid_argument);
    EXPECT_NO_THROW(ShrinkageParam(kInf));
}

TEST(ShrinkageParam, InfinityShrinksToZero) {
    EXPECT_TRUE(ShrinkageParam::infinity().is_infinite());
    EXPECT_EQ(ShrinkageParam::infinity().shrink_factor(), 0.0);
    EXPECT_EQ(ShrinkageParam(kInf), ShrinkageParam::infinity());
    EXPECT_EQ(ShrinkageParam(0.0).shrink_factor(), 1.0);
    EXPECT_EQ(ShrinkageParam(1.0).shrink_factor(), 0.5);
}

TEST(Ols, IdentityDesignReturnsResponse) {
    CounterRng rng(1);
    const VectorXd y = standard_normal_vector(6, rng);
    const Dataset ds(MatrixXd::Identity(6, 6), y);
    EXPECT_LT(max_abs_diff(ols(ds), y), 1e-14);
}

TEST(Ols, NoiselessRecovery) {
    CounterRng rng(2);
    const MatrixXd x = standard_normal_matrix(40, 8, rng);
    const VectorXd beta = standard_normal_vector(8, rng);
    EXPECT_LT(max_abs_diff(ols(Dataset(x, x * beta)), beta), 1e-10);
}

TEST(Ols, WideDesignUsesMinimumNormInterpolant) {
    CounterRng rng(3);
    const MatrixXd x = standard_normal_matrix(10, 25, rng);
    const VectorXd y = standard_normal_vector(10, rng);
    const VectorXd b = ols(Dataset(x, y));
    const VectorXd expected = x.transpose() * (x * x.transpose()).ldlt().solve(y);
    EXPECT_LT(max_abs_diff(b, expected), 1e-8);
    EXPECT_LT((x * b - y).norm(), 1e-8);
}

TEST(Ols, RankDeficientMatchesCompleteOrthogonalDecomposition) {
    CounterRng rng(4);
    MatrixXd x = standard_normal_matrix(30, 6, rng);
    x.col(5) = x.col(0) - 2.0 * x.col(1);
    const VectorXd y = standard_normal_vector(30, rng);
    const VectorXd b = ols(Dataset(x, y));
    const VectorXd expected = x.completeOrthogonalDecomposition().solve(y);
    EXPECT_LT(max_abs_diff(b, expected), 1e-8);
}

TEST(Ols, FittedValuesAreProjection) {
    const Dataset ds = sample(50, 10, 2.0, 5);
    const VectorXd resid = ds.y - ds.x * ols(ds);
    EXPECT_LT((ds.x.transpose() * resid).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Ols, NormalEquationsOverloadAgrees) {
    const Dataset ds = sample(60, 12, 1.0, 6);
    const NormalEquations ne = NormalEquations::from(ds);
    EXPECT_LT(max_abs_diff(ols(ne), ols(ds)), 1e-10);
}

TEST(JamesStein, SpecialLambdas) {
    const Dataset ds = sample(40, 10, 1.0, 7);
    const VectorXd b = ols(ds);
    EXPECT_EQ(james_stein(ds, ShrinkageParam(0.0)), b);
    EXPECT_LT(max_abs_diff(james_stein(ds, ShrinkageParam(1.0)), 0.5 * b), 1e-15);
    EXPECT_EQ(james_stein(ds, ShrinkageParam::infinity()), VectorXd::Zero(10));
}

TEST(JamesStein, NormStrictlyDecreasingInLambda) {
    const Dataset ds = sample(40, 10, 1.0, 8);
    double prev = kInf;
    for (double lam : {0.0, 1e-6, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 1e3, 1e6}) {
        const double norm = james_stein(ds, ShrinkageParam(lam)).norm();
        EXPECT_LT(norm, prev) << "lambda = " << lam;
        prev = norm;
    }
}

TEST(Ridge, ZeroLambdaIsOls) {
    CounterRng rng(9);
    const Dataset ds = sample(40, 10, 1.0, 9);
    EXPECT_EQ(ridge(ds, ShrinkageParam(0.0), random_spd(10, rng)), ols(ds));
}

TEST(Ridge, MatchesDirectSolve) {
    CounterRng rng(10);
    const Dataset ds = sample(30, 8, 1.0, 10);
    const MatrixXd sigma = random_spd(8, rng);
    const double lam = 0.7;
    const VectorXd expected =
        (ds.x.transpose() * ds.x + 30.0 * lam * sigma).fullPivLu().solve(ds.x.transpose() * ds.y);
    EXPECT_LT(max_abs_diff(ridge(ds, ShrinkageParam(lam), sigma), expected), 1e-10);
}

TEST(Ridge, WideDesignIsWellDefined) {
    const Dataset ds = sample(10, 30, 1.0, 11);
    const MatrixXd id = MatrixXd::Identity(30, 30);
    const VectorXd b = ridge(ds, ShrinkageParam(0.5), id);
    const VectorXd dual = ds.x.transpose() * (ds.x * ds.x.transpose() + 5.0 * MatrixXd::Identity(10, 10))
                                                .ldlt()
                                                .solve(ds.y);
    EXPECT_LT(max_abs_diff(b, dual), 1e-10);
}

TEST(Ridge, SampleCovarianceReducesToJamesStein) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Dataset ds = sample(50, 20, 2.0, 100 + s);
        const ShrinkageParam lam(0.1 + 0.3 * static_cast<double>(s));
        EXPECT_LT(max_abs_diff(ridge(ds, lam, sample_cov(ds)), james_stein(ds, lam)), 1e-9);
    }
}

TEST(Ridge, ScalarDesign) {
    const Index n = 16;
    CounterRng rng(12);
    const VectorXd y = standard_normal_vector(n, rng);
    const Dataset ds(MatrixXd::Ones(n, 1), y);
    const double lam = 0.25;
    const VectorXd b = ridge(ds, ShrinkageParam(lam), MatrixXd::Identity(1, 1));
    EXPECT_NEAR(b(0), y.mean() / (1.0 + lam), 1e-14);
}

TEST(Ridge, LambdaLimits) {
    const Dataset ds = sample(40, 10, 1.0, 13);
    const MatrixXd id = MatrixXd::Identity(10, 10);
    EXPECT_LT(max_abs_diff(ridge(ds, ShrinkageParam(1e-8), id), ols(ds)), 1e-6);
    EXPECT_LT(ridge(ds, ShrinkageParam(1e8), id).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_EQ(ridge(ds, ShrinkageParam::infinity(), id), VectorXd::Zero(10));
}

TEST(Ridge, NormalEquationsOverloadAgrees) {
    CounterRng rng(14);
    const Dataset ds = sample(40, 10, 1.0, 14);
    const MatrixXd sigma = random_spd(10, rng);
    const NormalEquations ne = NormalEquations::from(ds);
    EXPECT_LT(max_abs_diff(ridge(ne, ShrinkageParam(0.3), sigma), ridge(ds, ShrinkageParam(0.3), sigma)),
              1e-12);
}

TEST(Ridge, RejectsMisshapenCovariance) {
    const Dataset ds = sample(20, 4, 1.0, 15);
    EXPECT_THROW(ridge(ds, ShrinkageParam(1.0), MatrixXd::Identity(3, 3)), std::invalid_argument);
}

TEST(Marginal, SampleCovarianceReducesToOls) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Dataset ds = sample(50, 20, 2.0, 200 + s);
        EXPECT_LT(max_abs_diff(marginal(ds, sample_cov(ds)), ols(ds)), 1e-9);
    }
}

TEST(Marginal, ZeroResponseGivesZero) {
    const Dataset base = sample(20, 5, 1.0, 16);
    const Dataset ds(base.x, VectorXd::Zero(20));
    EXPECT_EQ(marginal(ds, MatrixXd::Identity(5, 5)), VectorXd::Zero(5));
}

TEST(Marginal, LinearInInverseCovariance) {
    const Dataset ds = sample(20, 5, 1.0, 17);
    const VectorXd one = marginal(ds, MatrixXd::Identity(5, 5));
    EXPECT_LT(max_abs_diff(one, ds.x.transpose() * ds.y / 20.0), 1e-14);
    EXPECT_LT(max_abs_diff(marginal(ds, 2.0 * MatrixXd::Identity(5, 5)), 0.5 * one), 1e-15);
}

TEST(MarginalShrinkage, SpecialLambdas) {
    CounterRng rng(18);
    const Dataset ds = sample(20, 5, 1.0, 18);
    const MatrixXd sigma = random_spd(5, rng);
    EXPECT_EQ(marginal_shrinkage(ds, ShrinkageParam(0.0), sigma), marginal(ds, sigma));
    EXPECT_EQ(marginal_shrinkage(ds, ShrinkageParam::infinity(), sigma), VectorXd::Zero(5));
    const VectorXd half = marginal_shrinkage(ds, ShrinkageParam(1.0), MatrixXd::Identity(5, 5));
    EXPECT_LT(max_abs_diff(half, 0.5 * ds.x.transpose() * ds.y / 20.0), 1e-15);
}

TEST(EstimateSnr, ClampBoundaryGivesZero) {
    // |y|^2 = n sigma2_hat exactly when |Py|^2 = |y - Py|^2 d / (n - d).
    const Index n = 50;
    const Index d = 10;
    const double resid_sq = 40.0;
    const Dataset ds = with_split(n, d, resid_sq * d / (n - d), resid_sq, 19);
    const AdaptiveState st = estimate_snr(ds);
    EXPECT_NEAR(st.sigma2_hat, 1.0, 1e-12);
    EXPECT_LT(st.eta2_hat, 1e-12);
}

TEST(EstimateSnr, OrthogonalResponseClampsAtZero) {
    const Dataset ds = with_split(30, 5, 0.0, 10.0, 20);
    EXPECT_EQ(estimate_snr(ds).eta2_hat, 0.0);
}

TEST(EstimateSnr, MatchesHandComputedSplit) {
    // n = 40, d = 8: sigma2_hat = 64 / 32 = 2, eta2_hat = (64 + 96) / 80 - 1 = 1.
    const Dataset ds = with_split(40, 8, 96.0, 64.0, 21);
    const AdaptiveState st = estimate_snr(ds);
    EXPECT_NEAR(st.sigma2_hat, 2.0, 1e-12);
    EXPECT_NEAR(st.eta2_hat, 1.0, 1e-12);
}

TEST(EstimateSnr, RequiresMoreSamplesThanDimensions) {
    EXPECT_THROW(estimate_snr(sample(10, 10, 1.0, 22)), std::domain_error);
    EXPECT_THROW(estimate_snr(sample(10, 15, 1.0, 22)), std::domain_error);
    EXPECT_THROW(estimate_snr_fitted_form(sample(10, 10, 1.0, 22)), std::domain_error);
}

TEST(EstimateSnr, BothFormsAgree) {
    CounterRng rng(23);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Index d = 1 + static_cast<Index>(s % 7) * 4;
        CounterRng local = CounterRng::stream(23, s);
        const VectorXd beta = standard_normal_vector(d, local);
        const ModelSpec spec(60, d, beta, random_spd(d, rng), 0.5 + static_cast<double>(s));
        const Dataset ds = generate_dataset(spec, 300 + s);
        const AdaptiveState st = estimate_snr(ds);
        EXPECT_NEAR(st.eta2_hat, estimate_snr_fitted_form(ds), 1e-9 * std::max(1.0, st.eta2_hat));
        const AdaptiveState st_ne = estimate_snr(NormalEquations::from(ds));
        EXPECT_NEAR(st_ne.sigma2_hat, st.sigma2_hat, 1e-9 * st.sigma2_hat);
        EXPECT_NEAR(st_ne.eta2_hat, st.eta2_hat, 1e-9 * std::max(1.0, st.eta2_hat));
    }
}

TEST(EstimateSnr, MonteCarloMeanNearTruth) {
    const CanonicalSpec spec(2000, 500, 2.0);
    const auto values = run_indexed(200, 1, [&](std::size_t r) {
        return estimate_snr(NormalEquations::from(generate_dataset(spec, 5000 + r))).eta2_hat;
    });
    const MeanEstimate m = summarize(values);
    EXPECT_LT(std::abs(m.mean - 2.0), 3.0 * m.std_error) << "mean " << m.mean << " se " << m.std_error;
}

TEST(AdaptiveLambdas, Substitutions) {
    const AdaptiveState ridge_case{1.0, 100.0 / 400.0};
    EXPECT_DOUBLE_EQ(adaptive_ridge_lambda(ridge_case, 400, 100).value(), 1.0);
    const AdaptiveState js_case{1.0, 100.0 / 299.0};
    EXPECT_NEAR(adaptive_js_lambda(js_case, 400, 100).value(), 1.0, 1e-15);
    const AdaptiveState ms_case{1.0, 1.0};
    EXPECT_NEAR(adaptive_marginal_lambda(ms_case, 100, 50).value(), 1.01, 1e-15);
    const AdaptiveState zero{1.0, 0.0};
    EXPECT_TRUE(adaptive_ridge_lambda(zero, 100, 10).is_infinite());
    EXPECT_TRUE(adaptive_js_lambda(zero, 100, 10).is_infinite());
    EXPECT_TRUE(adaptive_marginal_lambda(zero, 100, 10).is_infinite());
    EXPECT_THROW(adaptive_js_lambda(js_case, 11, 10), std::domain_error);
}

TEST(AdaptiveEstimators, ZeroSnrEstimateGivesZeroVector) {
    const Dataset ds = with_split(30, 5, 0.0, 10.0, 24);
    const MatrixXd id = MatrixXd::Identity(5, 5);
    EXPECT_EQ(adaptive_ridge(ds, id), VectorXd::Zero(5));
    EXPECT_EQ(adaptive_james_stein(ds), VectorXd::Zero(5));
    EXPECT_EQ(adaptive_marginal_shrinkage(ds, id), VectorXd::Zero(5));
}

TEST(AdaptiveEstimators, JamesSteinHalvesOlsAtUnitLambda) {
    // eta2_hat = d / (n - d - 1) = 8 / 31 makes the plug-in lambda 1.
    const Index n = 40;
    const Index d = 8;
    const double resid_sq = 64.0;
    const double s2 = resid_sq / (n - d);
    const double target = 8.0 / 31.0;
    const double yty = (target + 1.0) * n * s2;
    const Dataset ds = with_split(n, d, yty - resid_sq, resid_sq, 25);
    EXPECT_NEAR(adaptive_js_lambda(estimate_snr(ds), n, d).value(), 1.0, 1e-12);
    EXPECT_LT(max_abs_diff(adaptive_james_stein(ds), 0.5 * ols(ds)), 1e-12);
}

TEST(AdaptiveEstimators, ComposePlugInLambda) {
    CounterRng rng(26);
    const MatrixXd sigma = random_spd(10, rng);
    const Dataset ds = generate_dataset(ModelSpec(60, 10, standard_normal_vector(10, rng), sigma, 1.0), 26);
    const AdaptiveState st = estimate_snr(ds);
    EXPECT_EQ(adaptive_ridge(ds, sigma), ridge(ds, adaptive_ridge_lambda(st, 60, 10), sigma));
    EXPECT_EQ(adaptive_james_stein(ds), james_stein(ds, adaptive_js_lambda(st, 60, 10)));
    EXPECT_EQ(adaptive_marginal_shrinkage(ds, sigma),
              marginal_shrinkage(ds, adaptive_marginal_lambda(st, 60, 10), sigma));
}

TEST(AdaptiveEstimators, RejectUnsupportedRegime) {
    const Dataset square = sample(20, 20, 1.0, 27);
    const MatrixXd id = MatrixXd::Identity(20, 20);
    EXPECT_THROW(adaptive_ridge(square, id), std::domain_error);
    EXPECT_THROW(adaptive_marginal_shrinkage(square, id), std::domain_error);
    EXPECT_THROW(adaptive_james_stein(sample(20, 19, 1.0, 27)), std::domain_error);
}

TEST(Baranchik, ZeroResidualKeepsOls) {
    CounterRng rng(28);
    const MatrixXd x = standard_normal_matrix(30, 6, rng);
    const VectorXd beta = standard_normal_vector(6, rng);
    const BaranchikResult r = baranchik(Dataset(x, x * beta), 0.5);
    EXPECT_NEAR(r.multiplier, 1.0, 1e-12);
    EXPECT_LT(max_abs_diff(r.coef, beta), 1e-10);
}

TEST(Baranchik, MultiplierHitsZero) {
    // fitted |Xb|^2 = 12, RSS = 48: c = 1/4 zeroes the multiplier exactly.
    const Dataset ds = with_split(40, 8, 12.0, 48.0, 29);
    const BaranchikResult r = baranchik(ds, 0.25);
    EXPECT_NEAR(r.multiplier, 0.0, 1e-12);
    EXPECT_LT(r.coef.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Baranchik, LambdaHatMatchesShrinkageForm) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Dataset ds = sample(80, 20, 2.0, 400 + s);
        const BaranchikResult r = baranchik(ds, 0.2);
        ASSERT_GT(r.multiplier, 0.0);
        EXPECT_LT(max_abs_diff(r.coef, ols(ds) / (1.0 + r.lambda_hat)), 1e-9);
    }
}

TEST(Baranchik, PositivePartClamps) {
    const Dataset ds = with_split(40, 8, 12.0, 48.0, 30);
    const BaranchikResult raw = baranchik(ds, 1.0);
    EXPECT_NEAR(raw.multiplier, -3.0, 1e-12);
    EXPECT_LT(max_abs_diff(raw.coef, -3.0 * ols(ds)), 1e-10);
    const BaranchikResult clamped = baranchik(ds, 1.0, true);
    EXPECT_EQ(clamped.multiplier, 0.0);
    EXPECT_EQ(clamped.coef, VectorXd::Zero(8));
}

TEST(Baranchik, MinimaxRangeFlag) {
    const Dataset ds = sample(48, 10, 1.0, 31);
    // 2(d-2)/(n-d+2) = 16/40 = 0.4
    EXPECT_TRUE(baranchik(ds, 0.39).within_minimax_range);
    EXPECT_FALSE(baranchik(ds, 0.41).within_minimax_range);
    EXPECT_FALSE(baranchik(sample(48, 2, 1.0, 31), 0.01).within_minimax_range);
}

TEST(Baranchik, RejectsInvalidInput) {
    const Dataset ds = sample(30, 5, 1.0, 32);
    EXPECT_THROW(baranchik(ds, 0.0), std::invalid_argument);
    EXPECT_THROW(baranchik(ds, -1.0), std::invalid_argument);
    EXPECT_THROW(baranchik(sample(5, 5, 1.0, 32), 0.1), std::invalid_argument);
    EXPECT_THROW(baranchik(Dataset(ds.x, VectorXd::Zero(30)), 0.1), std::domain_error);
}

TEST(Dominating, Branches) {
    const Dataset wide = sample(20, 19, 5.0, 33);
    EXPECT_EQ(dominating(wide, 100.0), VectorXd::Zero(19));
    const Dataset ds = sample(101, 50, 1.0, 34);
    EXPECT_EQ(dominating(ds, 0.0), VectorXd::Zero(50));
    EXPECT_EQ(dominating(ds, 0.99), VectorXd::Zero(50));
    EXPECT_EQ(dominating(ds, 1.0), ols(ds));
    EXPECT_EQ(dominating(ds, 50.0), ols(ds));
}

// LS equivariance: A^{-1} b(y, X, Sigma) = b(y, XA, A' Sigma A) and
// b(y, X, Sigma) = b(ty, tX, t^2 Sigma).
class Equivariance : public ::testing::TestWithParam<int> {};

TEST_P(Equivariance, LinearTransforms) {
    const int seed = GetParam();
    CounterRng rng(1000 + seed);
    const Index n = 60;
    const Index d = 12;
    const MatrixXd sigma = random_spd(d, rng);
    const ModelSpec spec(n, d, standard_normal_vector(d, rng), sigma, 1.5);
    const Dataset ds = generate_dataset(spec, 2000 + seed);
    const MatrixXd a = random_with_condition(d, 100.0, rng);
    const Dataset dt = equivariance_transform(ds, a);
    const MatrixXd sigma_t = a.transpose() * sigma * a;
    const Eigen::PartialPivLU<MatrixXd> lu(a);
    auto back = [&](const VectorXd& b) { return VectorXd(lu.solve(b)); };
    const ShrinkageParam lam(0.4);
    auto rel = [](const VectorXd& got, const VectorXd& want) {
        return max_abs_diff(got, want) / std::max(1.0, want.cwiseAbs().maxCoeff());
    };

    EXPECT_LT(rel(ols(dt), back(ols(ds))), 1e-8);
    EXPECT_LT(rel(james_stein(dt, lam), back(james_stein(ds, lam))), 1e-8);
    EXPECT_LT(rel(ridge(dt, lam, sigma_t), back(ridge(ds, lam, sigma))), 1e-8);
    EXPECT_LT(rel(marginal(dt, sigma_t), back(marginal(ds, sigma))), 1e-8);
    EXPECT_LT(rel(marginal_shrinkage(dt, lam, sigma_t), back(marginal_shrinkage(ds, lam, sigma))), 1e-8);
    EXPECT_LT(rel(adaptive_ridge(dt, sigma_t), back(adaptive_ridge(ds, sigma))), 1e-8);
    EXPECT_LT(rel(adaptive_james_stein(dt), back(adaptive_james_stein(ds))), 1e-8);
    EXPECT_LT(rel(adaptive_marginal_shrinkage(dt, sigma_t), back(adaptive_marginal_shrinkage(ds, sigma))),
              1e-8);
    EXPECT_LT(rel(baranchik(dt, 0.2).coef, back(baranchik(ds, 0.2).coef)), 1e-8);
}

TEST_P(Equivariance, Scalings) {
    const int seed = GetParam();
    CounterRng rng(3000 + seed);
    const Index d = 10;
    const MatrixXd sigma = random_spd(d, rng);
    const Dataset ds = generate_dataset(ModelSpec(50, d, standard_normal_vector(d, rng), sigma, 1.0), seed);
    const ShrinkageParam lam(0.7);
    for (double t : {-2.0, 0.5, 10.0}) {
        const Dataset dt(t * ds.x, t * ds.y);
        const MatrixXd st = t * t * sigma;
        auto rel = [](const VectorXd& got, const VectorXd& want) {
            return max_abs_diff(got, want) / std::max(1.0, want.cwiseAbs().maxCoeff());
        };
        EXPECT_LT(rel(ols(dt), ols(ds)), 1e-8) << "t = " << t;
        EXPECT_LT(rel(james_stein(dt, lam), james_stein(ds, lam)), 1e-8);
        EXPECT_LT(rel(ridge(dt, lam, st), ridge(ds, lam, sigma)), 1e-8);
        EXPECT_LT(rel(marginal(dt, st), marginal(ds, sigma)), 1e-8);
        EXPECT_LT(rel(marginal_shrinkage(dt, lam, st), marginal_shrinkage(ds, lam, sigma)), 1e-8);
        EXPECT_LT(rel(adaptive_ridge(dt, st), adaptive_ridge(ds, sigma)), 1e-8);
        EXPECT_LT(rel(adaptive_james_stein(dt), adaptive_james_stein(ds)), 1e-8);
        EXPECT_LT(rel(adaptive_marginal_shrinkage(dt, st), adaptive_marginal_shrinkage(ds, sigma)), 1e-8);
        EXPECT_LT(rel(baranchik(dt, 0.2).coef, baranchik(ds, 0.2).coef), 1e-8);
    }
}

TEST_P(Equivariance, OrthogonalRidgeIdentity) {
    const int seed = GetParam();
    CounterRng rng(4000 + seed);
    const Index d = 8;
    const MatrixXd sigma = random_spd(d, rng);
    const Dataset ds = generate_dataset(ModelSpec(40, d, standard_normal_vector(d, rng), sigma, 1.0), seed);
    const MatrixXd q = testing::random_orthogonal(d, rng);
    const Dataset dt = equivariance_transform(ds, q);
    const VectorXd lhs = q.transpose() * ridge(ds, ShrinkageParam(0.3), sigma);
    const VectorXd rhs = ridge(dt, ShrinkageParam(0.3), q.transpose() * sigma * q);
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-8);
}

INSTANTIATE_TEST_SUITE_P(RandomTransforms, Equivariance, ::testing::Range(0, 5));

}  // namespace
}  // namespace shrinkrisk
