#include <gtest/gtest.h>

#include <cmath>

#include "matdiff/checks.hpp"

using namespace matdiff;

TEST(Inq2, HandExamples) {
  const SymmetricMatrix a{{1.0, 2.0}, {2.0, -3.0}};
  EXPECT_NEAR(inq2_violation(a, a), 0.0, 1e-12);
  // A = -B: gap is 4A^2, smallest eigenvalue 4 lambda_min(A)^2.
  const double lmin = spectral_decompose(a).eigenvalues[0];
  const double lmax = spectral_decompose(a).eigenvalues[1];
  EXPECT_NEAR(inq2_violation(a, a * -1.0), -4.0 * std::min(lmin * lmin, lmax * lmax), 1e-10);
  EXPECT_NEAR(inq2_violation(SymmetricMatrix::identity(3), SymmetricMatrix::zero(3)), -1.0, 1e-14);
}

TEST(Inq2, RandomSuites) {
  for (std::size_t d : {2U, 3U, 5U, 8U}) {
    const CheckReport r = check_inq2(2000, d, 1);
    EXPECT_TRUE(r.pass) << r.name << " " << r.worst_violation;
    EXPECT_EQ(r.name, "inq2_d" + std::to_string(d));
    EXPECT_EQ(r.samples, 2000U);
    EXPECT_GE(r.worst_violation, 0.0);
  }
}

TEST(InqNice, EigenvectorAndIdentityAreTight) {
  const SymmetricMatrix a{{2.0, 1.0}, {1.0, 2.0}};
  EXPECT_NEAR(inq_nice_violation(a, UnitVector({1.0, 1.0})), 0.0, 1e-13);
  EXPECT_NEAR(inq_nice_violation(SymmetricMatrix::identity(4), UnitVector({1.0, 2.0, 3.0, 4.0})), 0.0, 1e-14);
  // x = e1: (2)^2 - (4 + 1) = -1.
  EXPECT_NEAR(inq_nice_violation(a, UnitVector::basis(2, 0)), -1.0, 1e-14);
}

TEST(InqNice, RandomSuites) {
  for (std::size_t d : {2U, 3U, 5U, 8U}) EXPECT_TRUE(check_inq_nice(2000, d, 2).pass);
}

TEST(PropCauchy, ConstantProcessReducesToQuadraticForm) {
  const SymmetricMatrix a{{1.0, -0.5, 0.0}, {-0.5, 2.0, 1.0}, {0.0, 1.0, -1.0}};
  const UnitVector x({0.3, -1.0, 2.0});
  const std::vector<SymmetricMatrix> steps(8, a);
  const double t = 8 * 0.125;
  EXPECT_NEAR(prop_cauchy_violation(steps, 0.125, x), t * t * inq_nice_violation(a, x), 1e-13);
  const std::vector<SymmetricMatrix> one(1, a);
  EXPECT_NEAR(prop_cauchy_violation(one, 0.5, x), 0.25 * inq_nice_violation(a, x), 1e-14);
}

TEST(PropCauchy, RandomSuites) {
  for (std::size_t d : {2U, 3U, 5U, 8U}) EXPECT_TRUE(check_prop_cauchy(1000, d, 16, 3).pass);
  EXPECT_THROW(check_prop_cauchy(10, 2, 0, 3), std::invalid_argument);
  EXPECT_THROW(check_inq2(0, 2, 3), std::invalid_argument);
}

TEST(PropCauchy, DeterministicAcrossWorkerCounts) {
  set_worker_count(1);
  const CheckReport a = check_prop_cauchy(3000, 3, 8, 4);
  set_worker_count(3);
  const CheckReport b = check_prop_cauchy(3000, 3, 8, 4);
  set_worker_count(0);
  EXPECT_EQ(a, b);
}

TEST(Lipschitz, IdentityAndAffine) {
  const LipschitzEstimate id = estimate_lipschitz(functions::identity(), 500, 3, 5);
  EXPECT_NEAR(id.sampled_ratio_max, 1.0, 1e-9);
  const LipschitzEstimate af = estimate_lipschitz(functions::affine(-2.0, 0.5), 500, 4, 5);
  EXPECT_NEAR(af.sampled_ratio_max, 4.0, 1e-9);
  EXPECT_EQ(af.sample_count + af.skipped, 500U);
}

TEST(Lipschitz, RunningMaxIsMonotone) {
  const LipschitzEstimate e = estimate_lipschitz(functions::tanh(), 400, 3, 6);
  ASSERT_EQ(e.running_max.size(), e.sample_count);
  for (std::size_t i = 1; i < e.running_max.size(); ++i) EXPECT_GE(e.running_max[i], e.running_max[i - 1]);
  EXPECT_LE(e.sampled_ratio_max, 1.0 + 1e-12);
}

TEST(Lipschitz, SqrtRatioGrowsNearZero) {
  // d = 1: ratio (sqrt a - sqrt b)^2 / (a - b)^2 = 1 / (sqrt a + sqrt b)^2, so
  // shrinking the spectrum by 1e-2 multiplies every ratio by 1e2.
  const LipschitzEstimate far = estimate_lipschitz(functions::sqrt(), 400, 1, 7, {SpectrumKind::psd, 1.0});
  const LipschitzEstimate near = estimate_lipschitz(functions::sqrt(), 400, 1, 7, {SpectrumKind::psd, 1e-2});
  ASSERT_EQ(far.skipped, near.skipped);
  EXPECT_NEAR(near.sampled_ratio_max / far.sampled_ratio_max, 100.0, 1e-6);
  EXPECT_GT(far.sampled_ratio_max, 1.0);
}

TEST(Isometry, DiagonalExampleMatchesFourT) {
  const SymmetricMatrix a = SymmetricMatrix::diagonal(std::vector<double>{1.0, 2.0});
  const Vector e2{0.0, 1.0};
  const CheckReport r = mc_isometry(a, SymmetricMatrix::identity(2), e2, e2, 20000, TimeGrid(1.0, 16), 8);
  EXPECT_DOUBLE_EQ(*r.expected, 4.0);
  EXPECT_TRUE(r.pass) << *r.estimate << " +- " << *r.standard_error;
  EXPECT_EQ(r.name, "isometry");
}

TEST(Isometry, OrthogonalVectorsAndGeneralIntegrands) {
  const SymmetricMatrix a{{1.0, 0.3}, {0.3, -0.5}};
  const SymmetricMatrix c{{2.0, -1.0}, {-1.0, 0.5}};
  const CheckReport r = mc_isometry(a, c, {0.6, 0.8}, {-0.8, 0.6}, 20000, TimeGrid(0.5, 8), 9);
  EXPECT_TRUE(r.pass) << *r.estimate << " vs " << *r.expected;
}

TEST(MomentBeta, OneDimensionalIsExactlyTwo) {
  const auto one = SymmetricMatrix::identity(1);
  const MomentBetaEstimate e = estimate_moment_beta(one, one, 100, TimeGrid(1.0, 8), UnitVector({1.0}), 10);
  EXPECT_NEAR(e.beta, 2.0, 1e-12);
  EXPECT_EQ(e.per_time.size(), 8U);
}

TEST(MomentBeta, ScaleInvariant) {
  const auto id = SymmetricMatrix::identity(2);
  const UnitVector x({1.0, 0.0});
  const MomentBetaEstimate base = estimate_moment_beta(id, id, 2000, TimeGrid(1.0, 4), x, 11);
  const MomentBetaEstimate scaled = estimate_moment_beta(id * 3.0, id * 0.5, 2000, TimeGrid(1.0, 4), x, 11);
  EXPECT_NEAR(base.beta, scaled.beta, 1e-10);
}

TEST(MomentBeta, TwoDimensionalNearThree) {
  const auto id = SymmetricMatrix::identity(2);
  const MomentBetaEstimate e = estimate_moment_beta(id, id, 20000, TimeGrid(1.0, 4), UnitVector({1.0, 0.0}), 12);
  EXPECT_NEAR(e.beta, 3.0, 0.3);
}

TEST(TraceMoment, ExpectedValues) {
  WishartParams zero_alpha{2, 0.0, SymmetricMatrix::identity(2), 1e6};
  const CheckReport r0 = mc_trace_moment(zero_alpha, 1000, TimeGrid(1.0, 32), 13);
  EXPECT_DOUBLE_EQ(*r0.expected, 2.0);
  EXPECT_TRUE(r0.pass);
  WishartParams scalar{1, 2.0, SymmetricMatrix::identity(1), 1e6};
  const CheckReport r1 = mc_trace_moment(scalar, 2000, TimeGrid(0.5, 32), 14);
  EXPECT_DOUBLE_EQ(*r1.expected, 2.0);
  EXPECT_TRUE(r1.pass) << *r1.estimate;
}

TEST(Report, JsonRoundTrip) {
  CheckReport r;
  r.name = "x";
  r.samples = 12;
  r.worst_violation = 1.5e-13;
  r.tolerance = 1e-12;
  r.estimate = 4.01;
  r.standard_error = 0.02;
  r.details = {1.0, 2.0};
  r.finalize();
  const nlohmann::json j = r;
  EXPECT_EQ(j.at("pass"), true);
  EXPECT_FALSE(j.contains("expected"));
  EXPECT_EQ(j.get<CheckReport>(), r);
}
