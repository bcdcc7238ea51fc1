#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "alignlab/error.hpp"
#include "alignlab/linalg.hpp"
#include "support.hpp"

using namespace alignlab;
using namespace testing_support;

namespace {

Mat random_symmetric(int n, unsigned seed) {
  const Mat g = gaussian(n, n, seed);
  return 0.5 * (g + g.transpose());
}

Mat random_spd(int n, unsigned seed) {
  const Mat g = gaussian(n, n, seed);
  return g * g.transpose() + 0.5 * Mat::Identity(n, n);
}

void expect_largest_entry_positive(const Mat& cols) {
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    Eigen::Index i;
    cols.col(j).cwiseAbs().maxCoeff(&i);
    EXPECT_GT(cols(i, j), 0.0) << "column " << j;
  }
}

}  // namespace

TEST(Svd, IdentityHasUnitSingulars) {
  const SvdResult s = svd(Mat::Identity(3, 3));
  EXPECT_TRUE(s.singulars.isApprox(Vec::Ones(3), 1e-15));
}

TEST(Svd, DiagonalGivesSignedPermutations) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 3;
  m(1, 1) = 2;
  const SvdResult s = svd(m);
  EXPECT_NEAR(s.singulars(0), 3.0, 1e-15);
  EXPECT_NEAR(s.singulars(1), 2.0, 1e-15);
  EXPECT_TRUE(s.left.cwiseAbs().isApprox(Mat::Identity(2, 2)));
  EXPECT_TRUE(s.right.cwiseAbs().isApprox(Mat::Identity(2, 2)));
}

TEST(Svd, RandomMatchesJacobiOracle) {
  const Mat m = gaussian(5, 3, 7);
  const SvdResult s = svd(m);
  const Mat rec = s.left * s.singulars.asDiagonal() * s.right.transpose();
  EXPECT_LT((rec - m).norm(), 1e-12);
  const auto ref = jacobi_singulars(m);
  ASSERT_EQ(s.singulars.size(), 3);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(s.singulars(j), ref[j], 1e-12);
  expect_largest_entry_positive(s.left);
}

TEST(Svd, EconomySizeForWideInput) {
  const SvdResult s = svd(gaussian(3, 6, 2));
  EXPECT_EQ(s.left.cols(), 3);
  EXPECT_EQ(s.right.rows(), 6);
  EXPECT_EQ(s.right.cols(), 3);
}

TEST(Svd, RejectsNonFinite) {
  Mat m = Mat::Ones(2, 2);
  m(1, 0) = std::numeric_limits<double>::quiet_NaN();
  expect_kind(ErrorKind::InvalidInput, [&] { svd(m); });
}

TEST(SymEig, Diagonal) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 5;
  m(1, 1) = 1;
  const SpectralDecomp e = sym_eig(m);
  EXPECT_NEAR(e.values(0), 5.0, 1e-15);
  EXPECT_NEAR(e.values(1), 1.0, 1e-15);
  EXPECT_TRUE(e.vectors.isApprox(Mat::Identity(2, 2)));
}

TEST(SymEig, SwapMatrixHandSolved) {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  const SpectralDecomp e = sym_eig(m);
  EXPECT_NEAR(e.values(0), 1.0, 1e-15);
  EXPECT_NEAR(e.values(1), -1.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(e.vectors(0, 0)), r, 1e-15);
  EXPECT_NEAR(e.vectors(0, 0), e.vectors(1, 0), 1e-15);
  EXPECT_NEAR(e.vectors(0, 1), -e.vectors(1, 1), 1e-15);
  expect_largest_entry_positive(e.vectors);
}

TEST(SymEig, ZeroMatrix) {
  const SpectralDecomp e = sym_eig(Mat::Zero(3, 3));
  EXPECT_EQ(e.values.size(), 3);
  EXPECT_EQ(e.values.cwiseAbs().maxCoeff(), 0.0);
}

TEST(SymEig, RejectsAsymmetric) {
  Mat m(2, 2);
  m << 1, 2, 0, 1;
  expect_kind(ErrorKind::NotSymmetric, [&] { sym_eig(m); });
}

TEST(SymEig, PsdReconstructionAndOrthonormality) {
  for (unsigned seed = 0; seed < 50; ++seed) {
    const Mat g = gaussian(8, 5, seed);
    const Mat m = g * g.transpose();
    const SpectralDecomp e = sym_eig(m);
    const Mat rec = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    EXPECT_LE((rec - m).norm(), 1e-10 * m.norm());
    EXPECT_LE((e.vectors.transpose() * e.vectors - Mat::Identity(8, 8)).norm(), 1e-10);
    EXPECT_GE(e.values.minCoeff(), -1e-10 * m.norm());
    for (int i = 1; i < 8; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
  }
}

TEST(GenEig, IdentityMetricIsSymEig) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    const int n = 2 + int(seed % 11);
    const Mat a = random_symmetric(n, seed);
    const int k = 1 + int(seed % n);
    const GenEigResult g = gen_eig_topk(a, Mat::Identity(n, n), k);
    const SpectralDecomp e = sym_eig(a);
    for (int j = 0; j < k; ++j) EXPECT_NEAR(g.values(j), e.values(j), 1e-10);
  }
}

TEST(GenEig, DiagonalRatios) {
  Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
  a(0, 0) = 8;
  a(1, 1) = 2;
  b(0, 0) = 4;
  b(1, 1) = 1;
  const GenEigResult g = gen_eig_topk(a, b, 2);
  EXPECT_NEAR(g.values(0), 2.0, 1e-14);
  EXPECT_NEAR(g.values(1), 2.0, 1e-14);
  EXPECT_LE((a * g.basis - b * g.basis * g.values.asDiagonal()).norm(), 1e-10 * a.norm());
  EXPECT_LE((g.basis.transpose() * b * g.basis - Mat::Identity(2, 2)).norm(), 1e-10);
}

TEST(GenEig, RankTwoMatchesBruteForce) {
  const Mat f = gaussian(5, 2, 3);
  const Mat a = f * f.transpose();
  const Mat b = random_spd(5, 33);
  const GenEigResult g = gen_eig_topk(a, b, 2);
  const auto ref = binv_a_eigenvalues(a, b);
  EXPECT_NEAR(g.values(0), ref[0], 1e-10 * std::abs(ref[0]));
  EXPECT_NEAR(g.values(1), ref[1], 1e-10 * std::abs(ref[0]));
  EXPECT_LE((g.basis.transpose() * b * g.basis - Mat::Identity(2, 2)).norm(), 1e-10);
  EXPECT_LE((a * g.basis - b * g.basis * g.values.asDiagonal()).norm(), 1e-10 * a.norm());
}

TEST(GenEig, TraceIdentityAgainstLu) {
  for (unsigned seed = 0; seed < 50; ++seed) {
    const int n = 2 + int(seed % 9);
    const Mat a = random_symmetric(n, seed + 100);
    const Mat b = random_spd(n, seed + 200);
    const GenEigResult g = gen_eig_topk(a, b, n);
    const double ref = trace_binv_a(a, b);
    EXPECT_NEAR(g.values.sum(), ref, 1e-8 * std::max(1.0, std::abs(ref)));
  }
}

TEST(GenEig, RejectsSingularMetric) {
  Mat b = Mat::Identity(3, 3);
  b(2, 2) = 0.0;
  expect_kind(ErrorKind::IllConditionedMetric, [&] { gen_eig_topk(Mat::Identity(3, 3), b, 1); });
  b(2, 2) = -1.0;
  expect_kind(ErrorKind::IllConditionedMetric, [&] { gen_eig_topk(Mat::Identity(3, 3), b, 1); });
}

TEST(GenEig, RejectsBadK) {
  expect_kind(ErrorKind::InvalidK, [&] { gen_eig_topk(Mat::Identity(3, 3), Mat::Identity(3, 3), 0); });
  expect_kind(ErrorKind::InvalidK, [&] { gen_eig_topk(Mat::Identity(3, 3), Mat::Identity(3, 3), 4); });
}

TEST(PrincipalAngle, SameSpanIsZero) {
  const Mat u = random_orthonormal(6, 2, 1);
  EXPECT_NEAR(principal_angle_dist(u, u), 0.0, 1e-15);
  const Mat rot = random_orthonormal(2, 2, 2);
  EXPECT_NEAR(principal_angle_dist(u, u * rot), 0.0, 1e-12);
}

TEST(PrincipalAngle, OrthogonalAxes) {
  EXPECT_NEAR(principal_angle_dist(Mat::Identity(3, 3).col(0), Mat::Identity(3, 3).col(1)), 1.0, 1e-15);
}

TEST(PrincipalAngle, FortyFiveDegrees) {
  Vec u = Vec::Zero(3), v = Vec::Zero(3);
  u(0) = 1;
  v(0) = v(1) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(principal_angle_dist(u, v), std::sin(M_PI / 4), 1e-15);
}

TEST(PrincipalAngle, ShapeMismatch) {
  expect_kind(ErrorKind::DimensionMismatch, [&] { principal_angle_dist(random_orthonormal(5, 2, 1), random_orthonormal(5, 1, 2)); });
}

TEST(PrincipalAngle, SymmetricAndTriangle) {
  for (unsigned seed = 0; seed < 200; ++seed) {
    const Mat a = random_orthonormal(7, 3, seed), b = random_orthonormal(7, 3, seed + 1000),
              c = random_orthonormal(7, 3, seed + 2000);
    const double ab = principal_angle_dist(a, b), ba = principal_angle_dist(b, a);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_LE(principal_angle_dist(a, c), ab + principal_angle_dist(b, c) + 1e-9);
  }
}

TEST(PinvSolve, IdentityDesign) {
  const Mat y = gaussian(4, 2, 9);
  EXPECT_TRUE(pinv_solve(Mat::Identity(4, 4), y).isApprox(y, 1e-14));
}

TEST(PinvSolve, OrthonormalDesignIsProjection) {
  const Mat x = random_orthonormal(8, 3, 4);
  const Mat y = gaussian(8, 2, 5);
  EXPECT_LT((pinv_solve(x, y) - x.transpose() * y).norm(), 1e-13);
}

TEST(PinvSolve, RankDeficientMatchesRidgeLimit) {
  Mat x(2, 2), y(2, 1);
  x << 1, 1, 1, 1;
  y << 2, 2;
  const Mat b = pinv_solve(x, y);
  EXPECT_NEAR(b(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(b(1, 0), 1.0, 1e-12);
  EXPECT_LT((b - ridge_solve(x, y, 1e-12)).norm(), 1e-9);
}

TEST(PinvSolve, ResidualOrthogonalToDesign) {
  for (unsigned seed = 0; seed < 30; ++seed) {
    const Mat x = gaussian(20, 5, seed), y = gaussian(20, 3, seed + 50);
    const Mat r = y - x * pinv_solve(x, y);
    EXPECT_LE((x.transpose() * r).norm(), 1e-10 * x.norm() * y.norm());
  }
}

TEST(Helpers, BoundaryGap) {
  Vec v(3);
  v << 4, 2, 1;
  EXPECT_DOUBLE_EQ(boundary_gap(v, 1), 0.5);
  EXPECT_DOUBLE_EQ(boundary_gap(v, 2), 0.25);
  EXPECT_TRUE(std::isinf(boundary_gap(v, 3)));
}

TEST(Helpers, OrthonormalBasisAndRank) {
  Mat m = gaussian(6, 3, 3);
  m.col(2) = m.col(0) + m.col(1);
  const Mat q = orthonormal_basis(m);
  EXPECT_EQ(q.cols(), 2);
  EXPECT_EQ(numerical_rank(svd(m).singulars), 2);
  EXPECT_LT((q * q.transpose() * m - m).norm(), 1e-12);
}
