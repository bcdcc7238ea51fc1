#pragma once

#include <vector>

#include <Eigen/Dense>

#include "alignlab/tolerances.hpp"

namespace alignlab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct SvdResult {
  Mat left;        // rows × r, orthonormal columns
  Vec singulars;   // r values, descending, ≥ 0
  Mat right;       // cols × r, orthonormal columns
};

// Eigendecomposition of a symmetric matrix: m = vectors·diag(values)·vectorsᵀ.
struct SpectralDecomp {
  Mat vectors;
  Vec values;  // descending
};

// Top-K solution of a·x = ℓ·b·x with basisᵀ·b·basis = I.
struct GenEigResult {
  Mat basis;
  Vec values;  // descending
};

// Economy SVD, r = min(rows, cols). Columns follow the sign convention below.
SvdResult svd(const Mat& m);

// Symmetric eigendecomposition, values descending.
SpectralDecomp sym_eig(const Mat& m, const Tolerances& tol = kTol);

// Top-k generalized eigenpairs by whitening the metric:
//   b = P_b·D_b·P_bᵀ,  H = D_b^{-1/2}·P_bᵀ·a·P_b·D_b^{-1/2},
//   basis = P_b·D_b^{-1/2}·(P_H)[:, :k],  values = top-k eigenvalues of H.
GenEigResult gen_eig_topk(const Mat& a, const Mat& b, int k, const Tolerances& tol = kTol);

// sin of the largest principal angle between span(u) and span(v); both must
// have orthonormal columns and the same shape.
double principal_angle_dist(const Mat& u, const Mat& v);

// Minimum-norm least-squares coefficients for x·B ≈ y (truncated SVD).
Mat pinv_solve(const Mat& x, const Mat& y, const Tolerances& tol = kTol);

// Orthonormal basis for the column space of m (left singular vectors above the rank cut).
Mat orthonormal_basis(const Mat& m, const Tolerances& tol = kTol);

// Numerical rank via the singular-value cut.
int numerical_rank(const Vec& singulars, const Tolerances& tol = kTol);

// Flip each column so that its largest-magnitude entry is positive. Returns
// the applied signs so paired factors (e.g. SVD right vectors) can follow.
std::vector<double> canonicalize_signs(Mat& columns);

// Relative gap (values[k-1] − values[k]) / values[0] at the top-k boundary;
// +inf when k covers every value.
double boundary_gap(const Vec& descending_values, int k);

bool all_finite(const Mat& m);

}  // namespace alignlab
