#pragma once

// Test-only reference implementations. Each one takes a different numerical
// route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "alignlab/dataset.hpp"
#include "alignlab/error.hpp"
#include "alignlab/probe.hpp"

namespace testing_support {

using alignlab::Dataset;
using alignlab::Mat;
using alignlab::Vec;

inline void expect_kind(alignlab::ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << alignlab::to_string(kind);
  } catch (const alignlab::Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

inline Mat gaussian(int rows, int cols, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = nd(gen);
  return m;
}

inline Mat centered(Mat m) {
  m.rowwise() -= m.colwise().mean();
  return m;
}

// Centered, unit population variance columns.
inline Mat standardized(Mat m) {
  m = centered(m);
  for (int j = 0; j < m.cols(); ++j) m.col(j) /= std::sqrt(m.col(j).squaredNorm() / double(m.rows()));
  return m;
}

inline Mat random_orthonormal(int rows, int cols, unsigned seed) {
  Eigen::HouseholderQR<Mat> qr(gaussian(rows, cols, seed));
  return qr.householderQ() * Mat::Identity(rows, cols);
}

// Random standardized dataset (no latent structure).
inline Dataset random_dataset(int n, int d1, int d2, int c1, int c2, unsigned seed) {
  Dataset d;
  d.x1 = centered(gaussian(n, d1, seed));
  d.x2 = centered(gaussian(n, d2, seed + 1000));
  d.y1 = standardized(d.x1 * gaussian(d1, c1, seed + 2000) + gaussian(n, c1, seed + 3000));
  d.y2 = standardized(d.x2 * gaussian(d2, c2, seed + 4000) + gaussian(n, c2, seed + 5000));
  d.standardized = true;
  return d;
}

// One-sided Jacobi SVD (Hestenes): singular values, descending.
inline std::vector<double> jacobi_singulars(Mat a) {
  if (a.rows() < a.cols()) a.transposeInPlace();
  const int n = static_cast<int>(a.cols());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const double gamma = a.col(p).dot(a.col(q));
        if (std::abs(gamma) <= 1e-300) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Vec cp = a.col(p);
        a.col(p) = c * cp - s * a.col(q);
        a.col(q) = s * cp + c * a.col(q);
      }
    if (off < 1e-15) break;
  }
  std::vector<double> sv(n);
  for (int j = 0; j < n; ++j) sv[j] = a.col(j).norm();
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

// (XᵀX)⁻¹Xᵀy through a Cholesky factorization of the Gram matrix.
inline Mat normal_equations(const Mat& x, const Mat& y) { return (x.transpose() * x).llt().solve(x.transpose() * y); }

// (XᵀX + εI)⁻¹Xᵀy, the ridge limit of the minimum-norm solution.
inline Mat ridge_solve(const Mat& x, const Mat& y, double eps) {
  const Mat g = x.transpose() * x + eps * Mat::Identity(x.cols(), x.cols());
  return g.fullPivLu().solve(x.transpose() * y);
}

// 1 − ‖y − x·B‖² / (N·C) with B from the normal equations.
inline double sigma_brute(const Mat& x, const Mat& y) {
  const Mat r = y - x * normal_equations(x, y);
  return 1.0 - r.squaredNorm() / double(y.rows() * y.cols());
}

// Eigenvalues of b⁻¹a by a general (nonsymmetric) eigensolver, descending.
inline std::vector<double> binv_a_eigenvalues(const Mat& a, const Mat& b) {
  const Mat m = b.partialPivLu().solve(a);
  Eigen::EigenSolver<Mat> es(m);
  std::vector<double> v;
  for (int i = 0; i < es.eigenvalues().size(); ++i) v.push_back(es.eigenvalues()[i].real());
  std::sort(v.rbegin(), v.rend());
  return v;
}

inline double trace_binv_a(const Mat& a, const Mat& b) { return b.partialPivLu().solve(a).trace(); }

// Reduced-rank regression residual min_{rank(B) ≤ k} ‖y − xB‖²: OLS residual plus
// the tail energy of the fitted values beyond their top-k singular values.
inline double rrr_residual(const Mat& x, const Mat& y, int k) {
  const Mat fit = x * normal_equations(x, y);
  const std::vector<double> s = jacobi_singulars(fit);
  double tail = 0.0;
  for (std::size_t j = static_cast<std::size_t>(k); j < s.size(); ++j) tail += s[j] * s[j];
  return (y - fit).squaredNorm() + tail;
}

// Explicit-loop MLP forward pass.
inline Mat loop_forward(const alignlab::MlpEncoder& e, const Mat& x) {
  const int n = int(x.rows()), d = int(e.w_in.rows()), h = int(e.w_in.cols()), k = int(e.w_out.cols());
  Mat out(n, k);
  std::vector<double> hid(h);
  for (int i = 0; i < n; ++i) {
    for (int u = 0; u < h; ++u) {
      double a = e.b_in(u);
      for (int j = 0; j < d; ++j) a += x(i, j) * e.w_in(j, u);
      hid[u] = std::tanh(a);
    }
    for (int c = 0; c < k; ++c) {
      double a = e.b_out(c);
      for (int u = 0; u < h; ++u) a += hid[u] * e.w_out(u, c);
      out(i, c) = a;
    }
  }
  return out;
}

// Every scalar parameter of a ProbeParams, addressable by flat index.
inline std::vector<double*> flat_params(alignlab::ProbeParams& p) {
  std::vector<double*> out;
  auto add = [&out](auto& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) out.push_back(m.data() + i);
  };
  for (auto* e : {&p.enc1, &p.enc2}) {
    add(e->w_in);
    add(e->b_in);
    add(e->w_out);
    add(e->b_out);
  }
  add(p.w1);
  add(p.w2);
  add(p.q1);
  return out;
}

// Central difference of f at *slot.
inline double central_difference(const std::function<double()>& f, double* slot, double h) {
  const double keep = *slot;
  *slot = keep + h;
  const double up = f();
  *slot = keep - h;
  const double down = f();
  *slot = keep;
  return (up - down) / (2.0 * h);
}

}  // namespace testing_support
