// Copyright 2026 cstarlab contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "errors.hpp"
#include "tolerance.hpp"

namespace cstarlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Throws InvalidMatrix unless every entry is finite and both dimensions
// are at least one.
inline void validate_matrix(const CMatrix& m) {
  if (m.rows() < 1 || m.cols() < 1)
    throw InvalidMatrix("matrix must have at least one row and column");
  if (!m.allFinite()) throw InvalidMatrix("matrix has non-finite entries");
}

// Largest singular value. Zero matrices return exactly 0.
inline double op_norm(const CMatrix& m) {
  validate_matrix(m);
  if (m.isZero(0.0)) return 0.0;
  // Scale so the SVD of very large or tiny inputs stays accurate.
  double scale = m.cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<CMatrix> svd(m / scale);
  return scale * svd.singularValues()(0);
}

// Eigenvalues of a Hermitian matrix, ascending. Rejects inputs whose
// anti-Hermitian part exceeds eps_eq in operator norm.
inline Eigen::VectorXd herm_eigs(const CMatrix& m,
                                 const ToleranceConfig& tol = default_tolerances()) {
  validate_matrix(m);
  if (m.rows() != m.cols()) throw NotHermitian("herm_eigs: matrix not square");
  double defect = op_norm(CMatrix(m - m.adjoint()));
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (defect > tol.eps_eq * scale)
    throw NotHermitian("herm_eigs: matrix not Hermitian within eps_eq");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Trace inner product <x, y> = tr(y* x), the convention used everywhere
// in this library. Computed entrywise: tr(y* x) is the Frobenius pairing,
// so no matrix product is needed.
inline Complex trace_inner(const CMatrix& x, const CMatrix& y) {
  return Eigen::Map<const CVector>(y.data(), y.size())
      .dot(Eigen::Map<const CVector>(x.data(), x.size()));
}

inline double frob_norm(const CMatrix& x) { return x.norm(); }

// Orthonormal basis (trace inner product) of the span of the inputs,
// preserving first-seen order. A vector is rejected when its residual
// after projection onto the accepted set stays below the threshold, so
// the result spans the input within roughly that residual. One
// re-orthogonalization pass keeps the basis orthonormal to machine
// precision.
inline std::vector<CMatrix> span_basis(const std::vector<CMatrix>& mats,
                                       const ToleranceConfig& tol = default_tolerances()) {
  if (mats.empty()) throw EmptyInput("span_basis: no input matrices");
  const Eigen::Index r = mats.front().rows(), c = mats.front().cols();
  for (const auto& m : mats) {
    validate_matrix(m);
    if (m.rows() != r || m.cols() != c)
      throw ShapeMismatch("span_basis: inputs must share one shape");
  }
  // Residual threshold: absolute eps_eq scaled by the largest input.
  double scale = 0.0;
  for (const auto& m : mats) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  if (scale == 0.0) return {};
  const double thresh = tol.eps_eq * std::max(1.0, scale);

  // Rows of omat hold the accepted elements flattened, so projecting a
  // candidate is two matrix-vector products.
  std::vector<CMatrix> basis;
  CMatrix omat;
  Eigen::Index used = 0;
  for (const auto& m : mats) {
    CVector v = Eigen::Map<const CVector>(m.data(), m.size());
    const double n0 = v.norm();
    if (used > 0) {
      auto rows = omat.topRows(used);
      v.noalias() -= rows.transpose() * CVector(rows.conjugate() * v);
      if (v.norm() < 0.7 * n0)
        v.noalias() -= rows.transpose() * CVector(rows.conjugate() * v);
    }
    const double nv = v.norm();
    if (nv <= thresh) continue;
    if (omat.cols() != v.size())
      omat.resize(16, v.size());
    else if (omat.rows() == used)
      omat.conservativeResize(2 * used, Eigen::NoChange);
    omat.row(used++) = (v / nv).transpose();
    basis.push_back(Eigen::Map<const CMatrix>(v.data(), r, c) / nv);
  }
  return basis;
}

// Residual of x after projecting onto an orthonormal family.
inline double projection_residual(const CMatrix& x,
                                  const std::vector<CMatrix>& basis) {
  CMatrix v = x;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v -= trace_inner(v, b) * b;
  return frob_norm(v);
}

// True when x lies in the span of the orthonormal family within tol.
inline bool in_span(const CMatrix& x, const std::vector<CMatrix>& basis,
                    double tol) {
  return projection_residual(x, basis) <= tol;
}

namespace detail {

inline CMatrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols,
                                     std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

inline CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  CMatrix m = random_complex_matrix(n, n, rng);
  return CMatrix(0.5 * (m + m.adjoint()));
}

// Unitary polar factor. X = U P with P positive; requires X square and
// numerically invertible.
inline CMatrix polar_unitary(const CMatrix& x) {
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

inline bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace detail

}  // namespace cstarlab
