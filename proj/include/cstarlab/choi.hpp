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

#include <optional>

#include "blocks.hpp"

namespace cstarlab {

// Real isometric vectorization of Hermitian matrices: diagonal first,
// then (sqrt2 Re, sqrt2 Im) for each upper off-diagonal entry.
inline Eigen::VectorXd hvec(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  Eigen::VectorXd v(n * n);
  Eigen::Index t = 0;
  for (Eigen::Index p = 0; p < n; ++p) v(t++) = h(p, p).real();
  const double s2 = std::sqrt(2.0);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p + 1; q < n; ++q) {
      v(t++) = s2 * h(p, q).real();
      v(t++) = s2 * h(p, q).imag();
    }
  return v;
}

inline CMatrix hunvec(const Eigen::VectorXd& v, Eigen::Index n) {
  CMatrix h = CMatrix::Zero(n, n);
  Eigen::Index t = 0;
  for (Eigen::Index p = 0; p < n; ++p) h(p, p) = v(t++);
  const double is2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p + 1; q < n; ++q) {
      double re = v(t++) * is2;
      double im = v(t++) * is2;
      h(p, q) = Complex(re, im);
      h(q, p) = Complex(re, -im);
    }
  return h;
}

// The set of unital completely positive maps from a block C*-algebra
// into M_d that agree with prescribed values on a list of elements,
// parameterized by one Choi matrix per domain block. The affine part of
// the constraints is solved exactly; positivity is the remaining
// semidefinite condition.
struct UcpRegion {
  BlockShape domain;
  Eigen::Index d = 0;
  std::vector<Eigen::Index> choi_dim;     // n_b * d per block
  std::vector<Eigen::Index> offset;       // hvec segment starts
  Eigen::Index total = 0;                 // total real parameters
  Eigen::VectorXd x0;                     // particular affine solution
  Eigen::MatrixXd kernel;                 // orthonormal columns

  std::vector<CMatrix> choi(const Eigen::VectorXd& x) const {
    std::vector<CMatrix> out;
    out.reserve(domain.block_count());
    for (std::size_t b = 0; b < domain.block_count(); ++b)
      out.push_back(hunvec(x.segment(offset[b], choi_dim[b] * choi_dim[b]),
                           choi_dim[b]));
    return out;
  }

  // Value of the encoded map on a domain element.
  CMatrix apply(const Eigen::VectorXd& x, const BlockElement& y) const {
    if (y.shape != domain) throw ShapeMismatch("UcpRegion::apply: shape mismatch");
    auto cs = choi(x);
    CMatrix out = CMatrix::Zero(d, d);
    for (std::size_t b = 0; b < domain.block_count(); ++b) {
      const Eigen::Index nb = domain.sizes[b];
      for (Eigen::Index u = 0; u < nb; ++u)
        for (Eigen::Index v = 0; v < nb; ++v) {
          Complex c = y.blocks[b](u, v);
          if (c == Complex(0.0, 0.0)) continue;
          out += c * cs[b].block(u * d, v * d, d, d);
        }
    }
    return out;
  }

  double psd_defect(const Eigen::VectorXd& x) const {
    double defect = 0.0;
    auto cs = choi(x);
    for (const auto& c : cs) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(c, Eigen::EigenvaluesOnly);
      defect = std::max(defect, std::max(0.0, -es.eigenvalues()(0)));
    }
    return defect;
  }

  Eigen::VectorXd project_psd(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out = x;
    for (std::size_t b = 0; b < domain.block_count(); ++b) {
      const Eigen::Index n = choi_dim[b];
      CMatrix c = hunvec(x.segment(offset[b], n * n), n);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(c);
      Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
      CMatrix clipped = es.eigenvectors() * ev.asDiagonal() *
                        es.eigenvectors().adjoint();
      out.segment(offset[b], n * n) = hvec(clipped);
    }
    return out;
  }

  Eigen::VectorXd project_affine(const Eigen::VectorXd& x) const {
    if (kernel.cols() == 0) return x0;
    return x0 + kernel * (kernel.transpose() * (x - x0));
  }

  double affine_defect(const Eigen::VectorXd& x) const {
    return (x - project_affine(x)).norm();
  }

  // Dykstra's alternating projections onto affine-and-PSD. Returns a
  // point with both defects below tol, or nothing on non-convergence.
  std::optional<Eigen::VectorXd> feasible_point(Eigen::VectorXd x,
                                                double tol,
                                                int max_iter = 4000) const {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(total);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(total);
    for (int it = 0; it < max_iter; ++it) {
      Eigen::VectorXd y = project_psd(x + p);
      p = x + p - y;
      x = project_affine(y + q);
      q = y + q - x;
      if (psd_defect(x) <= tol && affine_defect(x) <= tol) return x;
    }
    return std::nullopt;
  }
};

// Construct the region from prescription pairs (args[i] maps to
// values[i]). Unitality must be included by the caller via an explicit
// (unit, identity) pair or through the span of the args.
inline UcpRegion ucp_region(const BlockShape& domain,
                            const std::vector<BlockElement>& args,
                            const std::vector<CMatrix>& values, Eigen::Index d,
                            const ToleranceConfig& tol = default_tolerances()) {
  if (args.empty() || args.size() != values.size())
    throw EmptyInput("ucp_region: need matching args and values");
  UcpRegion r;
  r.domain = domain;
  r.d = d;
  r.total = 0;
  for (std::size_t b = 0; b < domain.block_count(); ++b) {
    r.choi_dim.push_back(domain.sizes[b] * d);
    r.offset.push_back(r.total);
    r.total += r.choi_dim.back() * r.choi_dim.back();
  }

  // Hermitian hvec basis element t of block b as sparse Choi entries:
  // enumerate (index in segment) -> list of (row, col, complex value).
  // Constraint row for (arg, value), output entry (k, l):
  //   sum_b sum_{uv} arg_b(u,v) * C_b(u*d+k, v*d+l) = value(k, l).
  const Eigen::Index crows =
      static_cast<Eigen::Index>(args.size()) * d * d;
  CMatrix M = CMatrix::Zero(crows, r.total);
  CVector rhs(crows);
  const double s2i = 1.0 / std::sqrt(2.0);

  for (std::size_t a = 0; a < args.size(); ++a) {
    if (args[a].shape != domain)
      throw ShapeMismatch("ucp_region: arg shape mismatch");
    if (values[a].rows() != d || values[a].cols() != d)
      throw ShapeMismatch("ucp_region: value shape mismatch");
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index l = 0; l < d; ++l) {
        const Eigen::Index row = (static_cast<Eigen::Index>(a) * d + k) * d + l;
        rhs(row) = values[a](k, l);
        for (std::size_t b = 0; b < domain.block_count(); ++b) {
          const Eigen::Index nb = domain.sizes[b];
          const Eigen::Index n = r.choi_dim[b];
          for (Eigen::Index u = 0; u < nb; ++u)
            for (Eigen::Index v = 0; v < nb; ++v) {
              Complex c = args[a].blocks[b](u, v);
              if (c == Complex(0.0, 0.0)) continue;
              Eigen::Index P = u * d + k, Q = v * d + l;
              // Locate the hvec component(s) carrying C_b(P, Q).
              if (P == Q) {
                M(row, r.offset[b] + P) += c;
              } else {
                Eigen::Index p = std::min(P, Q), q = std::max(P, Q);
                // Position of the (re, im) pair for (p, q).
                Eigen::Index pair0 =
                    n + 2 * (p * n - p * (p + 1) / 2 + (q - p - 1));
                bool upper = (P < Q);
                // C(p,q) = (re + i im)/sqrt2, C(q,p) = conj.
                M(row, r.offset[b] + pair0) += c * s2i;
                M(row, r.offset[b] + pair0 + 1) +=
                    c * Complex(0.0, upper ? s2i : -s2i);
              }
            }
        }
      }
  }

  // Real least squares + kernel.
  Eigen::MatrixXd Mr(2 * crows, r.total);
  Mr.topRows(crows) = M.real();
  Mr.bottomRows(crows) = M.imag();
  Eigen::VectorXd br(2 * crows);
  br.head(crows) = rhs.real();
  br.tail(crows) = rhs.imag();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      Mr, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * std::max(1.0, smax)) ++rank;

  // Particular solution via the rank-truncated pseudoinverse.
  Eigen::VectorXd coef = svd.matrixU().transpose() * br;
  Eigen::VectorXd scaled = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < rank; ++i) scaled(i) = coef(i) / sv(i);
  r.x0 = svd.matrixV().leftCols(sv.size()) * scaled;
  if ((Mr * r.x0 - br).norm() > 1e-7 * std::max(1.0, br.norm()))
    throw NumericalFailure("ucp_region: inconsistent prescription");
  r.kernel = svd.matrixV().rightCols(r.total - rank);
  (void)tol;
  return r;
}

}  // namespace cstarlab
