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

#include "algebra.hpp"

namespace cstarlab {

// Block realization of a unital *-subalgebra B of M_D: an isomorphism
// psi onto a direct sum of full matrix algebras, carried by one frame
// (isometry) per summand. psi(x)_k = frames[k]^* x frames[k] picks one
// irreducible copy out of the multiplicity space.
struct WedderburnDecomposition {
  Eigen::Index ambient_dim = 0;    // D
  BlockShape shape;                // sizes m_k of the simple summands
  std::vector<Eigen::Index> multiplicities;  // r_k, with sum m_k * r_k = D
  std::vector<CMatrix> frames;     // D x m_k isometries

  BlockElement apply(const CMatrix& x) const {
    if (x.rows() != ambient_dim || x.cols() != ambient_dim)
      throw ShapeMismatch("WedderburnDecomposition: input dimension mismatch");
    BlockElement out = BlockElement::zero(shape);
    for (std::size_t k = 0; k < frames.size(); ++k)
      out.blocks[k] = frames[k].adjoint() * x * frames[k];
    return out;
  }
};

namespace detail {

// Star-closed, product-closed orthonormal span of D x D matrices,
// including the identity.
inline std::vector<CMatrix> star_algebra_basis(const std::vector<CMatrix>& gens,
                                               Eigen::Index dim,
                                               const ToleranceConfig& tol) {
  BlockShape amb({dim});
  double scale = 1.0;
  for (const auto& g : gens) scale = std::max(scale, g.norm());
  const double thresh = 1e3 * tol.eps_eq * scale;
  SpanBuilder sb;
  sb.add(BlockElement::identity(amb), Word{}, thresh);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].rows() != dim || gens[g].cols() != dim)
      throw ShapeMismatch("wedderburn: generator dimension mismatch");
    sb.add(BlockElement(amb, {gens[g]}), Word{WordFactor{g, false}}, thresh);
  }
  close_under_products(sb, /*with_adjoints=*/true, thresh, dim * dim);
  std::vector<CMatrix> basis;
  basis.reserve(sb.ortho.size());
  for (const auto& e : sb.ortho) basis.push_back(e.blocks[0]);
  return basis;
}

// Orthonormal basis of the center of B = alg*(tests): kernel of the
// commutator map against the test set. Commuting with a *-generating
// set already forces commuting with every product and sum it spawns,
// so testing against the generators and their adjoints suffices.
inline std::vector<CMatrix> center_basis(const std::vector<CMatrix>& basis,
                                         const std::vector<CMatrix>& tests) {
  const std::size_t n = basis.size();
  const std::size_t t = tests.size();
  const Eigen::Index D = basis[0].rows();
  CMatrix M(static_cast<Eigen::Index>(t) * D * D, n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Index off = 0;
    for (std::size_t j = 0; j < t; ++j) {
      CMatrix comm = basis[i] * tests[j] - tests[j] * basis[i];
      M.block(off, i, D * D, 1) = Eigen::Map<const CVector>(comm.data(), D * D);
      off += D * D;
    }
  }
  Eigen::BDCSVD<CMatrix> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * std::max(1.0, smax)) ++rank;
  std::vector<CMatrix> out;
  for (Eigen::Index i = rank; i < static_cast<Eigen::Index>(n); ++i) {
    CVector c = svd.matrixV().col(i);
    CMatrix z = CMatrix::Zero(D, D);
    for (std::size_t b = 0; b < n; ++b) z += c(b) * basis[b];
    out.push_back(z);
  }
  return out;
}

// Indices [0, n) split into groups at the (groups-1) widest gaps of an
// ascending value list.
inline std::vector<std::vector<Eigen::Index>> split_by_gaps(
    const Eigen::VectorXd& vals, std::size_t groups) {
  const Eigen::Index n = vals.size();
  std::vector<std::pair<double, Eigen::Index>> gaps;
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    gaps.push_back({vals(i + 1) - vals(i), i});
  std::sort(gaps.begin(), gaps.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::set<Eigen::Index> cuts;
  for (std::size_t g = 0; g + 1 < groups && g < gaps.size(); ++g)
    cuts.insert(gaps[g].second);
  std::vector<std::vector<Eigen::Index>> out(1);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.back().push_back(i);
    if (cuts.count(i) && i + 1 < n) out.emplace_back();
  }
  return out;
}

}  // namespace detail

// Canonical block realization of the unital *-algebra generated inside
// M_D by the given matrices. Minimal central projections come from the
// spectral clusters of a generic Hermitian central element; inside each
// corner, a minimal projection e and a module basis of B*e orthonormal
// for the e-valued pairing yield the frame.
inline WedderburnDecomposition wedderburn(const std::vector<CMatrix>& generators,
                                          Eigen::Index dim,
                                          const ToleranceConfig& tol = default_tolerances()) {
  tol.validate();
  if (generators.empty()) throw EmptyInput("wedderburn: no generators");
  auto basis = detail::star_algebra_basis(generators, dim, tol);
  const std::size_t n = basis.size();
  std::vector<CMatrix> tests;
  tests.reserve(2 * generators.size());
  for (const auto& g : generators) {
    tests.push_back(g);
    tests.push_back(g.adjoint());
  }
  auto center = detail::center_basis(basis, tests);
  const std::size_t K = center.size();
  if (K == 0) throw NumericalFailure("wedderburn: empty center");

  for (int attempt = 0; attempt < 8; ++attempt) {
    auto rng = rng_stream(tol.rng_seed, 0x3edde12bu,
                          static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> dist(0.0, 1.0);

    // Generic Hermitian central element; its spectrum separates the
    // minimal central projections.
    CMatrix h = CMatrix::Zero(dim, dim);
    for (const auto& z : center) h += Complex(dist(rng), dist(rng)) * z;
    h = (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    auto clusters = detail::split_by_gaps(es.eigenvalues(), K);
    if (clusters.size() != K) continue;

    WedderburnDecomposition dec;
    dec.ambient_dim = dim;
    std::vector<Eigen::Index> msizes;
    bool ok = true;

    struct BlockData {
      Eigen::Index m, r;
      CMatrix frame;
    };
    std::vector<BlockData> blocks;

    for (const auto& cl : clusters) {
      const Eigen::Index d = static_cast<Eigen::Index>(cl.size());
      CMatrix V(dim, d);
      for (Eigen::Index c = 0; c < d; ++c)
        V.col(c) = es.eigenvectors().col(cl[c]);

      // Corner algebra on the range of the central projection.
      std::vector<CMatrix> corner;
      corner.reserve(n);
      for (const auto& b : basis) corner.push_back(V.adjoint() * b * V);
      auto corner_basis = span_basis(corner, tol);
      const auto mm = static_cast<Eigen::Index>(
          std::llround(std::sqrt(static_cast<double>(corner_basis.size()))));
      if (mm * mm != static_cast<Eigen::Index>(corner_basis.size()) ||
          d % mm != 0) {
        ok = false;
        break;
      }
      const Eigen::Index m = mm, r = d / mm;

      CMatrix frame;  // d x m, orthonormal columns
      if (r == 1) {
        frame = CMatrix::Identity(d, d);
      } else {
        // Minimal projection e: first spectral group of a generic
        // Hermitian corner element, which must split d into m groups of
        // r eigenvalues each.
        CMatrix g = CMatrix::Zero(d, d);
        for (const auto& cb : corner_basis)
          g += Complex(dist(rng), dist(rng)) * cb;
        g = (g + g.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<CMatrix> ges(g);
        auto ggroups = detail::split_by_gaps(ges.eigenvalues(), m);
        if (static_cast<Eigen::Index>(ggroups.size()) != m) {
          ok = false;
          break;
        }
        bool sizes_ok = true;
        for (const auto& gg : ggroups)
          if (static_cast<Eigen::Index>(gg.size()) != r) sizes_ok = false;
        if (!sizes_ok) {
          ok = false;
          break;
        }
        CMatrix W(d, r);
        for (Eigen::Index c = 0; c < r; ++c)
          W.col(c) = ges.eigenvectors().col(ggroups[0][c]);
        CMatrix e = W * W.adjoint();

        // Module Gram-Schmidt of corner * e under the e-valued pairing
        // lambda(x, y) = e x* y e = (tr(x* y e) / r) e.
        std::vector<CMatrix> mod;
        for (const auto& cb : corner_basis) {
          CMatrix x = cb * e;
          for (const auto& v : mod) {
            Complex s = (v.adjoint() * x * e).trace() / static_cast<double>(r);
            x -= v * s;
          }
          double nv2 = std::real((x.adjoint() * x * e).trace()) /
                       static_cast<double>(r);
          if (nv2 > 1e-12) mod.push_back(x / std::sqrt(nv2));
        }
        if (static_cast<Eigen::Index>(mod.size()) != m) {
          ok = false;
          break;
        }
        CVector w = W.col(0);
        frame = CMatrix(d, m);
        for (Eigen::Index i = 0; i < m; ++i) frame.col(i) = mod[i] * w;
      }
      blocks.push_back({m, r, CMatrix(V * frame)});
    }
    if (!ok) continue;

    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const BlockData& a, const BlockData& b) {
                       if (a.m != b.m) return a.m < b.m;
                       return a.r < b.r;
                     });
    for (const auto& b : blocks) msizes.push_back(b.m);
    dec.shape = BlockShape(msizes);
    for (const auto& b : blocks) {
      dec.multiplicities.push_back(b.r);
      dec.frames.push_back(b.frame);
    }

    // Global audit: dimensions, unitality, adjoints, multiplicativity.
    Eigen::Index total = 0, sq = 0;
    for (const auto& b : blocks) {
      total += b.m * b.r;
      sq += b.m * b.m;
    }
    if (total != dim || sq != static_cast<Eigen::Index>(n)) continue;
    bool audit = true;
    BlockElement one = dec.apply(CMatrix::Identity(dim, dim));
    if (frob_norm(one - BlockElement::identity(dec.shape)) > 1e-8) audit = false;
    std::vector<BlockElement> images;
    for (const auto& b : basis) images.push_back(dec.apply(b));

    // Injectivity: the flattened images must have full row rank.
    {
      CMatrix flat(static_cast<Eigen::Index>(n), sq);
      for (std::size_t i = 0; i < n; ++i) {
        Eigen::Index off = 0;
        for (const auto& blk : images[i].blocks) {
          flat.block(i, off, 1, blk.size()) =
              Eigen::Map<const CVector>(blk.data(), blk.size()).transpose();
          off += blk.size();
        }
      }
      Eigen::BDCSVD<CMatrix> fsvd(flat);
      const auto& fsv = fsvd.singularValues();
      double fmax = fsv.size() ? fsv(0) : 0.0;
      Eigen::Index frank = 0;
      for (Eigen::Index i = 0; i < fsv.size(); ++i)
        if (fsv(i) > 1e-9 * std::max(1.0, fmax)) ++frank;
      if (frank != static_cast<Eigen::Index>(n)) audit = false;
    }

    // Adjoints on the basis; multiplicativity against the generating
    // set, which extends to all products of B by induction on word
    // length since apply() is linear.
    std::vector<BlockElement> test_images;
    test_images.reserve(tests.size());
    for (const auto& s : tests) test_images.push_back(dec.apply(s));
    for (std::size_t i = 0; i < n && audit; ++i) {
      if (frob_norm(dec.apply(CMatrix(basis[i].adjoint())) -
                    images[i].adjoint()) > 1e-7)
        audit = false;
      for (std::size_t j = 0; j < tests.size() && audit; ++j) {
        if (frob_norm(dec.apply(CMatrix(basis[i] * tests[j])) -
                      images[i] * test_images[j]) > 1e-7)
          audit = false;
      }
    }
    if (!audit) continue;
    return dec;
  }
  throw NumericalFailure("wedderburn: no generic decomposition found");
}

}  // namespace cstarlab
