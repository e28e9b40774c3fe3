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

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

#include "matrix.hpp"

namespace cstarlab {

// Direct sum of full matrix blocks M_{n1} + ... + M_{nm}. Every
// finite-dimensional C*-algebra in this library is carried in this
// form; two-sided ideals are exactly subsets of the block set.
struct BlockShape {
  std::vector<Eigen::Index> sizes;

  BlockShape() = default;
  explicit BlockShape(std::vector<Eigen::Index> s) : sizes(std::move(s)) {
    validate();
  }

  void validate() const {
    if (sizes.empty()) throw ShapeMismatch("BlockShape: need at least one block");
    for (auto n : sizes)
      if (n < 1) throw ShapeMismatch("BlockShape: block sizes must be >= 1");
  }

  std::size_t block_count() const { return sizes.size(); }
  // Dimension of the Hilbert space the algebra acts on diagonally.
  Eigen::Index total_dim() const {
    return std::accumulate(sizes.begin(), sizes.end(), Eigen::Index(0));
  }
  // Linear dimension of the algebra itself.
  Eigen::Index linear_dim() const {
    Eigen::Index d = 0;
    for (auto n : sizes) d += n * n;
    return d;
  }

  bool operator==(const BlockShape& o) const { return sizes == o.sizes; }
  bool operator!=(const BlockShape& o) const { return !(*this == o); }
};

// Element of a block algebra: one matrix per block.
struct BlockElement {
  BlockShape shape;
  std::vector<CMatrix> blocks;

  BlockElement() = default;
  BlockElement(BlockShape s, std::vector<CMatrix> b)
      : shape(std::move(s)), blocks(std::move(b)) {
    validate();
  }

  static BlockElement zero(const BlockShape& s) {
    std::vector<CMatrix> b;
    b.reserve(s.block_count());
    for (auto n : s.sizes) b.push_back(CMatrix::Zero(n, n));
    return BlockElement(s, std::move(b));
  }

  static BlockElement identity(const BlockShape& s) {
    std::vector<CMatrix> b;
    b.reserve(s.block_count());
    for (auto n : s.sizes) b.push_back(CMatrix::Identity(n, n));
    return BlockElement(s, std::move(b));
  }

  // Matrix unit E_ij inside one block, zero elsewhere.
  static BlockElement unit(const BlockShape& s, std::size_t block,
                           Eigen::Index i, Eigen::Index j) {
    BlockElement e = zero(s);
    e.blocks.at(block)(i, j) = 1.0;
    return e;
  }

  void validate() const {
    shape.validate();
    if (blocks.size() != shape.block_count())
      throw ShapeMismatch("BlockElement: block count mismatch");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      validate_matrix(blocks[b]);
      if (blocks[b].rows() != shape.sizes[b] || blocks[b].cols() != shape.sizes[b])
        throw ShapeMismatch("BlockElement: block size mismatch");
    }
  }

  BlockElement operator+(const BlockElement& o) const {
    require_same_shape(o);
    BlockElement r = *this;
    for (std::size_t b = 0; b < blocks.size(); ++b) r.blocks[b] += o.blocks[b];
    return r;
  }
  BlockElement operator-(const BlockElement& o) const {
    require_same_shape(o);
    BlockElement r = *this;
    for (std::size_t b = 0; b < blocks.size(); ++b) r.blocks[b] -= o.blocks[b];
    return r;
  }
  BlockElement operator*(const BlockElement& o) const {
    require_same_shape(o);
    BlockElement r = *this;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      r.blocks[b] = blocks[b] * o.blocks[b];
    return r;
  }
  friend BlockElement operator*(Complex c, const BlockElement& x) {
    BlockElement r = x;
    for (auto& blk : r.blocks) blk *= c;
    return r;
  }
  BlockElement adjoint() const {
    BlockElement r = *this;
    for (auto& blk : r.blocks) blk = blk.adjoint().eval();
    return r;
  }

  // C*-norm: max over blocks of the operator norm.
  double norm() const {
    double n = 0.0;
    for (const auto& blk : blocks) n = std::max(n, op_norm(blk));
    return n;
  }

  // Flatten to the block-diagonal matrix on the total space.
  CMatrix embed() const {
    Eigen::Index d = shape.total_dim();
    CMatrix m = CMatrix::Zero(d, d);
    Eigen::Index off = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      Eigen::Index n = shape.sizes[b];
      m.block(off, off, n, n) = blocks[b];
      off += n;
    }
    return m;
  }

  // Read a block-diagonal matrix back into block form. Off-diagonal
  // mass beyond tol is an error.
  static BlockElement extract(const BlockShape& s, const CMatrix& m,
                              double tol = 1e-9) {
    if (m.rows() != s.total_dim() || m.cols() != s.total_dim())
      throw ShapeMismatch("BlockElement::extract: dimension mismatch");
    BlockElement e = zero(s);
    Eigen::Index off = 0;
    CMatrix rest = m;
    for (std::size_t b = 0; b < s.block_count(); ++b) {
      Eigen::Index n = s.sizes[b];
      e.blocks[b] = m.block(off, off, n, n);
      rest.block(off, off, n, n).setZero();
      off += n;
    }
    if (rest.cwiseAbs().maxCoeff() > tol)
      throw ShapeMismatch("BlockElement::extract: off-diagonal mass");
    return e;
  }

 private:
  void require_same_shape(const BlockElement& o) const {
    if (shape != o.shape) throw ShapeMismatch("BlockElement: shape mismatch");
  }
};

inline Complex trace_inner(const BlockElement& x, const BlockElement& y) {
  if (x.shape != y.shape) throw ShapeMismatch("trace_inner: shape mismatch");
  Complex s = 0.0;
  for (std::size_t b = 0; b < x.blocks.size(); ++b)
    s += trace_inner(x.blocks[b], y.blocks[b]);
  return s;
}

inline double frob_norm(const BlockElement& x) {
  double s = 0.0;
  for (const auto& blk : x.blocks) s += blk.squaredNorm();
  return std::sqrt(s);
}

// Two-sided ideal of a block algebra: a set of block indices (0-based).
struct Ideal {
  BlockShape shape;
  std::set<std::size_t> members;

  Ideal() = default;
  Ideal(BlockShape s, std::set<std::size_t> m)
      : shape(std::move(s)), members(std::move(m)) {
    validate();
  }

  void validate() const {
    shape.validate();
    for (auto b : members)
      if (b >= shape.block_count())
        throw ShapeMismatch("Ideal: member index out of range");
  }

  bool empty() const { return members.empty(); }
  bool full() const { return members.size() == shape.block_count(); }
  bool contains(std::size_t b) const { return members.count(b) != 0; }
  // Total Hilbert dimension of the member blocks; the level bound used
  // by complete-isometry checks of the corresponding quotient.
  Eigen::Index deleted_dim() const {
    Eigen::Index d = 0;
    for (auto b : members) d += shape.sizes[b];
    return d;
  }
  bool subset_of(const Ideal& o) const {
    return std::includes(o.members.begin(), o.members.end(), members.begin(),
                         members.end());
  }
  bool operator==(const Ideal& o) const {
    return shape == o.shape && members == o.members;
  }
};

// Block indices that survive quotienting by the ideal, in order.
inline std::vector<std::size_t> kept_blocks(const Ideal& ideal) {
  std::vector<std::size_t> kept;
  for (std::size_t b = 0; b < ideal.shape.block_count(); ++b)
    if (!ideal.contains(b)) kept.push_back(b);
  return kept;
}

// Shape of the quotient algebra together with the original index of
// each surviving block, so ideals of quotients pull back unambiguously.
struct QuotientShape {
  BlockShape shape;
  std::vector<std::size_t> original_index;
};

inline QuotientShape quotient_shape(const Ideal& ideal) {
  auto kept = kept_blocks(ideal);
  if (kept.empty())
    throw EmptyQuotient("quotient: ideal covers every block");
  std::vector<Eigen::Index> sizes;
  sizes.reserve(kept.size());
  for (auto b : kept) sizes.push_back(ideal.shape.sizes[b]);
  return {BlockShape(std::move(sizes)), std::move(kept)};
}

// Image of an element under the quotient map: drop the member blocks.
inline BlockElement quotient(const BlockElement& x, const Ideal& ideal) {
  if (x.shape != ideal.shape) throw ShapeMismatch("quotient: shape mismatch");
  auto qs = quotient_shape(ideal);
  std::vector<CMatrix> blocks;
  blocks.reserve(qs.original_index.size());
  for (auto b : qs.original_index) blocks.push_back(x.blocks[b]);
  return BlockElement(qs.shape, std::move(blocks));
}

// All ideals ordered by (cardinality, lexicographic member list).
// Guarded: shapes with more than 20 blocks are rejected.
inline std::vector<Ideal> enumerate_ideals(const BlockShape& shape) {
  const std::size_t m = shape.block_count();
  if (m > 20) throw TooManyBlocks("enumerate_ideals: more than 20 blocks");
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t b = 0; b < m; ++b)
      if (mask & (std::size_t(1) << b)) s.push_back(b);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  std::vector<Ideal> out;
  out.reserve(subsets.size());
  for (auto& s : subsets)
    out.emplace_back(shape, std::set<std::size_t>(s.begin(), s.end()));
  return out;
}

// Unital *-homomorphism between block algebras, stored as a multiplicity
// matrix plus one unitary conjugator per target block. Row i of the
// multiplicity matrix says how many copies of each source block are
// stacked (in source order) to fill target block i; unitality demands
// the stack exactly fills it.
struct StarHomData {
  BlockShape source;
  BlockShape target;
  // multiplicity[i][j]: copies of source block j inside target block i.
  std::vector<std::vector<int>> multiplicity;
  std::vector<CMatrix> conjugators;  // one per target block

  void validate(const ToleranceConfig& tol = default_tolerances()) const {
    source.validate();
    target.validate();
    if (multiplicity.size() != target.block_count() ||
        conjugators.size() != target.block_count())
      throw InvalidHom("StarHomData: row/conjugator count mismatch");
    for (std::size_t i = 0; i < target.block_count(); ++i) {
      if (multiplicity[i].size() != source.block_count())
        throw InvalidHom("StarHomData: multiplicity row length mismatch");
      Eigen::Index filled = 0;
      for (std::size_t j = 0; j < source.block_count(); ++j) {
        if (multiplicity[i][j] < 0)
          throw InvalidHom("StarHomData: negative multiplicity");
        filled += multiplicity[i][j] * source.sizes[j];
      }
      if (filled != target.sizes[i])
        throw InvalidHom("StarHomData: unitality row sum mismatch");
      if (conjugators[i].rows() != target.sizes[i] ||
          conjugators[i].cols() != target.sizes[i] ||
          !detail::is_unitary(conjugators[i], 1e3 * tol.eps_eq))
        throw InvalidHom("StarHomData: conjugator not unitary");
    }
  }
};

// Apply h to x: per target block, stack the prescribed copies of the
// source blocks diagonally and conjugate.
inline BlockElement apply_hom(const StarHomData& h, const BlockElement& x) {
  if (x.shape != h.source) throw ShapeMismatch("apply_hom: source mismatch");
  BlockElement out = BlockElement::zero(h.target);
  for (std::size_t i = 0; i < h.target.block_count(); ++i) {
    CMatrix stacked = CMatrix::Zero(h.target.sizes[i], h.target.sizes[i]);
    Eigen::Index off = 0;
    for (std::size_t j = 0; j < h.source.block_count(); ++j) {
      Eigen::Index n = h.source.sizes[j];
      for (int c = 0; c < h.multiplicity[i][j]; ++c) {
        stacked.block(off, off, n, n) = x.blocks[j];
        off += n;
      }
    }
    out.blocks[i] = h.conjugators[i] * stacked * h.conjugators[i].adjoint();
  }
  return out;
}

// Orthonormal basis of a span of block elements (trace inner product).
inline std::vector<BlockElement> span_basis(const std::vector<BlockElement>& xs,
                                            const ToleranceConfig& tol = default_tolerances()) {
  if (xs.empty()) throw EmptyInput("span_basis: no input elements");
  const BlockShape& shape = xs.front().shape;
  double scale = 0.0;
  for (const auto& x : xs) {
    if (x.shape != shape) throw ShapeMismatch("span_basis: shape mismatch");
    scale = std::max(scale, frob_norm(x));
  }
  if (scale == 0.0) return {};
  const double thresh = tol.eps_eq * std::max(1.0, scale);
  std::vector<BlockElement> basis;
  for (const auto& x : xs) {
    BlockElement v = x;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v = v - trace_inner(v, b) * b;
    double nv = frob_norm(v);
    if (nv > thresh) basis.push_back((1.0 / nv) * v);
  }
  return basis;
}

inline double projection_residual(const BlockElement& x,
                                  const std::vector<BlockElement>& basis) {
  BlockElement v = x;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v = v - trace_inner(v, b) * b;
  return frob_norm(v);
}

inline bool in_span(const BlockElement& x,
                    const std::vector<BlockElement>& basis, double tol) {
  return projection_residual(x, basis) <= tol;
}

}  // namespace cstarlab
