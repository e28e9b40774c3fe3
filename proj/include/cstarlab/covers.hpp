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

#include <functional>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "wedderburn.hpp"

namespace cstarlab {

// C*-cover of an operator algebra: a block C*-algebra together with a
// unital completely isometric homomorphism j of the base into it whose
// image generates. The map is stored by its values on the base
// generators; values on the orthonormal basis are derived through the
// word ledger.
struct Cover {
  OperatorAlgebra base;
  BlockShape target;
  std::vector<BlockElement> gen_images;
  std::vector<BlockElement> basis_images;
  std::string label;

  BlockElement map(const BlockElement& x, double tol = 1e-8) const {
    CVector c = base.coefficients(x, tol);
    BlockElement out = BlockElement::zero(target);
    for (std::size_t k = 0; k < basis_images.size(); ++k)
      out = out + c(k) * basis_images[k];
    return out;
  }
};

namespace detail {

// Norm of a k x k coefficient matrix pushed through arbitrary images
// (same convention as level_norm, but evaluated on the image side).
inline double level_norm_images(const BlockShape& target,
                                const std::vector<BlockElement>& images,
                                const std::vector<std::vector<CVector>>& u) {
  const std::size_t k = u.size();
  double n = 0.0;
  for (std::size_t b = 0; b < target.block_count(); ++b) {
    const Eigen::Index nb = target.sizes[b];
    CMatrix big = CMatrix::Zero(k * nb, k * nb);
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = 0; q < k; ++q) {
        CMatrix entry = CMatrix::Zero(nb, nb);
        for (std::size_t d = 0; d < images.size(); ++d)
          entry += u[p][q](d) * images[d].blocks[b];
        big.block(p * nb, q * nb, nb, nb) = entry;
      }
    n = std::max(n, op_norm(big));
  }
  return n;
}

inline Eigen::Index star_closure_dim(const BlockShape& shape,
                                     const std::vector<BlockElement>& gens,
                                     const ToleranceConfig& tol) {
  double scale = 1.0;
  for (const auto& g : gens) scale = std::max(scale, frob_norm(g));
  const double thresh = 1e3 * tol.eps_eq * scale;
  SpanBuilder sb;
  sb.add(BlockElement::identity(shape), Word{}, thresh);
  for (std::size_t g = 0; g < gens.size(); ++g)
    sb.add(gens[g], Word{WordFactor{g, false}}, thresh);
  close_under_products(sb, /*with_adjoints=*/true, thresh, shape.linear_dim());
  return static_cast<Eigen::Index>(sb.ortho.size());
}

}  // namespace detail

// Build and fully validate a cover: homomorphism property against the
// base structure constants, unitality, generation of the target, and a
// sampled check of complete isometry at matrix levels 1..3.
inline Cover make_cover(OperatorAlgebra base, BlockShape target,
                        std::vector<BlockElement> gen_images, std::string label,
                        const ToleranceConfig& tol = default_tolerances()) {
  tol.validate();
  target.validate();
  if (gen_images.size() != base.generators.size())
    throw InvalidHom("make_cover: one image per generator required");
  for (const auto& im : gen_images) {
    im.validate();
    if (im.shape != target)
      throw ShapeMismatch("make_cover: image shape mismatch");
  }

  Cover c;
  c.base = std::move(base);
  c.target = std::move(target);
  c.gen_images = std::move(gen_images);
  c.label = std::move(label);

  BlockElement unit = BlockElement::identity(c.target);
  BlockElement zero = BlockElement::zero(c.target);
  c.basis_images.reserve(c.base.dim());
  for (std::size_t k = 0; k < c.base.dim(); ++k)
    c.basis_images.push_back(
        eval_word_sum(c.base.basis_expr[k], c.gen_images, unit, zero));

  double scale = 1.0;
  for (const auto& im : c.basis_images) scale = std::max(scale, frob_norm(im));

  // Multiplicativity against the base structure constants.
  const std::size_t m = c.base.dim();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      BlockElement p = c.basis_images[a] * c.basis_images[b];
      for (std::size_t k = 0; k < m; ++k)
        p = p - c.base.structure[a](b, k) * c.basis_images[k];
      if (frob_norm(p) > 1e-7 * scale * scale)
        throw InvalidHom("make_cover: images do not satisfy the base relations");
    }

  // Unitality.
  CVector cu = c.base.coefficients(c.base.unit());
  BlockElement iu = zero;
  for (std::size_t k = 0; k < m; ++k) iu = iu + cu(k) * c.basis_images[k];
  if (frob_norm(iu - unit) > 1e-7 * scale)
    throw InvalidHom("make_cover: map is not unital");

  // Generation: the C*-algebra generated by the image is everything.
  if (detail::star_closure_dim(c.target, c.gen_images, tol) !=
      c.target.linear_dim())
    throw InvalidHom("make_cover: image does not generate the target");

  // Sampled complete isometry at low matrix levels.
  for (int level = 1; level <= 3; ++level) {
    for (int sample = 0; sample < 6; ++sample) {
      auto rng = rng_stream(tol.rng_seed, 0xc07e6a11u,
                            static_cast<std::uint64_t>(level),
                            static_cast<std::uint64_t>(sample));
      std::normal_distribution<double> dist(0.0, 1.0);
      std::vector<std::vector<CVector>> u(level, std::vector<CVector>(level));
      for (int p = 0; p < level; ++p)
        for (int q = 0; q < level; ++q) {
          CVector v(m);
          for (std::size_t d = 0; d < m; ++d) v(d) = Complex(dist(rng), dist(rng));
          u[p][q] = v;
        }
      double nb = level_norm(c.base, u);
      double nt = detail::level_norm_images(c.target, c.basis_images, u);
      if (std::abs(nb - nt) > 1e3 * tol.eps_norm * std::max(1.0, nb))
        throw NotIsometry("make_cover: map fails sampled complete isometry");
    }
  }
  return c;
}

// The cover of A given by its own generated C*-algebra, realized
// canonically as a direct sum of full matrix blocks.
inline Cover generated_cover(const OperatorAlgebra& A,
                             const ToleranceConfig& tol = default_tolerances(),
                             std::string label = "generated") {
  std::vector<CMatrix> embedded;
  embedded.reserve(A.generators.size());
  for (const auto& g : A.generators) embedded.push_back(g.embed());
  auto dec = wedderburn(embedded, A.ambient.total_dim(), tol);
  std::vector<BlockElement> images;
  images.reserve(embedded.size());
  for (const auto& g : embedded) images.push_back(dec.apply(g));
  return make_cover(A, dec.shape, std::move(images), std::move(label), tol);
}

// ---------------------------------------------------------------------
// Comparison of covers.
// ---------------------------------------------------------------------

enum class CoverOrder { equal, first_above, second_above, incomparable, unknown };

struct MorphismCertificate {
  StarHomData hom;
  double residual = 0.0;  // max generator deviation of hom . j1 from j2
};

struct CompareResult {
  CoverOrder order = CoverOrder::unknown;
  std::optional<MorphismCertificate> first_to_second;
  std::optional<MorphismCertificate> second_to_first;
};

// Per-generator fingerprint: the spectrum of j(g)* j(g) over all blocks,
// sorted, deduplicated at 1e-9. Unital *-homomorphisms can only shrink
// these sets, so fresh spectral values certify non-existence.
inline std::vector<std::vector<double>> cover_fingerprint(const Cover& c) {
  std::vector<std::vector<double>> out;
  for (const auto& im : c.gen_images) {
    std::vector<double> vals;
    for (const auto& blk : im.blocks) {
      CMatrix h = blk.adjoint() * blk;
      h = 0.5 * (h + h.adjoint().eval());
      Eigen::VectorXd ev = herm_eigs(h);
      for (Eigen::Index i = 0; i < ev.size(); ++i) vals.push_back(ev(i));
    }
    std::sort(vals.begin(), vals.end());
    std::vector<double> dedup;
    for (double v : vals)
      if (dedup.empty() || v - dedup.back() > 1e-9) dedup.push_back(v);
    out.push_back(std::move(dedup));
  }
  return out;
}

namespace detail {

inline void require_same_signature(const Cover& x, const Cover& y) {
  if (x.base.ambient != y.base.ambient ||
      x.base.generators.size() != y.base.generators.size())
    throw BaseMismatch("covers do not share a base signature");
}

// All multiplicity rows m >= 0 with sum_j m_j * sizes_j = fill.
inline std::vector<std::vector<int>> multiplicity_rows(
    const std::vector<Eigen::Index>& sizes, Eigen::Index fill) {
  std::vector<std::vector<int>> out;
  std::vector<int> row(sizes.size(), 0);
  std::function<void(std::size_t, Eigen::Index)> rec = [&](std::size_t j,
                                                           Eigen::Index left) {
    if (j == sizes.size()) {
      if (left == 0) out.push_back(row);
      return;
    }
    for (int c = 0; c * sizes[j] <= left; ++c) {
      row[j] = c;
      rec(j + 1, left - c * sizes[j]);
    }
    row[j] = 0;
  };
  rec(0, fill);
  return out;
}

// Search a unital *-homomorphism theta with theta(j1(g)) = j2(g). The
// map factors through each target block independently: stack copies of
// the source blocks by a multiplicity row and look for a unitary
// intertwiner. Including the adjoint equations makes the intertwiner
// space a *-closed algebra module, so a generic element has a unitary
// polar factor whenever the row works at all.
inline std::optional<StarHomData> find_morphism(const Cover& x, const Cover& y,
                                                const ToleranceConfig& tol,
                                                double* residual_out) {
  const std::size_t G = x.gen_images.size();
  double scale = 1.0;
  for (const auto& g : y.gen_images) scale = std::max(scale, frob_norm(g));

  StarHomData hom;
  hom.source = x.target;
  hom.target = y.target;
  hom.multiplicity.clear();
  hom.conjugators.clear();
  double worst = 0.0;

  for (std::size_t i = 0; i < y.target.block_count(); ++i) {
    const Eigen::Index ni = y.target.sizes[i];
    bool solved = false;
    for (const auto& row : multiplicity_rows(x.target.sizes, ni)) {
      // Stacked source representation for this row.
      auto stack = [&](const BlockElement& e) {
        CMatrix d = CMatrix::Zero(ni, ni);
        Eigen::Index off = 0;
        for (std::size_t j = 0; j < x.target.block_count(); ++j)
          for (int cpy = 0; cpy < row[j]; ++cpy) {
            d.block(off, off, x.target.sizes[j], x.target.sizes[j]) =
                e.blocks[j];
            off += x.target.sizes[j];
          }
        return d;
      };
      // Intertwiner equations R W = W D for every generator and adjoint.
      CMatrix eqs(2 * G * ni * ni, ni * ni);
      Eigen::Index r0 = 0;
      CMatrix id = CMatrix::Identity(ni, ni);
      for (std::size_t g = 0; g < G; ++g) {
        CMatrix D = stack(x.gen_images[g]);
        CMatrix R = y.gen_images[g].blocks[i];
        eqs.block(r0, 0, ni * ni, ni * ni) =
            Eigen::kroneckerProduct(id, R) - Eigen::kroneckerProduct(D.transpose(), id);
        r0 += ni * ni;
        CMatrix Da = D.adjoint();
        CMatrix Ra = R.adjoint();
        eqs.block(r0, 0, ni * ni, ni * ni) =
            Eigen::kroneckerProduct(id, Ra) - Eigen::kroneckerProduct(Da.transpose(), id);
        r0 += ni * ni;
      }
      Eigen::JacobiSVD<CMatrix> svd(eqs, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      double smax = sv.size() ? sv(0) : 0.0;
      Eigen::Index rank = 0;
      for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > 1e-9 * std::max(1.0, smax)) ++rank;
      Eigen::Index nullity = ni * ni - rank;
      if (nullity <= 0) continue;

      for (int attempt = 0; attempt < 4 && !solved; ++attempt) {
        auto rng = rng_stream(tol.rng_seed, 0x303f15u,
                              static_cast<std::uint64_t>(i),
                              static_cast<std::uint64_t>(attempt));
        std::normal_distribution<double> dist(0.0, 1.0);
        CVector combo = CVector::Zero(ni * ni);
        for (Eigen::Index k = rank; k < ni * ni; ++k)
          combo += Complex(dist(rng), dist(rng)) * svd.matrixV().col(k);
        CMatrix W = Eigen::Map<CMatrix>(combo.data(), ni, ni);
        Eigen::JacobiSVD<CMatrix> wsvd(W, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (wsvd.singularValues()(ni - 1) < 1e-10) continue;
        CMatrix U = wsvd.matrixU() * wsvd.matrixV().adjoint();
        // Re-verify the conjugated stack against the desired images.
        double res = 0.0;
        for (std::size_t g = 0; g < G; ++g) {
          CMatrix D = stack(x.gen_images[g]);
          res = std::max(res, frob_norm(CMatrix(U * D * U.adjoint() -
                                                y.gen_images[g].blocks[i])));
        }
        if (res <= 1e-7 * std::max(1.0, scale)) {
          hom.multiplicity.push_back(row);
          hom.conjugators.push_back(U);
          worst = std::max(worst, res);
          solved = true;
        }
      }
      if (solved) break;
    }
    if (!solved) return std::nullopt;
  }
  hom.validate(tol);
  if (residual_out) *residual_out = worst;
  return hom;
}

inline bool fingerprint_obstructs(const std::vector<std::vector<double>>& from,
                                  const std::vector<std::vector<double>>& to) {
  // A morphism cannot create spectral values absent upstream.
  for (std::size_t g = 0; g < from.size(); ++g)
    for (double v : to[g]) {
      bool found = false;
      for (double w : from[g])
        if (std::abs(v - w) <= 1e-7) { found = true; break; }
      if (!found) return true;
    }
  return false;
}

}  // namespace detail

// Decide the order between two covers of the same base. "first_above"
// means a unital *-homomorphism carries the first cover onto the
// second over the base. Incomparability is only reported when spectral
// fingerprints certify the obstruction in both directions; otherwise a
// failed search yields "unknown".
inline CompareResult compare(const Cover& x, const Cover& y,
                             const ToleranceConfig& tol = default_tolerances()) {
  detail::require_same_signature(x, y);
  CompareResult r;
  // A unital *-homomorphism can only shrink the spectrum of j(g)* j(g),
  // so a fingerprint obstruction settles a direction without running
  // the intertwiner search.
  auto fx = cover_fingerprint(x);
  auto fy = cover_fingerprint(y);
  const bool ob_xy = detail::fingerprint_obstructs(fx, fy);
  const bool ob_yx = detail::fingerprint_obstructs(fy, fx);
  double res_xy = 0.0, res_yx = 0.0;
  std::optional<StarHomData> fwd, bwd;
  if (!ob_xy) fwd = detail::find_morphism(x, y, tol, &res_xy);
  if (!ob_yx) bwd = detail::find_morphism(y, x, tol, &res_yx);
  if (fwd) r.first_to_second = MorphismCertificate{*fwd, res_xy};
  if (bwd) r.second_to_first = MorphismCertificate{*bwd, res_yx};
  if (fwd && bwd) r.order = CoverOrder::equal;
  else if (fwd) r.order = CoverOrder::first_above;
  else if (bwd) r.order = CoverOrder::second_above;
  else r.order = (ob_xy && ob_yx) ? CoverOrder::incomparable
                                  : CoverOrder::unknown;
  return r;
}

// Least upper bound of two covers of one base: the C*-algebra generated
// by the direct sum of the two maps, realized canonically.
inline Cover join(const Cover& x, const Cover& y,
                  const ToleranceConfig& tol = default_tolerances()) {
  detail::require_same_signature(x, y);
  double scale = 1.0;
  for (const auto& g : x.base.generators) scale = std::max(scale, frob_norm(g));
  for (std::size_t g = 0; g < x.base.generators.size(); ++g)
    if (frob_norm(x.base.generators[g] - y.base.generators[g]) > 1e-9 * scale)
      throw BaseMismatch("join: covers carry different base generators");

  const Eigen::Index dx = x.target.total_dim();
  const Eigen::Index dy = y.target.total_dim();
  std::vector<CMatrix> big;
  big.reserve(x.gen_images.size());
  for (std::size_t g = 0; g < x.gen_images.size(); ++g) {
    CMatrix m = CMatrix::Zero(dx + dy, dx + dy);
    m.block(0, 0, dx, dx) = x.gen_images[g].embed();
    m.block(dx, dx, dy, dy) = y.gen_images[g].embed();
    big.push_back(std::move(m));
  }
  auto dec = wedderburn(big, dx + dy, tol);
  std::vector<BlockElement> images;
  images.reserve(big.size());
  for (const auto& m : big) images.push_back(dec.apply(m));
  return make_cover(x.base, dec.shape, std::move(images),
                    "join(" + x.label + "," + y.label + ")", tol);
}

// Minimum of the cover order: quotient of the generated C*-algebra by
// the Shilov ideal.
inline Cover envelope(const OperatorAlgebra& A,
                      const ToleranceConfig& tol = default_tolerances()) {
  Cover amb = generated_cover(A, tol, "generated");
  OperatorAlgebra canon = generate_algebra(amb.target, amb.gen_images, tol);
  Ideal sh = shilov_ideal(canon, tol);
  if (sh.empty()) {
    Cover c = amb;
    c.label = "envelope";
    return c;
  }
  auto qs = quotient_shape(sh);
  std::vector<BlockElement> images;
  images.reserve(amb.gen_images.size());
  for (const auto& g : amb.gen_images) images.push_back(quotient(g, sh));
  return make_cover(A, qs.shape, std::move(images), "envelope", tol);
}

// ---------------------------------------------------------------------
// Shilov extensions.
// ---------------------------------------------------------------------

// The algebra A + I inside B = C*(A), where I is the Shilov ideal of A.
// The base is rewritten in its canonical C*-realization first, so the
// ideal is a union of blocks and the projection p: A + I -> A along I is
// exact linear algebra.
struct ShilovExtension {
  OperatorAlgebra base;      // A, canonically realized in B
  Ideal shilov;              // S subset of the blocks of B
  OperatorAlgebra extended;  // A + I in the same ambient
  std::vector<BlockElement> ideal_units;  // matrix-unit basis of I

  // p(a + i) = a: the completely contractive projection along I.
  BlockElement project(const BlockElement& x) const {
    std::vector<BlockElement> combined = base.basis;
    combined.insert(combined.end(), ideal_units.begin(), ideal_units.end());
    const Eigen::Index flat = base.ambient.linear_dim();
    CMatrix K(flat, combined.size());
    auto flatten = [&](const BlockElement& e) {
      CVector v(flat);
      Eigen::Index off = 0;
      for (const auto& blk : e.blocks) {
        v.segment(off, blk.size()) =
            Eigen::Map<const CVector>(blk.data(), blk.size());
        off += blk.size();
      }
      return v;
    };
    for (std::size_t j = 0; j < combined.size(); ++j)
      K.col(j) = flatten(combined[j]);
    CVector rhs = flatten(x);
    CVector sol = K.colPivHouseholderQr().solve(rhs);
    if ((K * sol - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm()))
      throw ShapeMismatch("ShilovExtension::project: element not in A + I");
    BlockElement out = BlockElement::zero(base.ambient);
    for (std::size_t k = 0; k < base.dim(); ++k)
      out = out + sol(k) * base.basis[k];
    return out;
  }
};

inline ShilovExtension extend_by_shilov(const OperatorAlgebra& A,
                                        const ToleranceConfig& tol = default_tolerances()) {
  Cover amb = generated_cover(A, tol, "generated");
  ShilovExtension ext;
  ext.base = generate_algebra(amb.target, amb.gen_images, tol);
  ext.shilov = shilov_ideal(ext.base, tol);
  for (auto b : ext.shilov.members) {
    Eigen::Index n = amb.target.sizes[b];
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        ext.ideal_units.push_back(BlockElement::unit(amb.target, b, i, j));
  }
  std::vector<BlockElement> gens = ext.base.generators;
  gens.insert(gens.end(), ext.ideal_units.begin(), ext.ideal_units.end());
  ext.extended = generate_algebra(amb.target, gens, tol);
  // A and I intersect trivially; the sum is direct.
  if (ext.extended.dim() != ext.base.dim() + ext.ideal_units.size())
    throw NumericalFailure("extend_by_shilov: A and I fail to sum directly");
  return ext;
}

// ---------------------------------------------------------------------
// The lattice maps between covers of A + I and covers of A.
// ---------------------------------------------------------------------

namespace detail {

inline void require_extended_base(const ShilovExtension& ext, const Cover& c) {
  if (c.base.ambient != ext.extended.ambient ||
      c.base.generators.size() != ext.extended.generators.size())
    throw BaseMismatch("cover base is not the extended algebra");
}

inline void require_core_base(const ShilovExtension& ext, const Cover& c) {
  if (c.base.ambient != ext.base.ambient ||
      c.base.generators.size() != ext.base.generators.size())
    throw BaseMismatch("cover base is not the core algebra");
}

}  // namespace detail

// Quotient map on covers: kill the ideal generated by the image of I.
// Target blocks carrying image mass in the ambiguous band between exact
// zero and clear presence raise ImageNotIdeal.
inline Cover map_Q(const ShilovExtension& ext, const Cover& c,
                   const ToleranceConfig& tol = default_tolerances()) {
  detail::require_extended_base(ext, c);
  const std::size_t nA = ext.base.generators.size();
  std::set<std::size_t> touched;
  for (std::size_t b = 0; b < c.target.block_count(); ++b) {
    double mass = 0.0;
    for (std::size_t u = 0; u < ext.ideal_units.size(); ++u)
      mass = std::max(mass, op_norm(c.gen_images[nA + u].blocks[b]));
    if (mass > 1e-6)
      touched.insert(b);
    else if (mass > 1e-9)
      throw ImageNotIdeal("map_Q: image of the ideal is numerically ambiguous");
  }
  Ideal killed(c.target, touched);
  if (killed.full())
    throw ImageNotIdeal("map_Q: image of the ideal touches every block");
  auto qs = quotient_shape(killed);
  std::vector<BlockElement> images;
  images.reserve(nA);
  for (std::size_t g = 0; g < nA; ++g)
    images.push_back(quotient(c.gen_images[g], killed));
  return make_cover(ext.base, qs.shape, std::move(images), "Q(" + c.label + ")",
                    tol);
}

// Inflation map on covers: send a cover (D, j) of A to the cover of
// A + I generated by x -> (j(p(x)), x).
inline Cover map_N(const ShilovExtension& ext, const Cover& d,
                   const ToleranceConfig& tol = default_tolerances()) {
  detail::require_core_base(ext, d);
  const Eigen::Index dd = d.target.total_dim();
  const Eigen::Index db = ext.extended.ambient.total_dim();
  std::vector<CMatrix> big;
  big.reserve(ext.extended.generators.size());
  for (const auto& u : ext.extended.generators) {
    CMatrix m = CMatrix::Zero(dd + db, dd + db);
    m.block(0, 0, dd, dd) = d.map(ext.project(u)).embed();
    m.block(dd, dd, db, db) = u.embed();
    big.push_back(std::move(m));
  }
  auto dec = wedderburn(big, dd + db, tol);
  std::vector<BlockElement> images;
  images.reserve(big.size());
  for (const auto& m : big) images.push_back(dec.apply(m));
  return make_cover(ext.extended, dec.shape, std::move(images),
                    "N(" + d.label + ")", tol);
}

// Restriction map on covers: the C*-subalgebra generated by the image
// of A inside a cover of A + I, canonically realized.
inline Cover map_R(const ShilovExtension& ext, const Cover& c,
                   const ToleranceConfig& tol = default_tolerances()) {
  detail::require_extended_base(ext, c);
  const std::size_t nA = ext.base.generators.size();
  std::vector<CMatrix> big;
  big.reserve(nA);
  for (std::size_t g = 0; g < nA; ++g) big.push_back(c.gen_images[g].embed());
  auto dec = wedderburn(big, c.target.total_dim(), tol);
  std::vector<BlockElement> images;
  images.reserve(nA);
  for (const auto& m : big) images.push_back(dec.apply(m));
  return make_cover(ext.base, dec.shape, std::move(images), "R(" + c.label + ")",
                    tol);
}

// Concrete model of the maximal-flavored cover of A + I obtained by
// doubling each Shilov block: the first copy carries a + i, the second
// carries a alone. Its Shilov ideal is exactly the set of second
// copies, so quotienting recovers B.
struct DoubledModel {
  Cover cover;
  Ideal doubled;  // predicted Shilov ideal of the model: the second copies
};

inline DoubledModel cmax_plus_model(const ShilovExtension& ext,
                                    const ToleranceConfig& tol = default_tolerances()) {
  if (ext.shilov.empty())
    throw NotShilov("cmax_plus_model: the extension has a trivial ideal");
  std::vector<Eigen::Index> sizes;
  std::set<std::size_t> second_copies;
  for (std::size_t b = 0; b < ext.base.ambient.block_count(); ++b) {
    sizes.push_back(ext.base.ambient.sizes[b]);
    if (ext.shilov.contains(b)) {
      second_copies.insert(sizes.size());
      sizes.push_back(ext.base.ambient.sizes[b]);
    }
  }
  BlockShape model_shape(sizes);
  std::vector<BlockElement> images;
  images.reserve(ext.extended.generators.size());
  for (const auto& u : ext.extended.generators) {
    BlockElement pu = ext.project(u);
    BlockElement im = BlockElement::zero(model_shape);
    std::size_t t = 0;
    for (std::size_t b = 0; b < ext.base.ambient.block_count(); ++b) {
      im.blocks[t++] = u.blocks[b];
      if (ext.shilov.contains(b)) im.blocks[t++] = pu.blocks[b];
    }
    images.push_back(std::move(im));
  }
  DoubledModel m;
  m.cover = make_cover(ext.extended, model_shape, std::move(images),
                       "doubled-model", tol);
  m.doubled = Ideal(model_shape, second_copies);
  return m;
}

}  // namespace cstarlab
