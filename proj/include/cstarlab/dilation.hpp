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

#include "choi.hpp"
#include "covers.hpp"

namespace cstarlab {

// ---------------------------------------------------------------------
// Representations on a concrete Hilbert space, stored by their values
// on the orthonormal basis of the algebra.
// ---------------------------------------------------------------------

struct Representation {
  Eigen::Index dim = 0;
  std::vector<CMatrix> basis_images;
};

inline CMatrix rep_apply(const OperatorAlgebra& A, const Representation& rep,
                         const BlockElement& x, double coef_tol = 1e-8) {
  CVector c = A.coefficients(x, coef_tol);
  CMatrix out = CMatrix::Zero(rep.dim, rep.dim);
  for (Eigen::Index k = 0; k < c.size(); ++k)
    out += c(k) * rep.basis_images[static_cast<std::size_t>(k)];
  return out;
}

inline Representation identity_representation(const OperatorAlgebra& A) {
  Representation r;
  r.dim = A.ambient.total_dim();
  r.basis_images.reserve(A.basis.size());
  for (const auto& b : A.basis) r.basis_images.push_back(b.embed());
  return r;
}

// Unital homomorphism + sampled complete contractivity checks. The
// basis images must satisfy the algebra's structure constants exactly
// up to numerical tolerance; norms may only shrink.
inline void validate_representation(
    const OperatorAlgebra& A, const Representation& rep,
    const ToleranceConfig& tol = default_tolerances()) {
  const std::size_t m = A.basis.size();
  if (rep.dim <= 0) throw InvalidHom("representation: empty target space");
  if (rep.basis_images.size() != m)
    throw InvalidHom("representation: one image per basis element required");
  double scale = 1.0;
  for (const auto& im : rep.basis_images) {
    if (im.rows() != rep.dim || im.cols() != rep.dim)
      throw ShapeMismatch("representation: image has wrong dimensions");
    scale = std::max(scale, frob_norm(im));
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      CMatrix p = rep.basis_images[a] * rep.basis_images[b];
      for (std::size_t k = 0; k < m; ++k)
        p -= A.structure[a](b, k) * rep.basis_images[k];
      if (frob_norm(p) > 1e-7 * scale * scale)
        throw InvalidHom("representation: images violate the algebra relations");
    }
  CVector cu = A.coefficients(A.unit());
  CMatrix iu = CMatrix::Zero(rep.dim, rep.dim);
  for (std::size_t k = 0; k < m; ++k) iu += cu(k) * rep.basis_images[k];
  if (frob_norm(CMatrix(iu - CMatrix::Identity(rep.dim, rep.dim))) >
      1e-7 * scale)
    throw InvalidHom("representation: map is not unital");

  // Sampled complete contractivity at matrix levels 1 and 2.
  BlockShape tgt;
  tgt.sizes = {rep.dim};
  std::vector<BlockElement> wrapped;
  wrapped.reserve(m);
  for (const auto& im : rep.basis_images) {
    BlockElement e = BlockElement::zero(tgt);
    e.blocks[0] = im;
    wrapped.push_back(e);
  }
  for (int level = 1; level <= 2; ++level)
    for (int sample = 0; sample < 4; ++sample) {
      auto rng = rng_stream(tol.rng_seed, 0x5e9cc071u,
                            static_cast<std::uint64_t>(level),
                            static_cast<std::uint64_t>(sample));
      std::normal_distribution<double> dist(0.0, 1.0);
      std::vector<std::vector<CVector>> u(level, std::vector<CVector>(level));
      for (int p = 0; p < level; ++p)
        for (int q = 0; q < level; ++q) {
          CVector v(static_cast<Eigen::Index>(m));
          for (std::size_t k = 0; k < m; ++k)
            v(static_cast<Eigen::Index>(k)) = Complex(dist(rng), dist(rng));
          u[p][q] = v;
        }
      double nb = level_norm(A, u);
      double nt = detail::level_norm_images(tgt, wrapped, u);
      if (nt > nb + 1e3 * tol.eps_norm * std::max(1.0, nb))
        throw InvalidHom("representation: map is not completely contractive");
    }
}

// ---------------------------------------------------------------------
// Compression to a subspace given by an isometric column frame.
// ---------------------------------------------------------------------

struct Compression {
  Eigen::Index dim = 0;
  std::vector<CMatrix> basis_images;
  bool multiplicative = false;  // true when the rep dilates the compression
};

inline Compression compress(const OperatorAlgebra& A, const Representation& rep,
                            const CMatrix& V,
                            const ToleranceConfig& tol = default_tolerances()) {
  validate_matrix(V);
  if (V.rows() != rep.dim || V.cols() < 1 || V.cols() > V.rows())
    throw ShapeMismatch("compress: frame has wrong dimensions");
  const Eigen::Index h = V.cols();
  if (frob_norm(CMatrix(V.adjoint() * V - CMatrix::Identity(h, h))) >
      1e3 * tol.eps_eq)
    throw NotIsometry("compress: columns are not an isometry");

  Compression out;
  out.dim = h;
  out.basis_images.reserve(rep.basis_images.size());
  double scale = 1.0;
  for (const auto& im : rep.basis_images) {
    out.basis_images.push_back(CMatrix(V.adjoint() * im * V));
    scale = std::max(scale, frob_norm(out.basis_images.back()));
  }
  const std::size_t m = A.basis.size();
  double defect = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      CMatrix p = out.basis_images[a] * out.basis_images[b];
      for (std::size_t k = 0; k < m; ++k)
        p -= A.structure[a](b, k) * out.basis_images[k];
      defect = std::max(defect, frob_norm(p));
    }
  out.multiplicative = defect <= 1e-7 * scale * scale;
  return out;
}

// ---------------------------------------------------------------------
// Truncated shift pairs: the 2n x 2n contraction [[S, zD], [0, S*]]
// where S is the backward shift on C^n and D = I - S S* is the rank-one
// defect projection onto the last basis vector.
// ---------------------------------------------------------------------

inline CMatrix truncated_shift_pair(Eigen::Index n, Complex z) {
  if (n < 2) throw EmptyInput("truncated_shift_pair: need n >= 2");
  CMatrix S = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) S(i, i + 1) = 1.0;
  CMatrix D = CMatrix::Identity(n, n) - S * S.adjoint();
  CMatrix V = CMatrix::Zero(2 * n, 2 * n);
  V.block(0, 0, n, n) = S;
  V.block(0, n, n, n) = z * D;
  V.block(n, n, n, n) = S.adjoint();
  return V;
}

// ---------------------------------------------------------------------
// Twist-dilation families. A family packages a unital completely
// contractive map into an upper-triangular 3 x 3 operator grid
//
//     [ pi1   s12   s13 ]
//     [  0    pi    s23 ]
//     [  0     0    pi3 ]
//
// where the middle compression recovers the identity copy of the
// algebra. Twisting multiplies s12 and s23 by a disk parameter z and
// s13 by z^2, which keeps the assembled map a homomorphism.
// ---------------------------------------------------------------------

struct TwistFamily {
  OperatorAlgebra base;
  Eigen::Index h1 = 0, h = 0, h2 = 0;
  std::vector<CMatrix> pi1, pi, pi3, s12, s13, s23;  // per basis element

  Eigen::Index total_dim() const { return h1 + h + h2; }
};

namespace detail {

inline std::vector<CMatrix> assemble_twist(const TwistFamily& f, Complex z) {
  const Eigen::Index D = f.total_dim();
  const Eigen::Index h1 = f.h1, h = f.h, h2 = f.h2;
  std::vector<CMatrix> out;
  out.reserve(f.base.basis.size());
  for (std::size_t k = 0; k < f.base.basis.size(); ++k) {
    CMatrix M = CMatrix::Zero(D, D);
    M.block(0, 0, h1, h1) = f.pi1[k];
    M.block(0, h1, h1, h) = z * f.s12[k];
    M.block(0, h1 + h, h1, h2) = (z * z) * f.s13[k];
    M.block(h1, h1, h, h) = f.pi[k];
    M.block(h1, h1 + h, h, h2) = z * f.s23[k];
    M.block(h1 + h, h1 + h, h2, h2) = f.pi3[k];
    out.push_back(M);
  }
  return out;
}

inline void validate_twist_family(const TwistFamily& f) {
  const std::size_t m = f.base.basis.size();
  if (m == 0) throw EmptyInput("twist family: empty base algebra");
  if (f.h1 <= 0 || f.h <= 0 || f.h2 <= 0)
    throw ShapeMismatch("twist family: all three summands must be nonempty");
  auto check = [&](const std::vector<CMatrix>& v, Eigen::Index r,
                   Eigen::Index c, const char* what) {
    if (v.size() != m) throw ShapeMismatch(std::string("twist family: ") +
                                           what + " misaligned with basis");
    for (const auto& mat : v)
      if (mat.rows() != r || mat.cols() != c)
        throw ShapeMismatch(std::string("twist family: ") + what +
                            " has wrong dimensions");
  };
  check(f.pi1, f.h1, f.h1, "pi1");
  check(f.pi, f.h, f.h, "pi");
  check(f.pi3, f.h2, f.h2, "pi3");
  check(f.s12, f.h1, f.h, "s12");
  check(f.s13, f.h1, f.h2, "s13");
  check(f.s23, f.h, f.h2, "s23");
}

}  // namespace detail

// Evaluate the family at a disk parameter. The assembled map is checked
// to be a unital homomorphism whose middle corner is exactly pi, and a
// sampled complete contractivity test guards the family data.
inline Representation twist(const TwistFamily& f, Complex z,
                            const ToleranceConfig& tol = default_tolerances()) {
  detail::validate_twist_family(f);
  if (std::abs(z) > 1.0 + tol.eps_eq)
    throw OutsideDisk("twist: parameter lies outside the closed unit disk");
  Representation rep;
  rep.dim = f.total_dim();
  rep.basis_images = detail::assemble_twist(f, z);
  validate_representation(f.base, rep, tol);
  for (std::size_t k = 0; k < f.base.basis.size(); ++k) {
    CMatrix mid = rep.basis_images[k].block(f.h1, f.h1, f.h, f.h);
    if ((mid - f.pi[k]).norm() != 0.0)
      throw NumericalFailure("twist: middle compression deviates from pi");
  }
  return rep;
}

// The 4 x 4 upper-triangular family carried by the two-by-two upper
// triangular matrices: T2 acts as itself through a defect-weighted
// Sarason triple with parameter t in [0, 1]. For x = [[a, b], [0, c]]:
//
//   pi1(x) = [a]                  s12(x) = [0, b sqrt(1-t)]
//   pi(x)  = [[a, b sqrt(t)],     s13(x) = [-b sqrt(t)]
//             [0, c]]             s23(x) = [[b sqrt(1-t)], [0]]
//   pi3(x) = [c]
//
// At t = 1 the middle copy is unitarily the identity and the twisted
// corner carries the full defect.
inline TwistFamily t2_sarason_family(
    double t, const ToleranceConfig& tol = default_tolerances()) {
  if (!(t >= 0.0 && t <= 1.0))
    throw OutsideDisk("t2_sarason_family: t must lie in [0, 1]");
  BlockShape amb;
  amb.sizes = {2};
  std::vector<BlockElement> gens;
  BlockElement e11 = BlockElement::unit(amb, 0, 0, 0);
  BlockElement e12 = BlockElement::unit(amb, 0, 0, 1);
  gens.push_back(e11);
  gens.push_back(e12);
  TwistFamily f;
  f.base = generate_algebra(amb, gens, tol);
  f.h1 = 1;
  f.h = 2;
  f.h2 = 1;
  const double rt = std::sqrt(t), rt1 = std::sqrt(1.0 - t);
  for (const auto& b : f.base.basis) {
    Complex a = b.blocks[0](0, 0);
    Complex bo = b.blocks[0](0, 1);
    Complex c = b.blocks[0](1, 1);
    CMatrix p1(1, 1), p(2, 2), p3(1, 1), m12(1, 2), m13(1, 1), m23(2, 1);
    p1 << a;
    p << a, bo * rt, Complex(0.0), c;
    p3 << c;
    m12 << Complex(0.0), bo * rt1;
    m13 << -bo * rt;
    m23 << bo * rt1, Complex(0.0);
    f.pi1.push_back(p1);
    f.pi.push_back(p);
    f.pi3.push_back(p3);
    f.s12.push_back(m12);
    f.s13.push_back(m13);
    f.s23.push_back(m23);
  }
  return f;
}

// Norm of a word expression pushed through the twisted generator images
// across a parameter grid.
inline std::vector<std::pair<Complex, double>> delta_curve(
    const TwistFamily& f, const WordSum& x, const std::vector<Complex>& grid,
    const ToleranceConfig& tol = default_tolerances()) {
  if (grid.empty()) throw EmptyInput("delta_curve: empty grid");
  std::vector<std::pair<Complex, double>> out;
  out.reserve(grid.size());
  const Eigen::Index D = f.total_dim();
  CMatrix unit = CMatrix::Identity(D, D);
  CMatrix zero = CMatrix::Zero(D, D);
  for (Complex z : grid) {
    Representation rep = twist(f, z, tol);
    std::vector<CMatrix> gen_imgs;
    gen_imgs.reserve(f.base.generators.size());
    for (const auto& g : f.base.generators) {
      CVector c = f.base.coefficients(g);
      CMatrix img = zero;
      for (Eigen::Index k = 0; k < c.size(); ++k)
        img += c(k) * rep.basis_images[static_cast<std::size_t>(k)];
      gen_imgs.push_back(img);
    }
    out.emplace_back(z, op_norm(eval_word_sum(x, gen_imgs, unit, zero)));
  }
  return out;
}

// ---------------------------------------------------------------------
// Maximality of a representation: does it admit a nontrivial dilation
// that still restricts to a homomorphism? Decided through the geometry
// of unital completely positive extensions to the generated C*-algebra.
// ---------------------------------------------------------------------

enum class Maximality { maximal, not_maximal, unknown };

struct DilationCertificate {
  Eigen::Index dilation_dim = 0;
  std::vector<CMatrix> dilation_images;  // *-representation on the basis
  CMatrix embedding;                     // isometry into the dilation space
  double compression_residual = 0.0;
  double reduction_defect = 0.0;
};

struct MaximalityVerdict {
  Maximality status = Maximality::unknown;
  std::optional<DilationCertificate> certificate;
  std::string evidence;
};

namespace detail {

// Enumerate the matrix units of a block shape in a fixed order.
inline std::vector<BlockElement> shape_units(const BlockShape& shape) {
  std::vector<BlockElement> units;
  for (std::size_t b = 0; b < shape.block_count(); ++b)
    for (Eigen::Index u = 0; u < shape.sizes[b]; ++u)
      for (Eigen::Index v = 0; v < shape.sizes[b]; ++v)
        units.push_back(BlockElement::unit(shape, b, u, v));
  return units;
}

// Worst multiplicativity defect of the UCP map encoded by x, measured
// on all products of matrix units of the domain.
inline double unit_mult_defect(const UcpRegion& region,
                               const Eigen::VectorXd& x) {
  const BlockShape& B = region.domain;
  std::vector<CMatrix> imgs;
  struct UnitIdx {
    std::size_t b;
    Eigen::Index u, v;
  };
  std::vector<UnitIdx> idx;
  for (std::size_t b = 0; b < B.block_count(); ++b)
    for (Eigen::Index u = 0; u < B.sizes[b]; ++u)
      for (Eigen::Index v = 0; v < B.sizes[b]; ++v) {
        imgs.push_back(region.apply(x, BlockElement::unit(B, b, u, v)));
        idx.push_back({b, u, v});
      }
  double worst = 0.0;
  for (std::size_t p = 0; p < imgs.size(); ++p)
    for (std::size_t q = 0; q < imgs.size(); ++q) {
      CMatrix prod = imgs[p] * imgs[q];
      if (idx[p].b == idx[q].b && idx[p].v == idx[q].u) {
        // E_{u v} E_{v t} = E_{u t} within the same block.
        for (std::size_t r = 0; r < imgs.size(); ++r)
          if (idx[r].b == idx[p].b && idx[r].u == idx[p].u &&
              idx[r].v == idx[q].v) {
            prod -= imgs[r];
            break;
          }
      }
      worst = std::max(worst, frob_norm(prod));
    }
  return worst;
}

// Search a unital *-homomorphism from the block algebra into M_d whose
// values on the prescribed elements match. Same intertwiner scheme as
// the cover morphism search, specialized to a single target block.
inline std::optional<StarHomData> find_rep_hom(
    const BlockShape& B, const std::vector<BlockElement>& args,
    const std::vector<CMatrix>& values, Eigen::Index d,
    const ToleranceConfig& tol) {
  double scale = 1.0;
  for (const auto& v : values) scale = std::max(scale, frob_norm(v));
  for (const auto& row : multiplicity_rows(B.sizes, d)) {
    auto stack = [&](const BlockElement& e) {
      CMatrix m = CMatrix::Zero(d, d);
      Eigen::Index off = 0;
      for (std::size_t j = 0; j < B.block_count(); ++j)
        for (int cpy = 0; cpy < row[j]; ++cpy) {
          m.block(off, off, B.sizes[j], B.sizes[j]) = e.blocks[j];
          off += B.sizes[j];
        }
      return m;
    };
    CMatrix eqs(2 * static_cast<Eigen::Index>(args.size()) * d * d, d * d);
    Eigen::Index r0 = 0;
    CMatrix id = CMatrix::Identity(d, d);
    for (std::size_t g = 0; g < args.size(); ++g) {
      CMatrix D = stack(args[g]);
      const CMatrix& R = values[g];
      eqs.block(r0, 0, d * d, d * d) =
          Eigen::kroneckerProduct(id, R) -
          Eigen::kroneckerProduct(D.transpose(), id);
      r0 += d * d;
      CMatrix Da = D.adjoint();
      CMatrix Ra = R.adjoint();
      eqs.block(r0, 0, d * d, d * d) =
          Eigen::kroneckerProduct(id, Ra) -
          Eigen::kroneckerProduct(Da.transpose(), id);
      r0 += d * d;
    }
    Eigen::JacobiSVD<CMatrix> svd(eqs, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > 1e-9 * std::max(1.0, smax)) ++rank;
    if (d * d - rank <= 0) continue;

    for (int attempt = 0; attempt < 4; ++attempt) {
      auto rng = rng_stream(tol.rng_seed, 0xd11a7e50u,
                            static_cast<std::uint64_t>(attempt));
      std::normal_distribution<double> dist(0.0, 1.0);
      CVector combo = CVector::Zero(d * d);
      for (Eigen::Index k = rank; k < d * d; ++k)
        combo += Complex(dist(rng), dist(rng)) * svd.matrixV().col(k);
      CMatrix W = Eigen::Map<CMatrix>(combo.data(), d, d);
      Eigen::JacobiSVD<CMatrix> wsvd(W,
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (wsvd.singularValues()(d - 1) < 1e-10) continue;
      CMatrix U = wsvd.matrixU() * wsvd.matrixV().adjoint();
      double res = 0.0;
      for (std::size_t g = 0; g < args.size(); ++g)
        res = std::max(res, frob_norm(CMatrix(U * stack(args[g]) * U.adjoint() -
                                              values[g])));
      if (res <= 1e-7 * std::max(1.0, scale)) {
        StarHomData hom;
        hom.source = B;
        BlockShape tgt;
        tgt.sizes = {d};
        hom.target = tgt;
        hom.multiplicity.push_back(row);
        hom.conjugators.push_back(U);
        hom.validate(tol);
        return hom;
      }
    }
  }
  return std::nullopt;
}

// Choi coordinates of a unital *-homomorphism given by StarHomData.
inline Eigen::VectorXd hom_choi_vector(const UcpRegion& region,
                                       const StarHomData& hom) {
  const BlockShape& B = region.domain;
  const Eigen::Index d = region.d;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(region.total);
  for (std::size_t b = 0; b < B.block_count(); ++b) {
    const Eigen::Index nb = B.sizes[b];
    const Eigen::Index n = region.choi_dim[b];
    CMatrix C = CMatrix::Zero(n, n);
    for (Eigen::Index u = 0; u < nb; ++u)
      for (Eigen::Index v = 0; v < nb; ++v) {
        CMatrix img = apply_hom(hom, BlockElement::unit(B, b, u, v)).blocks[0];
        C.block(u * d, v * d, d, d) = img;
      }
    x.segment(region.offset[b], n * n) = hvec(C);
  }
  return x;
}

// Stinespring data of the UCP point x: Kraus decomposition per block,
// direct-sum *-representation, and the canonical isometry.
inline std::optional<DilationCertificate> stinespring_certificate(
    const UcpRegion& region, const Eigen::VectorXd& x,
    const std::vector<BlockElement>& basis_args,
    const std::vector<CMatrix>& rep_values, const ToleranceConfig& tol) {
  const BlockShape& B = region.domain;
  const Eigen::Index d = region.d;
  auto cs = region.choi(x);
  std::vector<std::vector<CMatrix>> kraus(B.block_count());
  Eigen::Index dil = 0;
  for (std::size_t b = 0; b < B.block_count(); ++b) {
    const Eigen::Index nb = B.sizes[b];
    Eigen::SelfAdjointEigenSolver<CMatrix> es(cs[b]);
    double lmax = std::max(0.0, es.eigenvalues().maxCoeff());
    for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
      double lam = es.eigenvalues()(i);
      if (lam <= std::max(10.0 * tol.eps_psd, 1e-9 * lmax)) break;
      CVector w = es.eigenvectors().col(i);
      CMatrix K = CMatrix::Zero(d, nb);
      for (Eigen::Index u = 0; u < nb; ++u)
        for (Eigen::Index k = 0; k < d; ++k)
          K(k, u) = std::sqrt(lam) * w(u * d + k);
      kraus[b].push_back(K);
      dil += nb;
    }
  }
  if (dil == 0) return std::nullopt;

  CMatrix V = CMatrix::Zero(dil, d);
  Eigen::Index off = 0;
  for (std::size_t b = 0; b < B.block_count(); ++b)
    for (const auto& K : kraus[b]) {
      V.block(off, 0, B.sizes[b], d) = K.adjoint();
      off += B.sizes[b];
    }
  if (frob_norm(CMatrix(V.adjoint() * V - CMatrix::Identity(d, d))) > 1e-6)
    return std::nullopt;
  // Polar-correct the frame into an exact isometry. Unlike a QR pass
  // this stays maximally close to the Kraus stack, so the compression
  // identity below is preserved to first order.
  Eigen::SelfAdjointEigenSolver<CMatrix> hs(CMatrix(V.adjoint() * V));
  if (hs.eigenvalues()(0) < 0.5) return std::nullopt;
  CMatrix hinvroot = hs.eigenvectors() *
                     hs.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                     hs.eigenvectors().adjoint();
  V = V * hinvroot;

  auto pi = [&](const BlockElement& y) {
    CMatrix out = CMatrix::Zero(dil, dil);
    Eigen::Index o = 0;
    for (std::size_t b = 0; b < B.block_count(); ++b)
      for (std::size_t r = 0; r < kraus[b].size(); ++r) {
        out.block(o, o, B.sizes[b], B.sizes[b]) = y.blocks[b];
        o += B.sizes[b];
      }
    return out;
  };

  DilationCertificate cert;
  cert.dilation_dim = dil;
  cert.embedding = V;
  double scale = 1.0;
  for (const auto& v : rep_values) scale = std::max(scale, frob_norm(v));
  CMatrix P = V * V.adjoint();
  for (std::size_t k = 0; k < basis_args.size(); ++k) {
    CMatrix big = pi(basis_args[k]);
    cert.dilation_images.push_back(big);
    cert.compression_residual =
        std::max(cert.compression_residual,
                 op_norm(CMatrix(V.adjoint() * big * V - rep_values[k])));
    cert.reduction_defect =
        std::max(cert.reduction_defect, op_norm(CMatrix(big * P - P * big)));
  }
  if (cert.compression_residual > 1e-6 * std::max(1.0, scale))
    return std::nullopt;
  return cert;
}

}  // namespace detail

inline MaximalityVerdict is_maximal(
    const OperatorAlgebra& A, const Representation& rep,
    const ToleranceConfig& tol = default_tolerances()) {
  validate_representation(A, rep, tol);
  Cover canon = generated_cover(A, tol);
  const BlockShape& B = canon.target;
  const Eigen::Index d = rep.dim;

  std::vector<BlockElement> args = canon.basis_images;
  std::vector<CMatrix> values = rep.basis_images;
  args.push_back(BlockElement::identity(B));
  values.push_back(CMatrix::Identity(d, d));

  UcpRegion region = ucp_region(B, args, values, d, tol);
  double scale = 1.0;
  for (const auto& v : rep.basis_images)
    scale = std::max(scale, frob_norm(v));
  const double mult_tol = 1e-7 * std::max(1.0, scale * scale);

  MaximalityVerdict out;
  auto attach_certificate = [&](const Eigen::VectorXd& x) {
    out.certificate = detail::stinespring_certificate(
        region, x, canon.basis_images, rep.basis_images, tol);
    if (!out.certificate) {
      out.status = Maximality::unknown;
      out.evidence += "; dilation certificate extraction failed";
    }
  };

  const Eigen::Index K = region.kernel.cols();
  if (K == 0) {
    const Eigen::VectorXd& x = region.x0;
    if (region.psd_defect(x) > 10.0 * tol.eps_psd) {
      out.status = Maximality::unknown;
      out.evidence = "unique affine candidate is not positive";
      return out;
    }
    if (detail::unit_mult_defect(region, x) <= mult_tol) {
      out.status = Maximality::maximal;
      out.evidence =
          "the only unital completely positive extension is multiplicative";
    } else {
      out.status = Maximality::not_maximal;
      out.evidence =
          "the unique unital completely positive extension is not "
          "multiplicative";
      attach_certificate(x);
    }
    return out;
  }

  auto hom = detail::find_rep_hom(B, args, values, d, tol);
  if (hom) {
    Eigen::VectorXd xh = detail::hom_choi_vector(region, *hom);
    if (region.affine_defect(xh) > 1e-6 * (1.0 + xh.norm()))
      throw NumericalFailure("is_maximal: homomorphic point violates the "
                             "extension constraints");
    std::optional<Eigen::VectorXd> distinct;
    for (int f = 0; f < 2 * tol.optimizer_restarts && !distinct; ++f) {
      auto rng = rng_stream(tol.rng_seed, 0x0b7ec7f3u,
                            static_cast<std::uint64_t>(f));
      std::normal_distribution<double> dist(0.0, 1.0);
      Eigen::VectorXd dir(K);
      for (Eigen::Index i = 0; i < K; ++i) dir(i) = dist(rng);
      Eigen::VectorXd g = region.kernel * dir;
      g.normalize();

      Eigen::VectorXd x = xh;
      double base_val = g.dot(xh);
      double best = base_val;
      double eta = 0.5;
      for (int it = 0; it < 60 && eta > 1e-5; ++it) {
        auto cand = region.feasible_point(x + eta * g, tol.eps_psd, 400);
        if (cand && g.dot(*cand) > best + 1e-12) {
          x = *cand;
          best = g.dot(x);
        } else {
          eta *= 0.5;
        }
      }
      if (best > base_val + 1e-6 * (1.0 + std::abs(base_val))) distinct = x;
    }
    if (distinct) {
      out.status = Maximality::not_maximal;
      out.evidence =
          "found a second unital completely positive extension away from the "
          "homomorphic one";
      attach_certificate(*distinct);
    } else {
      out.status = Maximality::maximal;
      out.evidence =
          "all sampled functionals are maximized at the homomorphic extension";
    }
    return out;
  }

  // No *-homomorphism of the right dimension extends the map, so any
  // unital completely positive extension witnesses a proper dilation.
  auto feas = region.feasible_point(region.x0, tol.eps_psd);
  if (!feas) {
    out.status = Maximality::unknown;
    out.evidence = "no feasible unital completely positive extension found";
    return out;
  }
  if (detail::unit_mult_defect(region, *feas) <= mult_tol) {
    out.status = Maximality::unknown;
    out.evidence =
        "extension search found a multiplicative point the homomorphism "
        "search missed";
    return out;
  }
  out.status = Maximality::not_maximal;
  out.evidence =
      "no homomorphic extension exists; exhibiting a completely positive one";
  attach_certificate(*feas);
  return out;
}

// ---------------------------------------------------------------------
// Corner-scaling probe: given a representation with an upper-triangular
// 2 x 2 block structure, compare the semi-Dirichlet status of the map
// with the map whose off-diagonal corner is halved. A genuinely twisted
// corner cannot survive both checks when the scaled family stays
// semi-Dirichlet, which is the mechanism behind corner-killing results.
// ---------------------------------------------------------------------

struct ScalingProbeReport {
  bool phi_semidirichlet = false;
  bool phi_prime_semidirichlet = false;
  double corner_norm = 0.0;
};

namespace detail {

inline bool images_semidirichlet(const std::vector<CMatrix>& imgs,
                                 double thresh) {
  std::vector<CMatrix> gens;
  gens.reserve(2 * imgs.size());
  for (const auto& m : imgs) gens.push_back(m);
  for (const auto& m : imgs) gens.push_back(m.adjoint());
  auto basis = span_basis(gens);
  for (const auto& x : imgs)
    for (const auto& y : imgs)
      if (projection_residual(CMatrix(x.adjoint() * y), basis) > thresh)
        return false;
  return true;
}

}  // namespace detail

inline ScalingProbeReport semidirichlet_scaling_probe(
    const OperatorAlgebra& A, const Representation& phi, Eigen::Index top_dim,
    const ToleranceConfig& tol = default_tolerances()) {
  validate_representation(A, phi, tol);
  if (top_dim <= 0 || top_dim >= phi.dim)
    throw ShapeMismatch("scaling probe: corner split must be proper");
  const Eigen::Index d1 = top_dim, d2 = phi.dim - top_dim;

  double scale = 1.0, corner = 0.0;
  for (const auto& im : phi.basis_images) {
    scale = std::max(scale, frob_norm(im));
    if (im.block(d1, 0, d2, d1).norm() > 1e-9)
      throw InvalidHom("scaling probe: representation is not block "
                       "upper-triangular for this split");
    corner = std::max(corner, op_norm(CMatrix(im.block(0, d1, d1, d2))));
  }
  if (corner <= 1e-9)
    throw TrivialCorner("scaling probe: the off-diagonal corner vanishes");

  std::vector<CMatrix> primed;
  primed.reserve(phi.basis_images.size());
  for (const auto& im : phi.basis_images) {
    CMatrix m = im;
    m.block(0, d1, d1, d2) *= 0.5;
    primed.push_back(m);
  }
  // The halved-corner map is again a homomorphism; guard the input data.
  const std::size_t m = A.basis.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      CMatrix p = primed[a] * primed[b];
      for (std::size_t k = 0; k < m; ++k) p -= A.structure[a](b, k) * primed[k];
      if (frob_norm(p) > 1e-7 * scale * scale)
        throw InvalidHom("scaling probe: halved corner violates the algebra "
                         "relations");
    }

  ScalingProbeReport report;
  report.corner_norm = corner;
  const double thresh = 1e-8 * std::max(1.0, scale * scale);
  report.phi_semidirichlet =
      detail::images_semidirichlet(phi.basis_images, thresh);
  report.phi_prime_semidirichlet = detail::images_semidirichlet(primed, thresh);
  return report;
}

}  // namespace cstarlab
