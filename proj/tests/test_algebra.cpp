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

#include <catch2/catch_amalgamated.hpp>

#include "cstarlab/algebra.hpp"

using namespace cstarlab;

namespace {

// Upper-triangular 2x2 matrices inside M2.
OperatorAlgebra upper_t2() {
  BlockShape s({2});
  return generate_algebra(
      s, {BlockElement::unit(s, 0, 0, 0), BlockElement::unit(s, 0, 0, 1)});
}

// Compression of upper_t2 to (scalar at the 11 corner) + (identity copy),
// realized inside C + M2.
OperatorAlgebra compressed_t2() {
  BlockShape s({1, 2});
  BlockElement a1 = BlockElement::unit(s, 0, 0, 0) + BlockElement::unit(s, 1, 0, 0);
  BlockElement a2 = BlockElement::unit(s, 1, 0, 1);
  BlockElement a3 = BlockElement::unit(s, 1, 1, 1);
  return generate_algebra(s, {a1, a2, a3});
}

}  // namespace

TEST_CASE("generate_algebra closes the span and adjoins the unit") {
  OperatorAlgebra A = upper_t2();
  CHECK(A.dim() == 3);
  CHECK(A.contains(A.unit()));
  CHECK(A.contains(BlockElement::unit(A.ambient, 0, 1, 1)));
  CHECK(!A.contains(BlockElement::unit(A.ambient, 0, 1, 0)));

  // Round-trip through coefficients.
  BlockElement x = Complex(2.0, 1.0) * A.generators[0] +
                   Complex(0.0, -3.0) * A.generators[1] + A.unit();
  CVector c = A.coefficients(x);
  CHECK(frob_norm(A.element(c) - x) < 1e-10);
  CHECK_THROWS_AS(A.coefficients(BlockElement::unit(A.ambient, 0, 1, 0)),
                  ShapeMismatch);

  CHECK_THROWS_AS(generate_algebra(A.ambient, {}), EmptyInput);
}

TEST_CASE("basis expressions evaluate back to the basis") {
  OperatorAlgebra A = compressed_t2();
  REQUIRE(A.dim() == 3);
  std::vector<BlockElement> imgs = A.generators;
  BlockElement unit = A.unit();
  BlockElement zero = BlockElement::zero(A.ambient);
  for (std::size_t k = 0; k < A.dim(); ++k) {
    BlockElement val = eval_word_sum(A.basis_expr[k], imgs, unit, zero);
    CHECK(frob_norm(val - A.basis[k]) < 1e-9);
  }
}

TEST_CASE("structure constants reproduce products") {
  OperatorAlgebra A = compressed_t2();
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (std::size_t b = 0; b < A.dim(); ++b) {
      BlockElement p = A.basis[a] * A.basis[b];
      BlockElement q = BlockElement::zero(A.ambient);
      for (std::size_t k = 0; k < A.dim(); ++k)
        q = q + A.structure[a](b, k) * A.basis[k];
      CHECK(frob_norm(p - q) < 1e-10);
    }
}

TEST_CASE("level_norm assembles matrix amplifications") {
  OperatorAlgebra A = upper_t2();
  CVector ce12 = A.coefficients(A.generators[1]);
  CVector zero = CVector::Zero(A.dim());

  CHECK(level_norm(A, {{ce12}}) == Catch::Approx(1.0).margin(1e-12));
  // [[x, 0], [0, x]] has the same norm as x.
  CHECK(level_norm(A, {{ce12, zero}, {zero, ce12}}) ==
        Catch::Approx(1.0).margin(1e-12));
  // [[0, x], [0, 0]] likewise.
  CHECK(level_norm(A, {{zero, ce12}, {zero, zero}}) ==
        Catch::Approx(1.0).margin(1e-12));
  // Row vector [x, x] picks up sqrt(2).
  CHECK(level_norm(A, {{ce12, ce12}, {zero, zero}}) ==
        Catch::Approx(std::sqrt(2.0)).margin(1e-12));

  CHECK_THROWS_AS(level_norm(A, {}), EmptyInput);
  CHECK_THROWS_AS(level_norm(A, {{ce12, zero}}), ShapeMismatch);
}

TEST_CASE("boundary ideal verdicts on the compressed triangular algebra") {
  OperatorAlgebra A = compressed_t2();
  Ideal scalar_block(A.ambient, {0});
  Ideal matrix_block(A.ambient, {1});

  // Deleting the scalar block leaves the identity copy: completely
  // isometric, hence a boundary ideal.
  BoundaryVerdict keep = is_boundary_ideal(A, scalar_block);
  CHECK(keep.is_boundary);
  CHECK(!keep.witness.has_value());

  // Deleting the matrix copy collapses to the scalar corner and crushes
  // the nilpotent generator: not a boundary ideal, with a witness.
  BoundaryVerdict crush = is_boundary_ideal(A, matrix_block);
  REQUIRE(!crush.is_boundary);
  REQUIRE(crush.witness.has_value());
  CHECK(crush.margin > 1e-3);
  const BoundaryWitness& w = *crush.witness;
  REQUIRE(w.level == 1);

  // Re-verify the witness from scratch: deleted-side norm minus
  // kept-side norm at level 1.
  BlockElement elem = A.element(w.coeffs[0][0]);
  double del = op_norm(elem.blocks[1]);
  double kept = op_norm(elem.blocks[0]);
  CHECK(del - kept == Catch::Approx(w.margin).margin(1e-9));

  // Edge cases: empty set is trivially a boundary ideal, the full set
  // kills the unit.
  CHECK(is_boundary_ideal(A, Ideal(A.ambient, {})).is_boundary);
  BoundaryVerdict full = is_boundary_ideal(A, Ideal(A.ambient, {0, 1}));
  CHECK(!full.is_boundary);
  REQUIRE(full.witness.has_value());
  CHECK(full.margin > 0.5);
}

TEST_CASE("shilov_ideal finds the largest boundary ideal") {
  OperatorAlgebra A = compressed_t2();
  Ideal s = shilov_ideal(A);
  CHECK(s.members == std::set<std::size_t>{0});

  // One full matrix block: nothing can be deleted.
  OperatorAlgebra T = upper_t2();
  CHECK(shilov_ideal(T).empty());
}

TEST_CASE("shilov_ideal falls back when singleton verdicts do not combine") {
  // Scalars embedded diagonally in C + C: each singleton deletion is
  // isometric but deleting both kills the algebra, so the greedy union
  // fails and enumeration must pick one singleton (lowest index).
  BlockShape s({1, 1});
  BlockElement diag = BlockElement::identity(s);
  OperatorAlgebra A = generate_algebra(s, {diag});
  REQUIRE(A.dim() == 1);
  CHECK(is_boundary_ideal(A, Ideal(s, {0})).is_boundary);
  CHECK(is_boundary_ideal(A, Ideal(s, {1})).is_boundary);
  Ideal sh = shilov_ideal(A);
  CHECK(sh.members == std::set<std::size_t>{0});
}

TEST_CASE("dirichlet classification of the worked examples") {
  // Upper-triangular matrices in M2: A + A* is all of M2, which equals
  // the generated C*-algebra, so both properties hold.
  OperatorAlgebra T = upper_t2();
  CHECK(is_semi_dirichlet(T));
  CHECK(is_dirichlet(T));
  CHECK(!is_selfadjoint(T));

  // The compressed copy in C + M2: products A*A stay within A + A*
  // (dimension 4) but the generated C*-algebra is all of C + M2
  // (dimension 5), so the algebra is semi-Dirichlet yet not Dirichlet.
  OperatorAlgebra A = compressed_t2();
  CHECK(selfadjoint_span(A).size() == 4);
  CHECK(cstar_span(A).size() == 5);
  CHECK(is_semi_dirichlet(A));
  CHECK(!is_dirichlet(A));

  // A selfadjoint algebra is trivially Dirichlet.
  BlockShape m2({2});
  OperatorAlgebra F = generate_algebra(
      m2, {BlockElement::unit(m2, 0, 0, 1), BlockElement::unit(m2, 0, 1, 0)});
  CHECK(is_selfadjoint(F));
  CHECK(is_dirichlet(F));
  CHECK(is_semi_dirichlet(F));
}
