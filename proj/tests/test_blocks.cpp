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

#include "cstarlab/blocks.hpp"

using namespace cstarlab;

TEST_CASE("block shapes and dimensions") {
  BlockShape s({1, 2});
  CHECK(s.block_count() == 2);
  CHECK(s.total_dim() == 3);
  CHECK(s.linear_dim() == 5);
  CHECK_THROWS_AS(BlockShape(std::vector<Eigen::Index>{}), ShapeMismatch);
  CHECK_THROWS_AS(BlockShape({2, 0}), ShapeMismatch);
}

TEST_CASE("block element arithmetic and norms") {
  BlockShape s({1, 2});
  BlockElement id = BlockElement::identity(s);
  BlockElement e12 = BlockElement::unit(s, 1, 0, 1);
  CHECK(id.norm() == Catch::Approx(1.0).margin(1e-14));
  CHECK(e12.norm() == Catch::Approx(1.0).margin(1e-14));
  CHECK((e12 * e12).norm() == 0.0);
  CHECK((e12.adjoint() * e12).norm() == Catch::Approx(1.0).margin(1e-14));
  CHECK(frob_norm(id) == Catch::Approx(std::sqrt(3.0)).margin(1e-14));

  BlockElement scaled = Complex(0.0, 2.0) * e12;
  CHECK(scaled.norm() == Catch::Approx(2.0).margin(1e-14));
  CHECK(frob_norm(scaled - e12 - e12) > 1.0);  // i*2 differs from 2

  BlockShape other({3});
  CHECK_THROWS_AS(id + BlockElement::identity(other), ShapeMismatch);
}

TEST_CASE("embed and extract round-trip") {
  BlockShape s({1, 2});
  BlockElement x = BlockElement::unit(s, 1, 0, 1) +
                   Complex(2.0, 0.0) * BlockElement::unit(s, 0, 0, 0);
  CMatrix m = x.embed();
  REQUIRE(m.rows() == 3);
  CHECK(m(0, 0) == Complex(2.0, 0.0));
  CHECK(m(1, 2) == Complex(1.0, 0.0));
  BlockElement back = BlockElement::extract(s, m);
  CHECK(frob_norm(back - x) < 1e-14);

  CMatrix off = m;
  off(0, 2) = 0.5;  // mass outside the block diagonal
  CHECK_THROWS_AS(BlockElement::extract(s, off), ShapeMismatch);
}

TEST_CASE("ideals and quotients") {
  BlockShape s({1, 2, 3});
  Ideal ideal(s, {0, 2});
  CHECK(ideal.deleted_dim() == 4);
  CHECK(!ideal.empty());
  CHECK(!ideal.full());
  CHECK(Ideal(s, {0}).subset_of(ideal));
  CHECK(!ideal.subset_of(Ideal(s, {0})));
  CHECK_THROWS_AS(Ideal(s, {3}), ShapeMismatch);

  auto qs = quotient_shape(ideal);
  REQUIRE(qs.shape.sizes == std::vector<Eigen::Index>{2});
  REQUIRE(qs.original_index == std::vector<std::size_t>{1});

  BlockElement x = BlockElement::identity(s);
  x.blocks[1](0, 1) = Complex(0.0, 3.0);
  BlockElement q = quotient(x, ideal);
  CHECK(q.shape.block_count() == 1);
  CHECK(q.blocks[0](0, 1) == Complex(0.0, 3.0));

  CHECK_THROWS_AS(quotient_shape(Ideal(s, {0, 1, 2})), EmptyQuotient);
}

TEST_CASE("ideal enumeration order is cardinality then lexicographic") {
  BlockShape s({1, 1, 2});
  auto all = enumerate_ideals(s);
  REQUIRE(all.size() == 8);
  CHECK(all[0].members.empty());
  CHECK(all[1].members == std::set<std::size_t>{0});
  CHECK(all[2].members == std::set<std::size_t>{1});
  CHECK(all[3].members == std::set<std::size_t>{2});
  CHECK(all[4].members == std::set<std::size_t>{0, 1});
  CHECK(all[5].members == std::set<std::size_t>{0, 2});
  CHECK(all[6].members == std::set<std::size_t>{1, 2});
  CHECK(all[7].members == std::set<std::size_t>{0, 1, 2});

  BlockShape wide(std::vector<Eigen::Index>(21, 1));
  CHECK_THROWS_AS(enumerate_ideals(wide), TooManyBlocks);
}

TEST_CASE("star homomorphism data validation") {
  BlockShape src({1, 2});
  BlockShape tgt({2});

  StarHomData h;
  h.source = src;
  h.target = tgt;
  h.multiplicity = {{0, 1}};
  h.conjugators = {CMatrix::Identity(2, 2)};
  CHECK_NOTHROW(h.validate());

  // Unitality: the stacked copies must exactly fill each target block.
  StarHomData bad = h;
  bad.multiplicity = {{1, 1}};
  CHECK_THROWS_AS(bad.validate(), InvalidHom);

  StarHomData neg = h;
  neg.multiplicity = {{0, -1}};
  CHECK_THROWS_AS(neg.validate(), InvalidHom);

  StarHomData skew = h;
  skew.conjugators = {2.0 * CMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(skew.validate(), InvalidHom);
}

TEST_CASE("apply_hom stacks source blocks and conjugates") {
  // C + M2 -> M2, second coordinate projection.
  BlockShape src({1, 2});
  BlockShape tgt({2});
  StarHomData h;
  h.source = src;
  h.target = tgt;
  h.multiplicity = {{0, 1}};
  h.conjugators = {CMatrix::Identity(2, 2)};
  h.validate();

  BlockElement x = BlockElement::zero(src);
  x.blocks[0](0, 0) = 7.0;
  x.blocks[1] << 1.0, 2.0, 3.0, 4.0;
  BlockElement y = apply_hom(h, x);
  REQUIRE(y.shape == tgt);
  CHECK(frob_norm(y - BlockElement(tgt, {x.blocks[1]})) < 1e-14);

  // C + M2 -> C + C + M2 with the scalar doubled, plus a conjugation.
  BlockShape tgt2({1, 1, 2});
  CMatrix u(2, 2);
  u << 0.0, 1.0, 1.0, 0.0;  // swap basis vectors
  StarHomData g;
  g.source = src;
  g.target = tgt2;
  g.multiplicity = {{1, 0}, {1, 0}, {0, 1}};
  g.conjugators = {CMatrix::Identity(1, 1), CMatrix::Identity(1, 1), u};
  g.validate();
  BlockElement z = apply_hom(g, x);
  CHECK(z.blocks[0](0, 0) == Complex(7.0, 0.0));
  CHECK(z.blocks[1](0, 0) == Complex(7.0, 0.0));
  CHECK(z.blocks[2](0, 0) == Complex(4.0, 0.0));  // swapped corner
  CHECK(z.blocks[2](1, 1) == Complex(1.0, 0.0));

  CHECK_THROWS_AS(apply_hom(h, BlockElement::identity(tgt)), ShapeMismatch);
}

TEST_CASE("span utilities on block elements") {
  BlockShape s({1, 2});
  BlockElement a = BlockElement::unit(s, 0, 0, 0) + BlockElement::unit(s, 1, 0, 0);
  BlockElement b = BlockElement::unit(s, 1, 0, 1);
  auto basis = span_basis(std::vector<BlockElement>{a, b, a + b});
  CHECK(basis.size() == 2);
  CHECK(in_span(a + Complex(0, 5) * b, basis, 1e-9));
  CHECK(!in_span(BlockElement::unit(s, 1, 1, 0), basis, 1e-9));
}
