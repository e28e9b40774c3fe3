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

#include "cstarlab/covers.hpp"

using namespace cstarlab;

namespace {

OperatorAlgebra upper_t2() {
  BlockShape s({2});
  return generate_algebra(
      s, {BlockElement::unit(s, 0, 0, 0), BlockElement::unit(s, 0, 0, 1)});
}

OperatorAlgebra compressed_t2() {
  BlockShape s({1, 2});
  BlockElement a1 = BlockElement::unit(s, 0, 0, 0) + BlockElement::unit(s, 1, 0, 0);
  BlockElement a2 = BlockElement::unit(s, 1, 0, 1);
  BlockElement a3 = BlockElement::unit(s, 1, 1, 1);
  return generate_algebra(s, {a1, a2, a3});
}

// Independent construction of the truncated-shift pair: the 2n x 2n
// matrix [[S, zD], [0, S*]] with S the backward shift on C^n and
// D = I - S S* the projection onto the last coordinate.
CMatrix shift_pair(int n, Complex z) {
  CMatrix S = CMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) S(k - 1, k) = 1.0;
  CMatrix D = CMatrix::Identity(n, n) - S * S.adjoint();
  CMatrix V = CMatrix::Zero(2 * n, 2 * n);
  V.block(0, 0, n, n) = S;
  V.block(0, n, n, n) = z * D;
  V.block(n, n, n, n) = S.adjoint();
  return V;
}

OperatorAlgebra shift_pair_algebra(int n, Complex z) {
  BlockShape s({2 * n});
  return generate_algebra(s, {BlockElement(s, {shift_pair(n, z)})});
}

}  // namespace

TEST_CASE("generated cover realizes the generated C*-algebra canonically") {
  OperatorAlgebra A = compressed_t2();
  Cover amb = generated_cover(A);
  CHECK(amb.target.sizes == std::vector<Eigen::Index>{1, 2});
  // The base embeds with its norm at low levels (validated on build,
  // re-checked here on one element).
  BlockElement x = A.generators[0] + Complex(0, 2) * A.generators[1];
  CHECK(amb.map(x).norm() == Catch::Approx(x.norm()).margin(1e-9));
}

TEST_CASE("envelope of the compressed triangular algebra is M2") {
  OperatorAlgebra A = compressed_t2();
  Cover env = envelope(A);
  REQUIRE(env.target.sizes == std::vector<Eigen::Index>{2});

  // Hand-built minimal cover: the identity representation of the
  // uncompressed triangular algebra.
  BlockShape m2({2});
  Cover hand = make_cover(
      A, m2,
      {BlockElement::unit(m2, 0, 0, 0), BlockElement::unit(m2, 0, 0, 1),
       BlockElement::unit(m2, 0, 1, 1)},
      "hand");
  CompareResult r = compare(env, hand);
  CHECK(r.order == CoverOrder::equal);
  REQUIRE(r.first_to_second.has_value());
  CHECK(r.first_to_second->residual < 1e-10);
}

TEST_CASE("envelope of an algebra with trivial shilov ideal is the ambient") {
  OperatorAlgebra T = upper_t2();
  Cover env = envelope(T);
  CHECK(env.target.sizes == std::vector<Eigen::Index>{2});
  CHECK(env.label == "envelope");
}

TEST_CASE("compare orders the generated cover above the envelope") {
  OperatorAlgebra A = compressed_t2();
  Cover amb = generated_cover(A);
  Cover env = envelope(A);

  CompareResult down = compare(amb, env);
  REQUIRE(down.order == CoverOrder::first_above);
  REQUIRE(down.first_to_second.has_value());
  CHECK(down.first_to_second->residual < 1e-10);
  CHECK(!down.second_to_first.has_value());

  CompareResult up = compare(env, amb);
  CHECK(up.order == CoverOrder::second_above);

  CompareResult self = compare(env, env);
  CHECK(self.order == CoverOrder::equal);
}

TEST_CASE("morphism certificates compose with the cover maps") {
  OperatorAlgebra A = compressed_t2();
  Cover amb = generated_cover(A);
  Cover env = envelope(A);
  CompareResult r = compare(amb, env);
  REQUIRE(r.first_to_second.has_value());
  const StarHomData& h = r.first_to_second->hom;
  for (std::size_t g = 0; g < A.generators.size(); ++g) {
    BlockElement pushed = apply_hom(h, amb.gen_images[g]);
    CHECK(frob_norm(pushed - env.gen_images[g]) < 1e-9);
  }
}

TEST_CASE("join of comparable covers is the larger one") {
  OperatorAlgebra A = compressed_t2();
  Cover amb = generated_cover(A);
  Cover env = envelope(A);
  Cover j = join(amb, env);
  CHECK(compare(j, amb).order == CoverOrder::equal);
  CHECK(compare(j, env).order == CoverOrder::first_above);

  Cover jj = join(env, env);
  CHECK(compare(jj, env).order == CoverOrder::equal);
}

TEST_CASE("shift pair covers: fingerprints and pairwise incomparability") {
  const int n = 3;
  OperatorAlgebra A3 = shift_pair_algebra(n, 0.3);
  OperatorAlgebra A9 = shift_pair_algebra(n, 0.9);
  CHECK(A3.dim() == 2 * n);

  Cover c3 = generated_cover(A3);
  Cover c9 = generated_cover(A9);
  // The generated C*-algebra is all of M_{2n}.
  CHECK(c3.target.sizes == std::vector<Eigen::Index>{2 * n});
  CHECK(c9.target.sizes == std::vector<Eigen::Index>{2 * n});

  auto fp3 = cover_fingerprint(c3);
  REQUIRE(fp3.size() == 1);
  REQUIRE(fp3[0].size() == 3);
  CHECK(fp3[0][0] == Catch::Approx(0.0).margin(1e-9));
  CHECK(fp3[0][1] == Catch::Approx(0.09).margin(1e-9));
  CHECK(fp3[0][2] == Catch::Approx(1.0).margin(1e-9));

  CompareResult r = compare(c3, c9);
  CHECK(r.order == CoverOrder::incomparable);
  CHECK(!r.first_to_second.has_value());
  CHECK(!r.second_to_first.has_value());

  Cover c3b = generated_cover(shift_pair_algebra(n, 0.3));
  CHECK(compare(c3, c3b).order == CoverOrder::equal);
}

TEST_CASE("make_cover rejects defective maps") {
  OperatorAlgebra T = upper_t2();
  BlockShape m2({2});

  // Violates the multiplication relations.
  CHECK_THROWS_AS(make_cover(T, m2,
                             {BlockElement::unit(m2, 0, 0, 0),
                              BlockElement::unit(m2, 0, 1, 0)},
                             "bad-hom"),
                  InvalidHom);

  // A similarity that is a homomorphism but not isometric.
  CHECK_THROWS_AS(make_cover(T, m2,
                             {BlockElement::unit(m2, 0, 0, 0),
                              Complex(0.5, 0.0) * BlockElement::unit(m2, 0, 0, 1)},
                             "squeeze"),
                  NotIsometry);

  // Isometric but the image fails to generate the stated target.
  BlockShape m3({3});
  CHECK_THROWS_AS(make_cover(T, m3,
                             {BlockElement::unit(m3, 0, 0, 0),
                              BlockElement::unit(m3, 0, 0, 1)},
                             "small-image"),
                  InvalidHom);

  CHECK_THROWS_AS(make_cover(T, m2, {BlockElement::unit(m2, 0, 0, 0)}, "short"),
                  InvalidHom);
}

TEST_CASE("compare requires a shared base signature") {
  Cover a = generated_cover(upper_t2());
  Cover b = generated_cover(compressed_t2());
  CHECK_THROWS_AS(compare(a, b), BaseMismatch);
  CHECK_THROWS_AS(join(a, b), BaseMismatch);
}

TEST_CASE("join requires identical base generators") {
  const int n = 3;
  Cover c3 = generated_cover(shift_pair_algebra(n, 0.3));
  Cover c9 = generated_cover(shift_pair_algebra(n, 0.9));
  // Same signature, different base matrices: comparable in signature
  // but not joinable.
  CHECK_THROWS_AS(join(c3, c9), BaseMismatch);
}
