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

#include "cstarlab/matrix.hpp"

using namespace cstarlab;

namespace {

CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("op_norm on elementary inputs") {
  CHECK(op_norm(CMatrix::Identity(3, 3)) == Catch::Approx(1.0).margin(1e-14));
  CHECK(op_norm(CMatrix::Zero(2, 2)) == 0.0);
  CHECK(op_norm(matrix_unit(2, 0, 1)) == Catch::Approx(1.0).margin(1e-14));
  // Scaling invariance at extreme magnitudes.
  CMatrix big = 1e8 * matrix_unit(2, 0, 1);
  CHECK(op_norm(big) == Catch::Approx(1e8).epsilon(1e-12));
}

TEST_CASE("op_norm rejects invalid input") {
  CMatrix bad(2, 2);
  bad << 1.0, 2.0, 3.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(op_norm(bad), InvalidMatrix);
  CHECK_THROWS_AS(op_norm(CMatrix(0, 0)), InvalidMatrix);
}

TEST_CASE("op_norm matches the Hermitian dilation spectrum") {
  // |m| equals the largest eigenvalue magnitude of [[0, m], [m*, 0]].
  auto rng = rng_stream(7, 100);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Index n = 2 + (trial % 3);
    CMatrix m = detail::random_complex_matrix(n, n, rng);
    CMatrix dil = CMatrix::Zero(2 * n, 2 * n);
    dil.block(0, n, n, n) = m;
    dil.block(n, 0, n, n) = m.adjoint();
    Eigen::VectorXd ev = herm_eigs(dil);
    double spectral = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    CHECK(op_norm(m) == Catch::Approx(spectral).margin(1e-10));
  }
}

TEST_CASE("herm_eigs ascending order and Hermiticity guard") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 5.0;
  d(1, 1) = -2.0;
  d(2, 2) = 1.0;
  Eigen::VectorXd ev = herm_eigs(d);
  REQUIRE(ev.size() == 3);
  CHECK(ev(0) == Catch::Approx(-2.0).margin(1e-14));
  CHECK(ev(1) == Catch::Approx(1.0).margin(1e-14));
  CHECK(ev(2) == Catch::Approx(5.0).margin(1e-14));

  CHECK_THROWS_AS(herm_eigs(matrix_unit(2, 0, 1)), NotHermitian);
  CHECK_THROWS_AS(herm_eigs(CMatrix::Zero(2, 3)), NotHermitian);
}

TEST_CASE("two-parameter corner matrix has spectrum {s^4, 1}") {
  // A = [[s sqrt(1-t), -s^2 sqrt(t)], [sqrt(t), s sqrt(1-t)]] at t = 1
  // has A*A = diag(1, s^4); frozen at s = 1/2.
  const double s = 0.5, t = 1.0;
  CMatrix a(2, 2);
  a << s * std::sqrt(1.0 - t), -s * s * std::sqrt(t), std::sqrt(t),
      s * std::sqrt(1.0 - t);
  Eigen::VectorXd ev = herm_eigs(CMatrix(a.adjoint() * a));
  REQUIRE(ev.size() == 2);
  CHECK(ev(0) == Catch::Approx(0.0625).margin(1e-12));
  CHECK(ev(1) == Catch::Approx(1.0).margin(1e-12));
  CHECK(op_norm(a) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("trace inner product conventions") {
  CMatrix e12 = matrix_unit(2, 0, 1);
  CMatrix e21 = matrix_unit(2, 1, 0);
  CHECK(trace_inner(e12, e12) == Complex(1.0, 0.0));
  CHECK(std::abs(trace_inner(e12, e21)) == 0.0);
  // Conjugate linearity in the second slot: <x, iy> = -i <x, y>.
  Complex v = trace_inner(e12, Complex(0.0, 1.0) * e12);
  CHECK(std::abs(v - Complex(0.0, -1.0)) < 1e-14);
  CHECK(frob_norm(e12 + e21) == Catch::Approx(std::sqrt(2.0)).margin(1e-14));
}

TEST_CASE("span_basis finds ranks and preserves order") {
  CMatrix e12 = matrix_unit(2, 0, 1);
  CMatrix e21 = matrix_unit(2, 1, 0);
  auto basis = span_basis({e12, e21, e12 + Complex(0, 1) * e21});
  REQUIRE(basis.size() == 2);
  // Order-preserving: the first basis vector is parallel to the first input.
  CHECK(std::abs(std::abs(trace_inner(basis[0], e12)) - 1.0) < 1e-12);

  auto single = span_basis({e12, 2.0 * e12, Complex(0, 3) * e12});
  CHECK(single.size() == 1);

  CHECK(projection_residual(e12 + e21, basis) < 1e-12);
  CHECK(in_span(e12 + e21, basis, 1e-10));
  CHECK(!in_span(CMatrix::Identity(2, 2), basis, 1e-10));
  CHECK_THROWS_AS(span_basis(std::vector<CMatrix>{}), EmptyInput);
}

TEST_CASE("polar factor of an invertible matrix is unitary") {
  auto rng = rng_stream(7, 101);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix m = detail::random_complex_matrix(3, 3, rng) +
                5.0 * CMatrix::Identity(3, 3);
    CMatrix u = detail::polar_unitary(m);
    CHECK(detail::is_unitary(u, 1e-10));
    // u is the closest unitary: u* m is positive semidefinite.
    CMatrix h = u.adjoint() * m;
    h = 0.5 * (h + h.adjoint().eval());
    Eigen::VectorXd ev = herm_eigs(h);
    CHECK(ev(0) > -1e-10);
  }
}

TEST_CASE("tolerance configuration validation and rng streams") {
  ToleranceConfig tol;
  CHECK_NOTHROW(tol.validate());
  tol.eps_eq = -1.0;
  CHECK_THROWS(tol.validate());

  auto r1 = rng_stream(0, 1, 2, 3);
  auto r2 = rng_stream(0, 1, 2, 3);
  auto r3 = rng_stream(0, 1, 2, 4);
  CHECK(r1() == r2());
  CHECK(r1() != r3());
}
