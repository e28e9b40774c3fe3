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

#include <cstdint>
#include <random>

#include "errors.hpp"

namespace cstarlab {

// Numerical policy shared by every operation. The three epsilons have
// distinct roles: eps_eq is an entrywise equality threshold, eps_norm a
// norm-level decision threshold, eps_psd the eigenvalue floor for
// positive-semidefinite checks. Invariant: 0 < eps_eq <= eps_norm < 1.
struct ToleranceConfig {
  double eps_eq = 1e-10;
  double eps_norm = 1e-7;
  double eps_psd = 1e-9;
  int optimizer_restarts = 64;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (!(eps_eq > 0.0) || !(eps_eq <= eps_norm) || !(eps_norm < 1.0))
      throw Error("ToleranceConfig: need 0 < eps_eq <= eps_norm < 1");
    if (!(eps_psd > 0.0) || !(eps_psd < 1.0))
      throw Error("ToleranceConfig: need 0 < eps_psd < 1");
    if (optimizer_restarts < 1)
      throw Error("ToleranceConfig: optimizer_restarts must be >= 1");
  }
};

inline const ToleranceConfig& default_tolerances() {
  static const ToleranceConfig cfg{};
  return cfg;
}

namespace detail {

// splitmix64, used to derive independent deterministic streams from a
// (seed, salt) pair so results do not depend on call interleaving.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Deterministic RNG stream identified by a seed and a salt chain.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t salt_a,
                                  std::uint64_t salt_b = 0,
                                  std::uint64_t salt_c = 0) {
  std::uint64_t s = detail::mix64(seed ^ detail::mix64(salt_a));
  s = detail::mix64(s ^ detail::mix64(salt_b));
  s = detail::mix64(s ^ detail::mix64(salt_c));
  return std::mt19937_64(s);
}

}  // namespace cstarlab
