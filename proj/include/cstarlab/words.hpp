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

#include <cstddef>
#include <vector>

#include "blocks.hpp"

namespace cstarlab {

// Formal *-words in a generator list. The empty word is the unit.
// Words are how representations evaluate derived elements: any map
// that is multiplicative and *-compatible on generators extends
// consistently along them.
struct WordFactor {
  std::size_t gen = 0;
  bool adjoint = false;
};

using Word = std::vector<WordFactor>;

struct WordTerm {
  Complex coeff{1.0, 0.0};
  Word word;
};

// Linear combination of words.
using WordSum = std::vector<WordTerm>;

inline Word word_concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

template <typename Element>
Element eval_word(const Word& w, const std::vector<Element>& gen_images,
                  const Element& unit) {
  Element acc = unit;
  for (const auto& f : w) {
    const Element& g = gen_images.at(f.gen);
    acc = acc * (f.adjoint ? g.adjoint() : g);
  }
  return acc;
}

template <typename Element>
Element eval_word_sum(const WordSum& ws, const std::vector<Element>& gen_images,
                      const Element& unit, const Element& zero) {
  Element acc = zero;
  for (const auto& t : ws) acc = acc + t.coeff * eval_word(t.word, gen_images, unit);
  return acc;
}

inline WordSum word_sum_scale(const WordSum& ws, Complex c) {
  WordSum out = ws;
  for (auto& t : out) t.coeff *= c;
  return out;
}

inline WordSum word_sum_add(const WordSum& a, const WordSum& b) {
  WordSum out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace cstarlab
