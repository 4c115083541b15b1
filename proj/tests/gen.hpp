// Copyright 2026 The lpdi Authors
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

// Seeded generators for the property tests. Each test owns its engine so
// failures reproduce from the seed alone.

#ifndef LPDI_TESTS_GEN_HPP_
#define LPDI_TESTS_GEN_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "lpdi/cf_core.hpp"

namespace lpdi::testing {

using Rng = std::mt19937_64;

inline Digit RandomDigit(Rng& rng, Digit hi) {
  return std::uniform_int_distribution<Digit>(1, hi)(rng);
}

inline Word RandomWord(Rng& rng, std::size_t min_len, std::size_t max_len,
                       Digit hi) {
  const std::size_t n =
      std::uniform_int_distribution<std::size_t>(min_len, max_len)(rng);
  Word w(n);
  for (auto& d : w) d = RandomDigit(rng, hi);
  return w;
}

// Eventually periodic expansion in (0, 1) with small digits.
inline CFExpansion RandomQuadratic(Rng& rng, Digit hi = 5) {
  return CFExpansion::Periodic(0, RandomWord(rng, 0, 3, hi),
                               RandomWord(rng, 1, 4, hi));
}

inline double RandomUniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace lpdi::testing

#endif  // LPDI_TESTS_GEN_HPP_
