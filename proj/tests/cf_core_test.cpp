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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gen.hpp"
#include "lpdi/cf_core.hpp"

namespace lpdi {
namespace {

using testing::RandomQuadratic;
using testing::RandomWord;
using testing::Rng;

BigRational Frac(long n, long d) { return BigRational(n, d); }

// Distance to the nearest integer.
Float128 DistZ(const Float128& v) {
  const Float128 r = v - floor(v);
  return r < 0.5 ? r : 1 - r;
}

}  // namespace

TEST_SUITE("cf_core") {

TEST_CASE("convergents of short words") {
  // [0; 1, 1, 1] is stored as [0; 1, 2].
  auto c = convergents(CFExpansion::Finite(0, {1, 1, 1}), 2);
  CHECK(c[2].p == 2);
  CHECK(c[2].q == 3);

  c = convergents(CFExpansion::Periodic(0, {}, {1}), 3);
  CHECK(c[3].p == 2);
  CHECK(c[3].q == 3);

  c = convergents(CFExpansion::E(), 5);
  CHECK(c[5].p == 87);
  CHECK(c[5].q == 32);

  c = convergents(CFExpansion::Finite(0, {2}), 1);
  CHECK(c[1].p == 1);
  CHECK(c[1].q == 2);
}

TEST_CASE("e digits") {
  const Word want = {1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8};
  CHECK(CFExpansion::E().Digits(want.size()) == want);
  CHECK(CFExpansion::E().a0() == 2);
}

TEST_CASE("finite words fold a trailing one") {
  const auto x = CFExpansion::Finite(0, {2, 3, 1});
  CHECK(x.word() == Word{2, 4});
  CHECK(x.AlternateWord() == Word{2, 3, 1});
  const auto r = CFExpansion::Rational(BigInt(7), BigInt(22));
  CHECK(r.word() == Word{3, 7});
}

TEST_CASE("digit zero is rejected") {
  CHECK_THROWS_AS(CFExpansion::Finite(0, {1, 0, 2}), DomainError);
  CHECK_THROWS_AS(CFExpansion::Periodic(0, {}, {}), DomainError);
  CHECK_THROWS_AS(continuant({3, 0}), DomainError);
}

TEST_CASE("continuant values") {
  CHECK(continuant({1, 1, 1}) == 3);
  CHECK(continuant({2, 4}) == 9);
  CHECK(continuant({7}) == 7);
  CHECK(continuant({}) == 1);
  // 100 ones give F_101.
  CHECK(continuant(Word(100, 1)) ==
        BigInt("573147844013817084101"));
}

TEST_CASE("continuant symmetry on short words") {
  // The full length-12 sweep lives in the acceptance run.
  std::size_t checked = 0;
  for (std::size_t len = 0; len <= 7; ++len) {
    Word w(len, 1);
    for (;;) {
      Word r(w.rbegin(), w.rend());
      REQUIRE(continuant(w) == continuant(r));
      ++checked;
      std::size_t i = 0;
      while (i < len && w[i] == 4) w[i++] = 1;
      if (i == len) break;
      ++w[i];
    }
  }
  CHECK(checked == 21845);
}

TEST_CASE("determinant identity") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = RandomQuadratic(rng, 9);
    const auto c = convergents(x, 60);
    for (std::size_t v = 1; v < c.size(); ++v) {
      const BigInt det = c[v - 1].p * c[v].q - c[v].p * c[v - 1].q;
      REQUIRE(det == (v % 2 == 0 ? 1 : -1));
    }
  }
}

TEST_CASE("quasi-multiplicativity") {
  Rng rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const Word u = RandomWord(rng, 0, 15, 30);
    const Word v = RandomWord(rng, 0, 15, 30);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    const BigInt prod = continuant(u) * continuant(v);
    const BigInt whole = continuant(uv);
    REQUIRE(prod <= whole);
    REQUIRE(whole <= 2 * prod);
  }
}

TEST_CASE("deletion bound") {
  Rng rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const Word w = RandomWord(rng, 1, 20, 12);
    const std::size_t k =
        std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng);
    Word cut = w;
    cut.erase(cut.begin() + static_cast<std::ptrdiff_t>(k));
    const BigRational ratio(continuant(w), continuant(cut));
    const BigRational a(w[k]);
    REQUIRE(ratio >= (a + 1) / 2);
    REQUIRE(ratio <= a + 1);
  }
}

TEST_CASE("cylinder examples") {
  const Cylinder c11 = cylinder({1, 1});
  CHECK(c11.Length() == Frac(1, 6));

  const Cylinder c1 = cylinder({1});
  CHECK(c1.left == Frac(1, 2));
  CHECK(c1.right == 1);
  CHECK(c1.odd);
  CHECK_FALSE(c1.Contains(BigRational(1)));
  CHECK(cylinder({2}).Contains(Frac(1, 2)));
  CHECK(c1.Length() == Frac(1, 2));

  for (long n : {2L, 5L, 17L}) {
    CHECK(cylinder({static_cast<Digit>(n)}).Length() == Frac(1, n * (n + 1)));
  }
  CHECK_THROWS_AS(cylinder({}), DomainError);
}

TEST_CASE("cylinder nesting") {
  Rng rng(14);
  for (int trial = 0; trial < 1000; ++trial) {
    const Word w = RandomWord(rng, 1, 12, 9);
    const Digit b = testing::RandomDigit(rng, 20);
    Word wb = w;
    wb.push_back(b);
    const Cylinder outer = cylinder(w), inner = cylinder(wb);
    REQUIRE(outer.Contains(inner));
    const BigRational bound =
        outer.Length() / BigRational((b + 1) * (b + 1));
    REQUIRE(inner.Length() > bound);
  }
}

TEST_CASE("cylinders contain their rationals") {
  const Word w = {3, 1, 4, 1, 5};
  const Cylinder c = cylinder(w);
  const auto conv = convergents(CFExpansion::Finite(0, w), w.size());
  CHECK(c.Contains(BigRational(conv.back().p, conv.back().q)));
}

TEST_CASE("psi of the golden ratio") {
  const auto phi = CFExpansion::Periodic(0, {}, {1});
  CHECK(psi(phi, 1) == doctest::Approx(0.3819660112501051).epsilon(1e-12));
}

TEST_CASE("psi of a rational vanishes past the last denominator") {
  const auto x = CFExpansion::Rational(BigInt(22), BigInt(7));
  CHECK(psi(x, 7) == 0);
  CHECK(psi(x, 1000) == 0);
}

TEST_CASE("t psi below one just under the next denominator") {
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = RandomQuadratic(rng);
    const auto c = convergents(x, 12);
    for (std::size_t v = 2; v < c.size(); ++v) {
      const double t = c[v].q.convert_to<double>() - 1e-6;
      if (t < 1) continue;
      REQUIRE(t * psi(x, t) < 1);
    }
  }
}

TEST_CASE("psi against brute force") {
  Rng rng(16);
  for (int trial = 0; trial < 12; ++trial) {
    const auto x = RandomQuadratic(rng);
    const Float128 alpha = Value<Float128>(x);
    Float128 best = 1;
    std::size_t next = 1;
    for (std::size_t q = 1; q <= 10000; ++q) {
      best = std::min(best, DistZ(alpha * q));
      if (q == next || q == 10000) {
        const double got = psi(x, static_cast<double>(q));
        REQUIRE(std::fabs(got - best.convert_to<double>()) <= 1e-12);
        next = next * 3 + 1;
      }
    }
  }
}

TEST_CASE("approximation records") {
  const auto phi = CFExpansion::Periodic(0, {}, {1});
  const auto rec = approx_records<Float128>(phi, 30);
  const double g = (1 + std::sqrt(5.0)) / 2;
  CHECK(rec[29].alpha.convert_to<double>() == doctest::Approx(g));
  CHECK(rec[29].alpha_star.convert_to<double>() == doctest::Approx(g - 1));
}

TEST_CASE("denominators grow at least geometrically") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = RandomQuadratic(rng);
    const auto c = convergents(x, 80);
    for (std::size_t v = 1; v < c.size(); ++v) {
      const double lhs = std::log2(c[v].q.convert_to<double>());
      REQUIRE(lhs >= (static_cast<double>(v) - 1) / 2 - 1e-12);
    }
  }
}

TEST_CASE("dirichlet constants") {
  const auto phi = CFExpansion::Periodic(0, {}, {1});
  const double g = (1 + std::sqrt(5.0)) / 2;
  CHECK(dirichlet_constant_cf(phi, 60).tail ==
        doctest::Approx(1 / (3 - g)).epsilon(1e-9));

  const auto r2 = CFExpansion::Periodic(0, {}, {2});
  const double s = std::sqrt(2.0) - 1;
  CHECK(dirichlet_constant_cf(r2, 60).tail ==
        doctest::Approx(1 / (1 + s * s)).epsilon(1e-9));

  CHECK_THROWS_AS(dirichlet_constant_cf(phi, 7), DomainError);
}

TEST_CASE("dirichlet constants respect the lower bound") {
  Rng rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = RandomQuadratic(rng, 8);
    const auto d = dirichlet_constant_cf(x, 60);
    REQUIRE(d.tail >= 0.7236 - 1e-6);
    REQUIRE(d.running >= d.tail - 1e-12);
    REQUIRE(d.running <= 1);
  }
}

TEST_CASE("lagrange constants") {
  const auto phi = CFExpansion::Periodic(0, {}, {1});
  CHECK(lagrange_constant_cf(phi, 60).tail ==
        doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-9));
  const auto r2 = CFExpansion::Periodic(0, {}, {2});
  CHECK(lagrange_constant_cf(r2, 60).tail ==
        doctest::Approx(1 / (2 * std::sqrt(2.0))).epsilon(1e-9));
  CHECK(lagrange_constant_cf(CFExpansion::E(), 40).tail < 0.2);

  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = RandomQuadratic(rng, 8);
    REQUIRE(lagrange_constant_cf(x, 60).tail <= 1 / std::sqrt(5.0) + 1e-9);
  }
}

TEST_CASE("precision tiers agree") {
  const auto x = CFExpansion::E();
  const double a = psi(x, 1e6, Precision{128});
  const double b = psi(x, 1e6, Precision{512});
  CHECK(a == doctest::Approx(b).epsilon(1e-15));
}

}  // TEST_SUITE

}  // namespace lpdi
