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
#include "lpdi/constructors.hpp"

namespace lpdi {
namespace {

using testing::RandomDigit;
using testing::RandomWord;
using testing::Rng;

std::size_t Pow2(std::size_t k) { return std::size_t{1} << k; }

InsertionSchedule RandomSchedule(Rng& rng, std::size_t horizon) {
  std::vector<std::size_t> offsets;
  std::vector<Word> words;
  std::size_t at = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
  while (at <= horizon) {
    Word w = RandomWord(rng, 1, 6, 50);
    offsets.push_back(at);
    at += w.size() + std::uniform_int_distribution<std::size_t>(0, 40)(rng);
    words.push_back(std::move(w));
  }
  return InsertionSchedule::Explicit(offsets, words);
}

void CheckBookkeeping(const WitnessStream& w, std::size_t n) {
  const Word emitted = w.Prefix(n);
  for (const Insertion& ins : w.schedule().Upto(n)) {
    for (std::size_t j = 0; j < ins.word.size(); ++j) {
      if (ins.offset + j > n) break;
      REQUIRE(emitted[ins.offset + j - 1] == ins.word[j]);
      REQUIRE(w.IsInserted(ins.offset + j));
    }
  }
}

}  // namespace

TEST_SUITE("constructors") {

TEST_CASE("insertion example") {
  const auto s = InsertionSchedule::Explicit({2, 4, 8, 16}, {{1}, {2}, {3}, {4}});
  const WitnessStream w = insert_map(OnesBase(), s);
  const Word want = {1, 1, 1, 2, 1, 1, 1, 3, 1, 1, 1, 1, 1, 1, 1, 4};
  CHECK(w.Prefix(16) == want);
  CHECK(omega(w, 1) == 0);
  CHECK(omega(w, 16) == 4);
  CHECK(remove_inserted(w.Prefix(16), s) == Word(12, 1));
}

TEST_CASE("removal inverts insertion on random schedules") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto base = CFExpansion::Periodic(0, RandomWord(rng, 0, 4, 9),
                                            RandomWord(rng, 1, 5, 9));
    const InsertionSchedule s = RandomSchedule(rng, 1000);
    const WitnessStream w = insert_map(base, s);
    const std::size_t n = 1000;
    const Word back = remove_inserted(w.Prefix(n), s);
    REQUIRE(back.size() == n - omega(w, n));
    REQUIRE(back == base.Digits(back.size()));
    CheckBookkeeping(w, n);
  }
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(InsertionSchedule::Explicit({4, 4}, {{1}, {2}}).Upto(10),
                  PreconditionError);
  CHECK_THROWS_AS(InsertionSchedule::Explicit({4, 5}, {{1, 2}, {2}}).Upto(10),
                  PreconditionError);
  CHECK_THROWS_AS(InsertionSchedule::Explicit({4}, {{0}}).Upto(10),
                  PreconditionError);
  CHECK_THROWS_AS(InsertionSchedule::Explicit({4}, {{}}).Upto(10),
                  PreconditionError);
  CHECK_THROWS_AS(InsertionSchedule::Explicit({0}, {{1}}).Upto(10),
                  PreconditionError);
  // With the length constraint a base digit must separate the words.
  CHECK_THROWS_AS(
      InsertionSchedule::Explicit({4, 6}, {{1, 2}, {2}}, true).Upto(10),
      PreconditionError);
  CHECK_NOTHROW(InsertionSchedule::Explicit({4, 7}, {{1, 2}, {2}}, true).Upto(10));
  CHECK_NOTHROW(InsertionSchedule::Explicit({4, 6}, {{1, 2}, {2}}).Upto(10));
}

TEST_CASE("single digit preset") {
  const WitnessStream w = witness_di_minus_ba(2.3, OnesBase());
  const Word pre = w.Prefix(Pow2(12));
  for (std::size_t i = 1; i <= 12; ++i) {
    CHECK(pre[Pow2(i) - 1] == i);
    CHECK(omega(w, Pow2(i)) == i);
  }
  for (std::size_t k = 2; k <= 12; ++k) {
    const Word head(pre.begin(), pre.begin() + Pow2(k));
    CHECK(*std::max_element(head.begin(), head.end()) >= k - 1);
  }
  const SignatureCheck sig = witness_signature(w, 4096);
  CHECK(sig.complementary_absent);
  CHECK(sig.Matches());
}

TEST_CASE("three digit preset for a rational sigma") {
  const Regime r = regime_from_sigma_word({2, 3});
  const WitnessStream w = witness_di_minus_ba(r, OnesBase());
  const std::size_t c = w.info().offset;
  CHECK(c >= 1);
  CHECK(w.info().nominal_offset == 100);
  const Word pre = w.Prefix(Pow2(14));
  for (std::size_t i = 1; i + c <= 13; ++i) {
    const std::size_t n = Pow2(i + c);
    CHECK(pre[n - 1] == 2);
    CHECK(pre[n] == i);
    CHECK(pre[n + 1] == 4);
  }
  for (std::size_t k = c + 1; k <= 13; ++k) {
    CHECK(omega(w, Pow2(k) + 2) == 3 * (k - c));
  }
  CheckBookkeeping(w, Pow2(14));
}

TEST_CASE("long block presets") {
  const WitnessStream a = witness_di1_minus_di2(OnesBase());
  const WitnessStream b = witness_di2_minus_di1(OnesBase());
  for (const auto* w : {&a, &b}) {
    CheckBookkeeping(*w, 4096);
    for (const Insertion& ins : w->schedule().Upto(4096)) {
      CHECK(ins.word.front() == ins.offset);
      CHECK(ins.word.back() == ins.offset + 1);
    }
    const Word core = w == &a ? Word{3, 2, 1, 3, 4} : Word{1, 1, 1, 2};
    for (const Insertion& ins : w->schedule().Upto(4096)) {
      CHECK(Word(ins.word.begin() + 1, ins.word.end() - 1) == core);
    }
  }
}

TEST_CASE("signatures of the presets") {
  for (const auto& w : {witness_di_minus_ba(2.3, OnesBase()),
                        witness_di1_minus_di2(OnesBase()),
                        witness_di2_minus_di1(OnesBase())}) {
    const SignatureCheck sig = witness_signature(w, 4096);
    CHECK(sig.intended_growing);
    CHECK(sig.complementary_absent);
  }
}

TEST_CASE("inserted fraction vanishes") {
  const Regime r = regime_from_sigma_word({2, 3});
  for (const auto& w : {witness_di_minus_ba(2.3, OnesBase()),
                        witness_di_minus_ba(r, OnesBase()),
                        witness_di1_minus_di2(OnesBase()),
                        witness_di2_minus_di1(OnesBase())}) {
    double prev = 2;
    for (std::size_t k : {10u, 14u, 18u}) {
      const double ratio =
          static_cast<double>(omega(w, Pow2(k))) / static_cast<double>(Pow2(k));
      CHECK(ratio < prev);
      prev = ratio;
    }
  }
}

TEST_CASE("witness verdicts follow the labels") {
  const auto ba = witness_di_minus_ba(2.3, OnesBase());
  CHECK(classify(ba.Expansion(), 2.3, 4096).status ==
        VerdictStatus::kDecidedImprovable);
  CHECK(classify(ba.Expansion(), kInf, 4096).status ==
        VerdictStatus::kDecidedNonImprovable);

  const auto w12 = witness_di1_minus_di2(OnesBase()).Expansion();
  CHECK(classify(w12, 1, 4096).status == VerdictStatus::kDecidedImprovable);
  CHECK(classify(w12, 2, 4096).status == VerdictStatus::kDecidedNonImprovable);

  const auto w21 = witness_di2_minus_di1(OnesBase()).Expansion();
  CHECK(classify(w21, 2, 4096).status == VerdictStatus::kDecidedImprovable);
  CHECK(classify(w21, 1, 4096).status == VerdictStatus::kDecidedNonImprovable);
}

TEST_CASE("constructor gate") {
  CHECK_THROWS_AS(witness_di_minus_ba(2.3, CFExpansion::E()), PreconditionError);
  CHECK_THROWS_AS(
      witness_di_minus_ba(2.3, CFExpansion::Rational(BigInt(1), BigInt(3))),
      PreconditionError);
  CHECK_THROWS_AS(witness_di_minus_ba(kInf, OnesBase()), PreconditionError);
  // Non-improvable at 2 because of the flanked 2 blocks.
  const auto x = CFExpansion::Periodic(0, {}, {2, 1});
  CHECK_THROWS_AS(witness_di2_minus_di1(x), PreconditionError);
  // Unbounded generated base.
  const auto grow = CFExpansion::Generated(
      0, [](std::size_t i) { return static_cast<Digit>(i); }, "grow");
  CHECK_THROWS_AS(witness_di1_minus_di2(grow), PreconditionError);
}

TEST_CASE("other bases") {
  const auto base = CFExpansion::Periodic(0, {}, {2});
  const auto w = witness_di_minus_ba(2.3, base);
  CHECK(remove_inserted(w.Prefix(2000), w.schedule()) ==
        base.Digits(2000 - omega(w, 2000)));
}

TEST_CASE("labels") {
  for (auto t : {TargetSet::kCustom, TargetSet::kDiMinusBa, TargetSet::kDi1MinusDi2,
                 TargetSet::kDi2MinusDi1, TargetSet::kBaW}) {
    CHECK(ParseTargetLabel(TargetLabel(t)) == t);
  }
  CHECK_THROWS_AS(ParseTargetLabel("nope"), DomainError);
}

TEST_CASE("BA_W parameters") {
  const BaWParams b = ba_w(0.5, {{2, 3}});
  CHECK(b.m == 24);
  REQUIRE(b.blocks.size() == 1);
  CHECK(b.blocks[0].q == 144);
  CHECK(b.blocks[0].nu == 29);
  CHECK_FALSE(b.printed_chain_holds);
  CHECK(b.chain_holds);
  CHECK(b.lower == doctest::Approx(std::pow(2.0, 0.5) * (1 - 2.0 / 24)));

  // 2 log 4 / (0.5 log 2) = 8 exactly.
  CHECK(ba_w(0.5, {{1}}).blocks[0].nu == 8);
  CHECK(ba_w(0.05, {{2, 3}}).m == 231);
  CHECK_THROWS_AS(ba_w(0, {{2}}), DomainError);
  CHECK_THROWS_AS(ba_w(1, {{2}}), DomainError);
  CHECK_THROWS_AS(ba_w(0.5, {{0}}), DomainError);
}

TEST_CASE("BA_W streams") {
  const BaWParams b = ba_w(0.5, {{2, 3}, {5}});
  const BaWStream s(b, 7);
  const std::size_t n = 5000;
  const Word pre = s.Prefix(n);
  for (std::size_t i = 1; i <= n; ++i) {
    if (s.IsFree(i)) {
      REQUIRE(pre[i - 1] >= 1);
      REQUIRE(pre[i - 1] <= b.m);
    }
  }
  // Scheduled words repeat with the period.
  for (std::size_t start = 0; start + b.period < n; start += b.period) {
    for (const BaWBlock& blk : b.blocks) {
      for (std::size_t j = 0; j < blk.word.size(); ++j) {
        const std::size_t at = start + blk.word_offset + j;
        if (at > n) break;
        REQUIRE(pre[at - 1] == blk.word[j]);
        REQUIRE_FALSE(s.IsFree(at));
      }
    }
  }
  CHECK(BaWStream(b, 7).Prefix(300) == s.Prefix(300));
  CHECK(BaWStream(b, 8).Prefix(300) != s.Prefix(300));
}

TEST_CASE("good condition") {
  const auto g = good_condition_check(0.5, {{2, 3}}, 2000);
  REQUIRE(g.stays_from.has_value());
  CHECK(*g.stays_from <= g.first_period_end + 1);
  for (std::size_t k = g.first_period_end; k < g.log_product.size(); ++k) {
    REQUIRE(g.log_product[k] >= -kGoodConditionTolerance);
  }

  const auto empty = good_condition_check(0.5, {{}, {}}, 200);
  for (double v : empty.log_product) CHECK(v == 0);

  const auto tiny = good_condition_check(0.05, {{2, 3}}, 20000);
  CHECK(tiny.stays_from.has_value());
}

TEST_CASE("prefix predicates") {
  CHECK(in_e_n({1, 2, 3}, 3));
  CHECK_FALSE(in_e_n({1, 4}, 3));
  CHECK(digit_growth_ok({1, 2, 3, 4}, 1));
  CHECK_FALSE(digit_growth_ok({1, 5}, 2));
  CHECK(growth_exponent({1, 4, 9}) == doctest::Approx(2.0));
  CHECK(std::isinf(growth_exponent({2})));
}

}  // TEST_SUITE

}  // namespace lpdi
