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

// Digit insertion maps, the witness streams built from them, and the
// BA_W(epsilon) construction with free blocks of digits in [1, M].

#ifndef LPDI_CONSTRUCTORS_HPP_
#define LPDI_CONSTRUCTORS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpdi/cf_core.hpp"
#include "lpdi/classifier.hpp"

namespace lpdi {

struct Insertion {
  std::size_t offset = 0;  // emitted index n_i of the first digit of A_i
  Word word;
};

// Words A_i placed so that A_i starts at emitted index n_i.
class InsertionSchedule {
 public:
  // i is 1-based.
  using IndexFn = std::function<std::size_t(std::size_t)>;
  using WordFn = std::function<Word(std::size_t)>;

  InsertionSchedule(IndexFn index, WordFn word,
                    std::optional<std::size_t> count = std::nullopt,
                    bool length_constraint = false);
  static InsertionSchedule Explicit(std::vector<std::size_t> offsets,
                                    std::vector<Word> words,
                                    bool length_constraint = false);

  std::size_t Offset(std::size_t i) const { return index_(i); }
  Word WordAt(std::size_t i) const { return word_(i); }
  std::optional<std::size_t> count() const { return count_; }
  // When set, consecutive words must leave a base digit between them:
  // |A_i| < n_{i+1} - n_i.
  bool length_constraint() const { return length_constraint_; }

  // Validated insertions with n_i <= horizon. Throws PreconditionError on
  // non-increasing offsets, overlaps, digits 0 or empty words.
  std::vector<Insertion> Upto(std::size_t horizon) const;

 private:
  IndexFn index_;
  WordFn word_;
  std::optional<std::size_t> count_;
  bool length_constraint_;
};

enum class TargetSet { kCustom, kDiMinusBa, kDi1MinusDi2, kDi2MinusDi1, kBaW };

std::string TargetLabel(TargetSet t);
TargetSet ParseTargetLabel(const std::string& label);

struct WitnessInfo {
  TargetSet target = TargetSet::kCustom;
  double p = 0;  // only for kDiMinusBa
  Word sigma_word;  // set when sigma_p was given exactly
  std::size_t offset = 0;          // c in n_i = 2^(i+c)
  std::size_t nominal_offset = 0;  // the offset of the original schedule
  bool length_constraint = false;
};

// S'(base): the emitted digits b_1, b_2, ...
class WitnessStream {
 public:
  WitnessStream(CFExpansion base, InsertionSchedule schedule,
                WitnessInfo info = {});

  Digit At(std::size_t n) const;
  Word Prefix(std::size_t n) const;
  bool IsInserted(std::size_t n) const;

  const CFExpansion& base() const { return base_; }
  const InsertionSchedule& schedule() const { return schedule_; }
  const WitnessInfo& info() const { return info_; }
  const std::vector<ConstructionClaim>& claims() const { return claims_; }
  void set_claims(std::vector<ConstructionClaim> c) { claims_ = std::move(c); }

  // [0; b_1, b_2, ...] carrying the construction claims.
  CFExpansion Expansion() const;

 private:
  CFExpansion base_;
  InsertionSchedule schedule_;
  WitnessInfo info_;
  std::vector<ConstructionClaim> claims_;
};

WitnessStream insert_map(const CFExpansion& base,
                         const InsertionSchedule& schedule);

// P': drop the inserted positions of an emitted prefix.
Word remove_inserted(const Word& emitted, const InsertionSchedule& schedule);

// Inserted positions among b_1..b_n.
std::size_t omega(const WitnessStream& stream, std::size_t n);

// The all-ones stream [0; 1, 1, ...].
CFExpansion OnesBase();

// n_i = 2^(i + offset). A_i = (i) for offset 0 and A_i = (2, i, 4) when
// sigma_p is rational.
WitnessStream witness_di_minus_ba(double p, const CFExpansion& base,
                                  std::optional<std::size_t> offset = {});
WitnessStream witness_di_minus_ba(const Regime& regime,
                                  const CFExpansion& base,
                                  std::optional<std::size_t> offset = {});
// A_i = (n_i, 3, 2, 1, 3, 4, n_i + 1).
WitnessStream witness_di1_minus_di2(const CFExpansion& base,
                                    std::optional<std::size_t> offset = {},
                                    bool length_constraint = false);
// A_i = (n_i, 1, 1, 1, 2, n_i + 1).
WitnessStream witness_di2_minus_di1(const CFExpansion& base,
                                    std::optional<std::size_t> offset = {},
                                    bool length_constraint = false);

// Rebuild a preset from its info.
WitnessStream MakeWitness(const WitnessInfo& info, const CFExpansion& base);

// Scan of a preset prefix against the pattern families it should contain
// (intended) and those it must avoid (complementary). Record growth is
// judged without the final-quarter condition, since insertions thin out
// geometrically.
struct SignatureCheck {
  std::vector<FamilyScan> intended;
  std::vector<FamilyScan> complementary;
  bool intended_growing = false;
  bool complementary_absent = true;

  bool Matches() const { return intended_growing && complementary_absent; }
};

SignatureCheck witness_signature(const WitnessStream& w, std::size_t n);

struct BaWBlock {
  Word word;
  BigInt q;             // prod (b + 1)^2
  std::size_t nu = 0;   // free digits before the word
  std::size_t n = 0;    // n_t as in n_1 = 1, n_{t+1} = n_t + r_t + nu_{t+1} + 1
  std::size_t word_offset = 0;  // emitted index of the first word digit
  double q_root = 1;            // Q^(1/nu)
};

struct BaWParams {
  double epsilon = 0;
  std::size_t m = 0;
  std::vector<BaWBlock> blocks;
  std::size_t period = 0;  // sum of nu + r over the blocks
  double one_minus_2_over_m = 0;
  double two_pow_half_eps = 0;
  double lower = 0;  // 2^eps (1 - 2/M)
  // 1 - 2/M >= 2^(eps/2) >= Q^(1/nu), which fails for every eps > 0.
  bool printed_chain_holds = false;
  // 2^eps (1 - 2/M) > Q^(1/nu) for every block.
  bool chain_holds = false;
};

// W is repeated cyclically.
BaWParams ba_w(double epsilon, const std::vector<Word>& words);

class BaWStream {
 public:
  BaWStream(BaWParams params, std::uint64_t seed);
  Digit At(std::size_t n) const;
  Word Prefix(std::size_t n) const;
  bool IsFree(std::size_t n) const;
  const BaWParams& params() const { return params_; }

 private:
  BaWParams params_;
  std::uint64_t seed_;
};

struct GoodConditionReport {
  std::size_t horizon = 0;
  std::vector<double> log_product;  // log of prod_{k <= n} F(k)
  double min_log_product = 0;
  std::size_t first_period_end = 0;
  // Index from which the product stays >= 1, up to the tolerance.
  std::optional<std::size_t> stays_from;
  std::optional<std::size_t> failure;  // last index with product < 1
};

constexpr double kGoodConditionTolerance = 1e-12;

GoodConditionReport good_condition_check(double epsilon,
                                         const std::vector<Word>& words,
                                         std::size_t horizon);

// 1 <= a_n <= N for all digits of the prefix.
bool in_e_n(const Word& prefix, Digit n_max);
// a_n <= n^c for all digits of the prefix.
bool digit_growth_ok(const Word& prefix, double c);
// The smallest c with a_n <= n^c on the prefix (+inf when a_1 > 1).
double growth_exponent(const Word& prefix);

}  // namespace lpdi

#endif  // LPDI_CONSTRUCTORS_HPP_
