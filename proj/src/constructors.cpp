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

#include "lpdi/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "lpdi/classifier.hpp"
#include "lpdi/lp_geometry.hpp"

namespace lpdi {

namespace {

// Offsets up to 2^62 fit comfortably in size_t.
constexpr std::size_t kMaxShift = 62;
constexpr std::size_t kGateHorizon = 1024;

std::size_t PowerOfTwo(std::size_t e) {
  if (e > kMaxShift) throw ResourceError("schedule offset overflow", e);
  return std::size_t{1} << e;
}

}  // namespace

InsertionSchedule::InsertionSchedule(IndexFn index, WordFn word,
                                     std::optional<std::size_t> count,
                                     bool length_constraint)
    : index_(std::move(index)),
      word_(std::move(word)),
      count_(count),
      length_constraint_(length_constraint) {}

InsertionSchedule InsertionSchedule::Explicit(std::vector<std::size_t> offsets,
                                              std::vector<Word> words,
                                              bool length_constraint) {
  if (offsets.size() != words.size()) {
    throw DomainError("schedule needs one word per offset");
  }
  const std::size_t n = offsets.size();
  return InsertionSchedule(
      [o = std::move(offsets)](std::size_t i) { return o[i - 1]; },
      [w = std::move(words)](std::size_t i) { return w[i - 1]; }, n,
      length_constraint);
}

std::vector<Insertion> InsertionSchedule::Upto(std::size_t horizon) const {
  std::vector<Insertion> out;
  std::size_t prev_end = 0;  // first index after the previous word
  std::size_t prev = 0;
  for (std::size_t i = 1; !count_ || i <= *count_; ++i) {
    const std::size_t n = Offset(i);
    if (n == 0) throw PreconditionError("schedule offsets start at 1");
    if (i > 1 && n <= prev) {
      throw PreconditionError("schedule offsets must increase strictly");
    }
    if (n < prev_end) {
      throw PreconditionError("word " + std::to_string(i - 1) +
                              " overlaps the next insertion");
    }
    if (length_constraint_ && i > 1 && n == prev_end) {
      throw PreconditionError("length constraint |A_i| < n_{i+1} - n_i fails");
    }
    if (n > horizon) break;
    Word w = WordAt(i);
    if (w.empty()) throw PreconditionError("inserted words must be nonempty");
    if (std::find(w.begin(), w.end(), Digit{0}) != w.end()) {
      throw PreconditionError("inserted digits must be >= 1");
    }
    prev = n;
    prev_end = n + w.size();
    out.push_back({n, std::move(w)});
  }
  return out;
}

std::string TargetLabel(TargetSet t) {
  switch (t) {
    case TargetSet::kCustom: return "custom";
    case TargetSet::kDiMinusBa: return "di-minus-ba";
    case TargetSet::kDi1MinusDi2: return "di1-minus-di2";
    case TargetSet::kDi2MinusDi1: return "di2-minus-di1";
    case TargetSet::kBaW: return "ba-w";
  }
  return "?";
}

TargetSet ParseTargetLabel(const std::string& label) {
  for (TargetSet t : {TargetSet::kCustom, TargetSet::kDiMinusBa,
                      TargetSet::kDi1MinusDi2, TargetSet::kDi2MinusDi1,
                      TargetSet::kBaW}) {
    if (TargetLabel(t) == label) return t;
  }
  throw DomainError("unknown witness label '" + label + "'");
}

WitnessStream::WitnessStream(CFExpansion base, InsertionSchedule schedule,
                             WitnessInfo info)
    : base_(std::move(base)),
      schedule_(std::move(schedule)),
      info_(info) {
  if (base_.IsRational()) {
    throw PreconditionError("the base stream must be infinite");
  }
  // Validate the part of the schedule that is ever emitted in practice.
  schedule_.Upto(std::size_t{1} << 24);
}

Digit WitnessStream::At(std::size_t n) const {
  if (n == 0) throw DomainError("digits are indexed from 1");
  std::size_t shift = 0;
  for (std::size_t i = 1; !schedule_.count() || i <= *schedule_.count(); ++i) {
    const std::size_t o = schedule_.Offset(i);
    if (o > n) break;
    const Word w = schedule_.WordAt(i);
    if (n < o + w.size()) return w[n - o];
    shift += w.size();
  }
  return base_.DigitAt(n - shift);
}

Word WitnessStream::Prefix(std::size_t n) const {
  Word out;
  out.reserve(n);
  std::size_t base_index = 1;
  std::size_t pos = 1;
  for (const Insertion& ins : schedule_.Upto(n)) {
    for (; pos < ins.offset; ++pos) out.push_back(base_.DigitAt(base_index++));
    for (Digit d : ins.word) {
      if (pos > n) break;
      out.push_back(d);
      ++pos;
    }
  }
  for (; pos <= n; ++pos) out.push_back(base_.DigitAt(base_index++));
  return out;
}

bool WitnessStream::IsInserted(std::size_t n) const {
  for (const Insertion& ins : schedule_.Upto(n)) {
    if (n < ins.offset + ins.word.size()) return true;
  }
  return false;
}

CFExpansion WitnessStream::Expansion() const {
  const WitnessStream copy = *this;
  return CFExpansion::Generated(
             0, [copy](std::size_t i) { return copy.At(i); },
             TargetLabel(info_.target))
      .WithClaims(claims_);
}

WitnessStream insert_map(const CFExpansion& base,
                         const InsertionSchedule& schedule) {
  return WitnessStream(base, schedule);
}

Word remove_inserted(const Word& emitted, const InsertionSchedule& schedule) {
  const auto ins = schedule.Upto(emitted.size());
  Word out;
  out.reserve(emitted.size());
  std::size_t k = 0;
  for (std::size_t n = 1; n <= emitted.size(); ++n) {
    while (k < ins.size() && n >= ins[k].offset + ins[k].word.size()) ++k;
    if (k < ins.size() && n >= ins[k].offset) continue;
    out.push_back(emitted[n - 1]);
  }
  return out;
}

std::size_t omega(const WitnessStream& stream, std::size_t n) {
  std::size_t count = 0;
  for (const Insertion& ins : stream.schedule().Upto(n)) {
    count += std::min(ins.word.size(), n - ins.offset + 1);
  }
  if (auto len = stream.base().Length(); len && n - count > *len) {
    throw HorizonError("omega beyond the emitted horizon");
  }
  return count;
}

CFExpansion OnesBase() { return CFExpansion::Periodic(0, {}, {1}); }

namespace {

void GateBase(const CFExpansion& base, const Regime& regime) {
  switch (base.kind()) {
    case CFExpansion::Kind::kFinite:
      throw PreconditionError("the base must be an infinite expansion");
    case CFExpansion::Kind::kE:
      throw PreconditionError("the base must have bounded digits");
    default:
      break;
  }
  std::size_t horizon = kGateHorizon;
  if (auto len = base.Length()) horizon = std::min(horizon, *len);
  if (horizon < 16) throw PreconditionError("the base prefix is too short");
  if (base.kind() != CFExpansion::Kind::kPeriodic) {
    PatternSpec u;
    u.kind = PatternKind::kUnboundedDigits;
    const auto report = ScanDigits(base.Digits(horizon), {u});
    if (FamilyGrowing(report.families[0], horizon)) {
      throw PreconditionError("the base digits appear unbounded");
    }
  }
  const Verdict v = classify(base, regime, horizon);
  if (!IsImprovable(v.status)) {
    throw PreconditionError("the base is not improvable at p = " +
                            std::to_string(regime.p) + ": " + v.justification);
  }
}

ConstructionClaim Claim(double p, bool improvable, std::string why) {
  return ConstructionClaim{p, improvable, std::move(why)};
}

const char* kUnbounded = "the inserted digits are unbounded";

}  // namespace

WitnessStream witness_di_minus_ba(const Regime& regime,
                                  const CFExpansion& base,
                                  std::optional<std::size_t> offset) {
  if (regime.tag == RegimeTag::kPEqInf) {
    throw PreconditionError(
        "for the sup-norm every improvable number is badly approximable");
  }
  GateBase(base, regime);
  const bool triple = regime.sigma_rational;
  WitnessInfo info;
  info.target = TargetSet::kDiMinusBa;
  info.p = regime.p;
  if (regime.sigma_exact) info.sigma_word = regime.sigma_digits;
  info.offset = offset.value_or(triple ? 1 : 0);
  info.nominal_offset = triple ? 100 : 0;
  const std::size_t c = info.offset;
  InsertionSchedule schedule(
      [c](std::size_t i) { return PowerOfTwo(i + c); },
      [triple](std::size_t i) {
        return triple ? Word{2, i, 4} : Word{i};
      });
  WitnessStream w(base, std::move(schedule), info);
  w.set_claims(
      {Claim(regime.p, true,
             triple ? "the blocks 2,i,4 sit at sparse positions and never "
                      "complete a sigma-flanked core"
                    : "single growing digits at sparse positions never "
                      "complete a restricted pattern"),
       Claim(kInf, false, kUnbounded)});
  return w;
}

WitnessStream witness_di_minus_ba(double p, const CFExpansion& base,
                                  std::optional<std::size_t> offset) {
  return witness_di_minus_ba(regime_of(p), base, offset);
}

WitnessStream witness_di1_minus_di2(const CFExpansion& base,
                                    std::optional<std::size_t> offset,
                                    bool length_constraint) {
  GateBase(base, regime_of(1));
  WitnessInfo info;
  info.target = TargetSet::kDi1MinusDi2;
  info.offset = offset.value_or(2);
  info.nominal_offset = 100;
  info.length_constraint = length_constraint;
  const std::size_t c = info.offset;
  InsertionSchedule schedule(
      [c](std::size_t i) { return PowerOfTwo(i + c); },
      [c](std::size_t i) {
        const Digit n = PowerOfTwo(i + c);
        return Word{n, 3, 2, 1, 3, 4, n + 1};
      },
      std::nullopt, length_constraint);
  WitnessStream w(base, std::move(schedule), info);
  w.set_claims(
      {Claim(1, true,
             "the blocks n,3,2,1,3,4,n+1 contain no 1,1 or 2 between large "
             "digits at fixed distance"),
       Claim(2, false,
             "x,3,2,1,3,4,y recurs with min(x,y) -> inf, and "
             "beta* = 4/3, beta = 9/4 give beta beta* = 3"),
       Claim(kInf, false, kUnbounded)});
  return w;
}

WitnessStream witness_di2_minus_di1(const CFExpansion& base,
                                    std::optional<std::size_t> offset,
                                    bool length_constraint) {
  GateBase(base, regime_of(2));
  WitnessInfo info;
  info.target = TargetSet::kDi2MinusDi1;
  info.offset = offset.value_or(2);
  info.nominal_offset = 100;
  info.length_constraint = length_constraint;
  const std::size_t c = info.offset;
  InsertionSchedule schedule(
      [c](std::size_t i) { return PowerOfTwo(i + c); },
      [c](std::size_t i) {
        const Digit n = PowerOfTwo(i + c);
        return Word{n, 1, 1, 1, 2, n + 1};
      },
      std::nullopt, length_constraint);
  WitnessStream w(base, std::move(schedule), info);
  w.set_claims(
      {Claim(2, true,
             "the block x,1,1,1,2,x+1 corresponds to beta = beta* = 1, and "
             "beta beta* != 3"),
       Claim(1, false,
             "x,1,1,1,2,x+1 recurs with x -> inf, an almost symmetric form "
             "around 1,1"),
       Claim(kInf, false, kUnbounded)});
  return w;
}

WitnessStream MakeWitness(const WitnessInfo& info, const CFExpansion& base) {
  switch (info.target) {
    case TargetSet::kDiMinusBa:
      if (!info.sigma_word.empty()) {
        return witness_di_minus_ba(regime_from_sigma_word(info.sigma_word),
                                   base, info.offset);
      }
      return witness_di_minus_ba(info.p, base, info.offset);
    case TargetSet::kDi1MinusDi2:
      return witness_di1_minus_di2(base, info.offset, info.length_constraint);
    case TargetSet::kDi2MinusDi1:
      return witness_di2_minus_di1(base, info.offset, info.length_constraint);
    default:
      throw DomainError("no preset for label " + TargetLabel(info.target));
  }
}

SignatureCheck witness_signature(const WitnessStream& w, std::size_t n) {
  std::vector<PatternSpec> intended, complementary;
  switch (w.info().target) {
    case TargetSet::kDiMinusBa: {
      PatternSpec u;
      u.kind = PatternKind::kUnboundedDigits;
      u.clause = "unbounded-digits";
      intended = {u};
      complementary = patterns_for(
          w.info().sigma_word.empty()
              ? regime_of(w.info().p)
              : regime_from_sigma_word(w.info().sigma_word));
      break;
    }
    case TargetSet::kDi1MinusDi2:
      intended = patterns_for(regime_of(2));
      complementary = patterns_for(regime_of(1));
      break;
    case TargetSet::kDi2MinusDi1:
      intended = patterns_for(regime_of(1));
      complementary = patterns_for(regime_of(2));
      break;
    default:
      throw DomainError("no signature for label " +
                        TargetLabel(w.info().target));
  }
  const Word digits = w.Prefix(n);
  SignatureCheck out;
  out.intended = ScanDigits(digits, intended).families;
  out.complementary = ScanDigits(digits, complementary).families;
  for (const auto& f : out.intended) {
    out.intended_growing = out.intended_growing || FamilyGrowing(f, 0);
  }
  for (const auto& f : out.complementary) {
    out.complementary_absent = out.complementary_absent && !FamilyGrowing(f, 0);
  }
  return out;
}

namespace {

// ceil(x) where x is evaluated at 128 bits, or at 512 bits when it lies
// within 1e-12 of an integer.
template <class Eval>
std::size_t GuardedCeil(Eval eval) {
  const Float128 x = eval.template operator()<Float128>();
  const Float128 r = round(x);
  if (abs(x - r) > Float128(1e-12) * (x > 1 ? x : Float128(1))) {
    return ceil(x).convert_to<std::size_t>();
  }
  const Float512 y = eval.template operator()<Float512>();
  const Float512 ry = round(y);
  if (abs(y - ry) <= TwoPow<Float512>(-400) * (y > 1 ? y : Float512(1))) {
    return ry.convert_to<std::size_t>();
  }
  return ceil(y).convert_to<std::size_t>();
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw DomainError("epsilon must lie in (0,1)");
  }
}

}  // namespace

BaWParams ba_w(double epsilon, const std::vector<Word>& words) {
  CheckEpsilon(epsilon);
  if (words.empty()) throw DomainError("W needs at least one word");
  BaWParams out;
  out.epsilon = epsilon;
  out.m = GuardedCeil([&]<class Real>() {
    return Real(8) / (Real(epsilon) * log(Real(2)));
  });
  const double m = static_cast<double>(out.m);
  out.one_minus_2_over_m = 1 - 2 / m;
  out.two_pow_half_eps = std::pow(2.0, epsilon / 2);
  out.lower = std::pow(2.0, epsilon) * out.one_minus_2_over_m;
  out.chain_holds = true;
  out.printed_chain_holds = out.one_minus_2_over_m >= out.two_pow_half_eps;
  std::size_t pos = 0, n_prev = 0, r_prev = 0;
  for (const Word& w : words) {
    if (std::find(w.begin(), w.end(), Digit{0}) != w.end()) {
      throw DomainError("pattern digits must be >= 1");
    }
    BaWBlock b;
    b.word = w;
    b.q = 1;
    for (Digit d : w) b.q *= BigInt(d + 1) * BigInt(d + 1);
    b.nu = b.q == 1 ? 0 : GuardedCeil([&]<class Real>() {
      return 2 * log(FromBigInt<Real>(b.q)) / (Real(epsilon) * log(Real(2)));
    });
    b.n = out.blocks.empty() ? 1 : n_prev + r_prev + b.nu + 1;
    b.word_offset = pos + b.nu + 1;
    b.q_root = b.nu == 0 ? 1.0
                         : std::exp(std::log(ToDouble(b.q)) /
                                    static_cast<double>(b.nu));
    if (b.nu > 0) {
      out.printed_chain_holds =
          out.printed_chain_holds && out.two_pow_half_eps >= b.q_root;
      out.chain_holds = out.chain_holds && out.lower > b.q_root;
    }
    pos += b.nu + w.size();
    n_prev = b.n;
    r_prev = w.size();
    out.blocks.push_back(std::move(b));
  }
  out.period = pos;
  return out;
}

BaWStream::BaWStream(BaWParams params, std::uint64_t seed)
    : params_(std::move(params)), seed_(seed) {
  if (params_.period == 0) throw DomainError("W has only empty words");
}

namespace {

struct BlockPos {
  const BaWBlock* block;
  std::size_t k;  // 0-based index inside nu + r
};

BlockPos Locate(const BaWParams& params, std::size_t n) {
  std::size_t k = (n - 1) % params.period;
  for (const BaWBlock& b : params.blocks) {
    const std::size_t len = b.nu + b.word.size();
    if (k < len) return {&b, k};
    k -= len;
  }
  throw InternalError("BA_W block lookup");
}

}  // namespace

Digit BaWStream::At(std::size_t n) const {
  if (n == 0) throw DomainError("digits are indexed from 1");
  const BlockPos bp = Locate(params_, n);
  if (bp.k < bp.block->nu) {
    return 1 + SplitMix64(seed_ ^ SplitMix64(n)) % params_.m;
  }
  return bp.block->word[bp.k - bp.block->nu];
}

Word BaWStream::Prefix(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(At(i));
  return out;
}

bool BaWStream::IsFree(std::size_t n) const {
  const BlockPos bp = Locate(params_, n);
  return bp.k < bp.block->nu;
}

GoodConditionReport good_condition_check(double epsilon,
                                         const std::vector<Word>& words,
                                         std::size_t horizon) {
  const BaWParams params = ba_w(epsilon, words);
  GoodConditionReport r;
  r.horizon = horizon;
  r.first_period_end = params.period;
  r.log_product.reserve(horizon);
  if (params.period == 0) {
    r.log_product.assign(horizon, 0.0);
    r.stays_from = 1;
    return r;
  }
  // Each block contributes log Q over its free digits and -log Q over its
  // word, so the running product restarts at 1 after every block.
  for (std::size_t n = 1; n <= horizon; ++n) {
    const BlockPos bp = Locate(params, n);
    const BaWBlock& b = *bp.block;
    const double log_q = std::log(ToDouble(b.q));
    double s;
    if (bp.k < b.nu) {
      s = static_cast<double>(bp.k + 1) * (log_q / static_cast<double>(b.nu));
    } else {
      s = log_q;
      for (std::size_t j = 0; j <= bp.k - b.nu; ++j) {
        s -= 2 * std::log(static_cast<double>(b.word[j]) + 1);
      }
    }
    r.log_product.push_back(s);
    if (s < -kGoodConditionTolerance) r.failure = n;
  }
  r.min_log_product =
      r.log_product.empty()
          ? 0
          : *std::min_element(r.log_product.begin(), r.log_product.end());
  if (!r.failure) {
    r.stays_from = 1;
  } else if (*r.failure < horizon) {
    r.stays_from = *r.failure + 1;
  }
  return r;
}

bool in_e_n(const Word& prefix, Digit n_max) {
  return std::all_of(prefix.begin(), prefix.end(),
                     [&](Digit d) { return d >= 1 && d <= n_max; });
}

bool digit_growth_ok(const Word& prefix, double c) {
  for (std::size_t n = 1; n <= prefix.size(); ++n) {
    const double bound = std::pow(static_cast<double>(n), c);
    if (static_cast<double>(prefix[n - 1]) > bound * (1 + 1e-12)) return false;
  }
  return true;
}

double growth_exponent(const Word& prefix) {
  double c = 0;
  for (std::size_t n = 1; n <= prefix.size(); ++n) {
    const Digit d = prefix[n - 1];
    if (d <= 1) continue;
    if (n == 1) return std::numeric_limits<double>::infinity();
    c = std::max(c, std::log(static_cast<double>(d)) /
                        std::log(static_cast<double>(n)));
  }
  return c;
}

}  // namespace lpdi
