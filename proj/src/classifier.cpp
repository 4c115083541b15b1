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

#include "lpdi/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace lpdi {

namespace {

constexpr std::size_t kFlankDepth = 16;
constexpr double kProductTolerance = 1e-9;
constexpr double kMaxWindowRecord = 30;

// Continued fraction digits of x in (0,1), stopping where the precision
// of Real no longer determines them.
template <class Real>
Word FractionDigits(Real x, std::size_t max_digits, bool* terminated) {
  using std::floor;
  *terminated = false;
  Word out;
  const int bits = static_cast<int>(TierBits<Real>());
  const Real eps = TwoPow<Real>(-bits / 2);
  double log2_q = 0;
  while (out.size() < max_digits) {
    if (x < eps) {
      *terminated = true;
      break;
    }
    const Real y = 1 / x;
    const Real a = floor(y);
    if (a > Real(1e18)) {
      *terminated = true;
      break;
    }
    log2_q += std::log2(ToDouble(a) + 1);
    if (2 * log2_q > bits - 24) break;
    out.push_back(a.template convert_to<Digit>());
    x = y - a;
  }
  return out;
}

template <class Real>
Real SigmaFor(RegimeTag tag, double p) {
  if (tag == RegimeTag::kPEqP0) return SigmaT(PZeroT<Real>());
  return SigmaT(Real(p));
}

bool UsesSigma(RegimeTag tag) {
  return tag == RegimeTag::kOpen12 || tag == RegimeTag::kAboveP0 ||
         tag == RegimeTag::kPEqP0;
}

// Convergents P_j/Q_j of [b0; b1, ..., b_j] for j = 0..n-1, with b0 the
// first entry of `digits`.
struct Fractions {
  std::vector<BigInt> p, q;
};

Fractions Convergents(const std::vector<BigInt>& digits) {
  Fractions f;
  BigInt p_prev = 0, q_prev = 1, p = 1, q = 0;
  for (const BigInt& d : digits) {
    BigInt pn = d * p + p_prev;
    BigInt qn = d * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(pn);
    q = std::move(qn);
    f.p.push_back(p);
    f.q.push_back(q);
  }
  return f;
}

void PushRecord(std::vector<Record>* records, std::size_t position,
                double value) {
  if (records->empty() || value > records->back().value) {
    records->push_back({position, value});
  }
}

template <class Real>
Real Backward(const std::vector<Digit>& digits, Digit first_minus) {
  // [first; digits[1], digits[2], ...] with first = digits[0] - first_minus.
  Real v = Real(digits.back());
  for (std::size_t i = digits.size() - 1; i-- > 1;) v = Real(digits[i]) + 1 / v;
  return Real(digits[0] - first_minus) + 1 / v;
}

class Scanner {
 public:
  explicit Scanner(const Word& a) : a_(a), n_(a.size()) {}

  // a_i, 1-based.
  Digit at(std::size_t i) const { return a_[i - 1]; }

  FamilyScan Run(const PatternSpec& spec) const {
    FamilyScan out;
    out.spec = spec;
    switch (spec.kind) {
      case PatternKind::kFlankedFixed: Flanked(&out); break;
      case PatternKind::kPalindromicGrowing: Palindromic(&out); break;
      case PatternKind::kCentralProduct: CentralProduct(&out); break;
      case PatternKind::kAlmostSymmetric: AlmostSymmetric(&out); break;
      case PatternKind::kUnboundedDigits: Unbounded(&out); break;
    }
    return out;
  }

 private:
  void Flanked(FamilyScan* out) const {
    const Word& core = out->spec.core;
    const std::size_t len = core.size();
    for (std::size_t s = 2; s + len <= n_; ++s) {
      bool match = true;
      for (std::size_t j = 0; j < len && match; ++j) {
        match = at(s + j) == core[j];
      }
      if (!match) continue;
      const Occurrence o{s, len, at(s - 1), at(s + len)};
      out->occurrences.push_back(o);
      PushRecord(&out->records, s,
                 static_cast<double>(std::min(o.left, o.right)));
    }
  }

  void Palindromic(FamilyScan* out) const {
    const Word& s = out->spec.core;
    out->nu_cap = s.size();
    for (std::size_t c = 1; c <= n_; ++c) {
      if (at(c) != 1) continue;
      std::size_t v = 0;
      while (v < s.size() && c > v + 1 && c + v + 1 <= n_ &&
             at(c - v - 1) == s[v] && at(c + v + 1) == s[v]) {
        ++v;
      }
      if (v == 0) continue;
      out->max_nu = std::max(out->max_nu, v);
      PushRecord(&out->nu_records, c, static_cast<double>(v));
    }
  }

  // Outward digit sequences from a center, left then right.
  std::vector<BigInt> Outward(std::size_t from, bool left, std::size_t count,
                              Digit first_minus) const {
    std::vector<BigInt> d;
    for (std::size_t j = 0; j < count; ++j) {
      const Digit v = left ? at(from - j) : at(from + j);
      d.push_back(BigInt(v) - (j == 0 ? first_minus : 0));
    }
    return d;
  }

  void AlmostSymmetric(FamilyScan* out) const {
    const std::size_t depth = out->spec.depth;
    for (std::size_t c = 1; c + 1 <= n_; ++c) {
      if (at(c) != 1 || at(c + 1) != 1) continue;
      // u_j = a_{c-j}, v_j = a_{c+1+j}.
      const std::size_t left_avail = c - 1, right_avail = n_ - c - 1;
      if (left_avail >= 1 && right_avail >= 1) {
        const Digit u1 = at(c - 1), v1 = at(c + 2);
        if (v1 == u1 + 1 || u1 == v1 + 1) {
          std::size_t v = 1;
          while (v < left_avail && v < right_avail &&
                 at(c - 1 - v) == at(c + 2 + v)) {
            ++v;
          }
          out->max_nu = std::max(out->max_nu, v);
          PushRecord(&out->nu_records, c, static_cast<double>(v));
        }
      }
      // Flanked windows: |[u_1; ..., u_k] - [v_1; ..., v_m]| = 1 exactly.
      if (left_avail < 2 || right_avail < 2) continue;
      const std::size_t kmax = std::min(depth, left_avail - 1);
      const std::size_t mmax = std::min(depth, right_avail - 1);
      const Fractions u = Convergents(Outward(c - 1, true, kmax, 0));
      const Fractions v = Convergents(Outward(c + 2, false, mmax, 0));
      for (std::size_t k = 1; k <= kmax; ++k) {
        for (std::size_t m = 1; m <= mmax; ++m) {
          BigInt diff = u.p[k - 1] * v.q[m - 1] - v.p[m - 1] * u.q[k - 1];
          if (diff < 0) diff = -diff;
          if (diff != u.q[k - 1] * v.q[m - 1]) continue;
          const Occurrence o{c - k, k + 2 + m, at(c - k - 1), at(c + m + 2)};
          out->occurrences.push_back(o);
          PushRecord(&out->records, o.position,
                     static_cast<double>(std::min(o.left, o.right)));
        }
      }
    }
  }

  void CentralProduct(FamilyScan* out) const {
    const std::size_t depth = out->spec.depth;
    for (std::size_t c = 2; c < n_; ++c) {
      if (at(c) != 1) continue;
      const std::size_t left_avail = c - 1, right_avail = n_ - c;
      // Finite windows: beta* = [l_1 - 1; l_2..l_k], beta = [r_1 - 1; ...].
      if (left_avail >= 2 && right_avail >= 2) {
        const std::size_t kmax = std::min(depth, left_avail - 1);
        const std::size_t mmax = std::min(depth, right_avail - 1);
        const Fractions bs = Convergents(Outward(c - 1, true, kmax, 1));
        const Fractions b = Convergents(Outward(c + 1, false, mmax, 1));
        for (std::size_t k = 1; k <= kmax; ++k) {
          for (std::size_t m = 1; m <= mmax; ++m) {
            if (bs.p[k - 1] * b.p[m - 1] != 3 * bs.q[k - 1] * b.q[m - 1]) {
              continue;
            }
            const Occurrence o{c - k, k + 1 + m, at(c - k - 1), at(c + m + 1)};
            out->occurrences.push_back(o);
            PushRecord(&out->records, o.position,
                       static_cast<double>(std::min(o.left, o.right)));
          }
        }
      }
      // Deepest symmetric window.
      const std::size_t d = std::min({depth, left_avail, right_avail});
      if (d < 2) continue;
      Word left, right;
      for (std::size_t j = 1; j <= d; ++j) {
        left.push_back(at(c - j));
        right.push_back(at(c + j));
      }
      ProductWindow w;
      w.center = c;
      w.depth = d;
      w.beta_star = Backward<long double>(left, 1);
      w.beta = Backward<long double>(right, 1);
      w.residual = std::fabs(w.beta * w.beta_star - 3);
      out->windows.push_back(w);
      const double score =
          w.residual == 0 ? kMaxWindowRecord
                          : std::min(kMaxWindowRecord, -std::log10(w.residual));
      PushRecord(&out->window_records, c, score);
    }
  }

  void Unbounded(FamilyScan* out) const {
    for (std::size_t i = 1; i <= n_; ++i) {
      PushRecord(&out->records, i, static_cast<double>(at(i)));
    }
  }

  const Word& a_;
  std::size_t n_;
};

// Periodic extension helpers: digit j steps left/right of residue r.
Digit Left(const Word& period, std::size_t r, std::size_t j) {
  const std::size_t L = period.size();
  return period[(r + L * (j / L + 1) - j) % L];
}

Digit Right(const Word& period, std::size_t r, std::size_t j) {
  return period[(r + j) % period.size()];
}

// [first; d_2, d_3, ...] for the periodic outward sequence, truncated deep
// enough for Float512.
Float512 OutwardValue(const Word& period, std::size_t r, bool left,
                      Digit first_minus) {
  constexpr std::size_t kDepth = 1200;
  std::vector<Digit> d;
  d.reserve(kDepth);
  for (std::size_t j = 1; j <= kDepth; ++j) {
    d.push_back(left ? Left(period, r, j) : Right(period, r, j));
  }
  return Backward<Float512>(d, first_minus);
}

Verdict Decided(bool improvable, std::string why) {
  Verdict v;
  v.status = improvable ? VerdictStatus::kDecidedImprovable
                        : VerdictStatus::kDecidedNonImprovable;
  v.justification = std::move(why);
  return v;
}

Float512 SigmaHigh(const Regime& regime) {
  if (regime.tag == RegimeTag::kPEqP0) return SigmaT(PZeroT<Float512>());
  return SigmaT(Float512(regime.p));
}

Verdict DecidePeriodic(const CFExpansion& x, const Regime& regime) {
  const Word& period = x.period();
  const std::size_t L = period.size();
  switch (regime.tag) {
    case RegimeTag::kPEqInf:
    case RegimeTag::kOpen2P0:
      return Decided(true,
                     "bounded digits: no family with growing flanks recurs");
    case RegimeTag::kOpen12:
    case RegimeTag::kAboveP0:
    case RegimeTag::kPEqP0: {
      if (regime.sigma_rational) {
        return Decided(true,
                       "bounded digits: no sigma-flanked family recurs");
      }
      const Float512 s = SigmaHigh(regime);
      const Float512 eq = TwoPow<Float512>(-400);
      for (std::size_t r = 0; r < L; ++r) {
        if (period[r] != 1) continue;
        const Float512 lv = 1 / OutwardValue(period, r, true, 0);
        const Float512 rv = 1 / OutwardValue(period, r, false, 0);
        if (abs(lv - s) < eq && abs(rv - s) < eq) {
          return Decided(false,
                         "periodic palindromes around a central 1 match "
                         "sigma_p on both sides");
        }
      }
      return Decided(true,
                     "every central 1 of the period has an outward tail "
                     "different from sigma_p, so palindromic cores stay "
                     "bounded");
    }
    case RegimeTag::kPEq1: {
      for (std::size_t r = 0; r < L; ++r) {
        if (period[r] != 1 || period[(r + 1) % L] != 1) continue;
        const Digit u1 = Left(period, r, 1), v1 = Right(period, r + 1, 1);
        if (v1 != u1 + 1 && u1 != v1 + 1) continue;
        bool same = true;
        for (std::size_t j = 2; j <= L + 1 && same; ++j) {
          same = Left(period, r, j) == Right(period, r + 1, j);
        }
        if (same) {
          return Decided(false,
                         "the period realizes almost symmetric patterns "
                         "around 1,1 of every length");
        }
      }
      return Decided(true,
                     "no 1,1 center of the period is almost symmetric");
    }
    case RegimeTag::kPEq2: {
      const Float512 eq = TwoPow<Float512>(-400);
      const Float512 ne = TwoPow<Float512>(-200);
      for (std::size_t r = 0; r < L; ++r) {
        if (period[r] != 1) continue;
        const Float512 bs = OutwardValue(period, r, true, 1);
        const Float512 b = OutwardValue(period, r, false, 1);
        const Float512 res = abs(b * bs - 3);
        if (res < eq) {
          return Decided(false,
                         "a central 1 of the period has outward tails with "
                         "beta * beta* = 3");
        }
        if (!(res > ne)) {
          throw PrecisionError("central product residual is inconclusive");
        }
      }
      return Decided(true,
                     "no central 1 of the period has beta * beta* = 3");
    }
  }
  throw InternalError("unknown regime");
}

Verdict DecideE(const Regime& regime) {
  switch (regime.tag) {
    case RegimeTag::kOpen12:
    case RegimeTag::kAboveP0:
      return Decided(true,
                     "the large digits 2k of e strictly increase and are "
                     "separated by 1,1, so neither sigma-flanked nor "
                     "palindromic families recur");
    case RegimeTag::kPEqInf:
      return Decided(false, "the digits 2k of e are unbounded");
    default:
      return Decided(false,
                     "e contains 2k,1,1,2k+2 for every k, so x,1,1,y "
                     "recurs with min(x,y) -> inf");
  }
}

bool ClaimApplies(const ConstructionClaim& c, const Regime& regime) {
  if (std::isinf(c.p) || std::isinf(regime.p)) {
    return std::isinf(c.p) && std::isinf(regime.p);
  }
  if (std::fabs(c.p - regime.p) <= kRegimeTolerance) return true;
  // The pattern sets coincide across the whole interval (2, p0).
  return regime.tag == RegimeTag::kOpen2P0 &&
         RegimeTagOf(c.p) == RegimeTag::kOpen2P0;
}

}  // namespace

Regime regime_of(double p, Precision prec, std::size_t max_digits) {
  Regime r;
  r.tag = RegimeTagOf(p);
  r.p = p;
  if (!UsesSigma(r.tag)) return r;
  const Precision guard = prec.bits < kMaxPrecisionBits
                              ? prec.Doubled()
                              : Precision{kMaxPrecisionBits / 2};
  bool term_a = false, term_b = false;
  const Word a = WithPrecision(prec, [&]<class Real>() {
    return FractionDigits(SigmaFor<Real>(r.tag, p), max_digits + 1, &term_a);
  });
  const Word b = WithPrecision(guard, [&]<class Real>() {
    return FractionDigits(SigmaFor<Real>(r.tag, p), max_digits + 1, &term_b);
  });
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == b[common]) {
    ++common;
  }
  if (term_a && term_b && a.size() == b.size() && common == a.size()) {
    r.sigma_rational = true;
    r.sigma_digits = CFExpansion::Finite(0, a).word();
    return r;
  }
  // The last agreeing digit may still move; keep the ones before it.
  const std::size_t trusted = common == 0 ? 0 : common - 1;
  r.sigma_digits.assign(a.begin(),
                        a.begin() + static_cast<std::ptrdiff_t>(
                                        std::min(trusted, max_digits)));
  return r;
}

Regime regime_from_sigma_word(const Word& word) {
  if (word.empty()) throw DomainError("sigma word must be nonempty");
  const Word canon = CFExpansion::Finite(0, word).word();
  if (canon.empty()) throw DomainError("sigma must lie in (0,1)");
  const auto conv = convergents(CFExpansion::Finite(0, canon), canon.size());
  const double s = ToDouble(BigRational(conv.back().p, conv.back().q));
  const double p = h_inverse(s);
  Regime r;
  r.tag = RegimeTagOf(p);
  if (r.tag != RegimeTag::kOpen12 && r.tag != RegimeTag::kAboveP0) {
    throw DomainError("sigma word gives p = " + std::to_string(p) +
                      ", outside (1,2) and (p0,inf)");
  }
  r.p = p;
  r.sigma_digits = canon;
  r.sigma_rational = true;
  r.sigma_exact = true;
  return r;
}

std::string PatternKindName(PatternKind k) {
  switch (k) {
    case PatternKind::kFlankedFixed: return "FLANKED_FIXED";
    case PatternKind::kPalindromicGrowing: return "PALINDROMIC_GROWING";
    case PatternKind::kCentralProduct: return "CENTRAL_PRODUCT";
    case PatternKind::kAlmostSymmetric: return "ALMOST_SYMMETRIC";
    case PatternKind::kUnboundedDigits: return "UNBOUNDED_DIGITS";
  }
  return "?";
}

namespace {

PatternSpec Fixed(Word core, std::string clause) {
  PatternSpec s;
  s.kind = PatternKind::kFlankedFixed;
  s.clause = std::move(clause);
  s.core = std::move(core);
  return s;
}

// The four cores of the rational-sigma families.
std::vector<PatternSpec> SigmaFlanked(const Word& s) {
  Word left_a(s.rbegin(), s.rend());  // s_k..s_1
  Word left_b = left_a;               // 1, s_k - 1, s_{k-1}..s_1
  left_b[0] -= 1;
  left_b.insert(left_b.begin(), 1);
  Word right_a = s;  // s_1..s_k
  Word right_b = s;  // s_1..s_k - 1, 1
  right_b.back() -= 1;
  right_b.push_back(1);
  std::vector<PatternSpec> out;
  for (const Word* l : {&left_a, &left_b}) {
    for (const Word* r : {&right_a, &right_b}) {
      Word core = *l;
      core.push_back(1);
      core.insert(core.end(), r->begin(), r->end());
      out.push_back(Fixed(std::move(core), "sigma-flanked"));
    }
  }
  return out;
}

}  // namespace

std::vector<PatternSpec> patterns_for(const Regime& regime) {
  std::vector<PatternSpec> out;
  const PatternSpec f11 = Fixed({1, 1}, "flank-1-1");
  const PatternSpec f2 = Fixed({2}, "flank-2");
  auto sigma_specs = [&]() {
    std::vector<PatternSpec> s;
    if (regime.sigma_rational) return SigmaFlanked(regime.sigma_digits);
    PatternSpec pal;
    pal.kind = PatternKind::kPalindromicGrowing;
    pal.clause = "sigma-palindrome";
    pal.core = regime.sigma_digits;
    s.push_back(pal);
    return s;
  };
  switch (regime.tag) {
    case RegimeTag::kOpen2P0:
      out = {f11, f2};
      break;
    case RegimeTag::kOpen12:
    case RegimeTag::kAboveP0:
      out = sigma_specs();
      break;
    case RegimeTag::kPEqP0: {
      out = {f11, f2};
      auto s = sigma_specs();
      out.insert(out.end(), s.begin(), s.end());
      break;
    }
    case RegimeTag::kPEq1: {
      PatternSpec asym;
      asym.kind = PatternKind::kAlmostSymmetric;
      asym.clause = "almost-symmetric";
      asym.depth = kFlankDepth;
      out = {f11, f2, asym};
      break;
    }
    case RegimeTag::kPEq2: {
      PatternSpec prod;
      prod.kind = PatternKind::kCentralProduct;
      prod.clause = "central-product";
      prod.tolerance = kProductTolerance;
      prod.depth = kFlankDepth;
      out = {f11, f2, prod};
      break;
    }
    case RegimeTag::kPEqInf: {
      PatternSpec u;
      u.kind = PatternKind::kUnboundedDigits;
      u.clause = "unbounded-digits";
      out = {u};
      break;
    }
  }
  return out;
}

bool RecordsGrowing(const std::vector<Record>& records, std::size_t horizon) {
  if (records.size() < 3) return false;
  const Record& last = records.back();
  if (last.value < kRecordMin) return false;
  return horizon == 0 || 4 * last.position > 3 * horizon;
}

bool FamilyGrowing(const FamilyScan& scan, std::size_t horizon) {
  return RecordsGrowing(scan.records, horizon) ||
         RecordsGrowing(scan.nu_records, horizon) ||
         RecordsGrowing(scan.window_records, horizon);
}

ScanReport ScanDigits(const Word& digits,
                      const std::vector<PatternSpec>& specs) {
  ScanReport report;
  report.horizon = digits.size();
  const Scanner scanner(digits);
  for (const auto& spec : specs) report.families.push_back(scanner.Run(spec));
  return report;
}

ScanReport scan(const CFExpansion& x, const std::vector<PatternSpec>& specs,
                std::size_t horizon) {
  if (horizon < 10) throw DomainError("scan horizon must be at least 10");
  if (auto len = x.Length(); len && *len < horizon) {
    throw TruncationError("expansion shorter than the scan horizon", *len);
  }
  return ScanDigits(x.Digits(horizon), specs);
}

std::string StatusName(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kDecidedImprovable: return "DECIDED_IMPROVABLE";
    case VerdictStatus::kDecidedNonImprovable: return "DECIDED_NON_IMPROVABLE";
    case VerdictStatus::kEvidenceImprovable: return "EVIDENCE_IMPROVABLE";
    case VerdictStatus::kEvidenceNonImprovable:
      return "EVIDENCE_NON_IMPROVABLE";
  }
  return "?";
}

bool IsImprovable(VerdictStatus s) {
  return s == VerdictStatus::kDecidedImprovable ||
         s == VerdictStatus::kEvidenceImprovable;
}

bool IsDecided(VerdictStatus s) {
  return s == VerdictStatus::kDecidedImprovable ||
         s == VerdictStatus::kDecidedNonImprovable;
}

Verdict classify(const CFExpansion& x, const Regime& regime,
                 std::size_t horizon) {
  const std::vector<PatternSpec> specs = patterns_for(regime);
  Verdict v;
  if (x.IsRational()) {
    v = Decided(true, "rational numbers are improvable for every norm");
  } else {
    ScanReport report = scan(x, specs, horizon);
    const ConstructionClaim* claim = nullptr;
    for (const auto& c : x.claims()) {
      if (ClaimApplies(c, regime)) {
        claim = &c;
        break;
      }
    }
    if (x.kind() == CFExpansion::Kind::kPeriodic) {
      v = DecidePeriodic(x, regime);
    } else if (x.kind() == CFExpansion::Kind::kE) {
      v = DecideE(regime);
    } else if (claim != nullptr) {
      v = Decided(claim->improvable, "construction: " + claim->justification);
    } else {
      bool growing = false;
      std::string which;
      for (const auto& fam : report.families) {
        if (FamilyGrowing(fam, horizon)) {
          growing = true;
          which = fam.spec.clause;
          break;
        }
      }
      v.status = growing ? VerdictStatus::kEvidenceNonImprovable
                         : VerdictStatus::kEvidenceImprovable;
      v.justification =
          growing ? "records of the " + which +
                        " family still grow in the final quarter"
                  : "no pattern family has growing records in the final "
                    "quarter";
    }
    v.report = std::move(report);
  }
  v.regime = regime;
  v.patterns = specs;
  return v;
}

Verdict classify(const CFExpansion& x, double p, std::size_t horizon,
                 Precision prec) {
  return classify(x, regime_of(p, prec), horizon);
}

Verdict classify_e(double p) { return classify(CFExpansion::E(), p, 200); }

}  // namespace lpdi
