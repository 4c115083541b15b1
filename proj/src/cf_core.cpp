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

#include "lpdi/cf_core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace lpdi {

namespace {

void CheckDigits(const Word& w, const char* what) {
  for (Digit d : w) {
    if (d == 0) throw DomainError(std::string(what) + ": digits must be >= 1");
  }
}

// Guard tier used to confirm results computed at `prec`.
Precision GuardPrecision(Precision prec) {
  if (prec.bits <= kMaxPrecisionBits / 2) return prec.Doubled();
  return Precision{kMaxPrecisionBits / 2};
}

template <class Fn>
double Guarded(Precision prec, Fn&& fn) {
  const double a = WithPrecision(prec, fn);
  const double b = WithPrecision(GuardPrecision(prec), fn);
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  if (std::fabs(a - b) > GuardTolerance() * scale) {
    throw PrecisionError("results at two precisions disagree");
  }
  return a;
}

}  // namespace

CFExpansion::CFExpansion() = default;

CFExpansion CFExpansion::Finite(std::int64_t a0, Word digits) {
  CheckDigits(digits, "finite expansion");
  if (!digits.empty() && digits.back() == 1) {
    digits.pop_back();
    if (digits.empty()) {
      ++a0;
    } else {
      ++digits.back();
    }
  }
  CFExpansion x;
  x.kind_ = Kind::kFinite;
  x.a0_ = a0;
  x.word_ = std::move(digits);
  x.name_ = "finite";
  return x;
}

CFExpansion CFExpansion::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  BigInt n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  // Euclid with floor division so that a0 may be negative.
  BigInt a0 = n / d;
  if (n % d != 0 && n < 0) a0 -= 1;
  if (a0 > INT64_MAX || a0 < INT64_MIN) {
    throw DomainError("integer part out of range");
  }
  BigInt r = n - a0 * d;
  Word digits;
  BigInt hi = d, lo = r;
  while (lo != 0) {
    const BigInt a = hi / lo;
    if (a > UINT64_MAX) throw DomainError("partial quotient out of range");
    digits.push_back(a.convert_to<Digit>());
    BigInt next = hi - a * lo;
    hi = lo;
    lo = next;
  }
  return Finite(a0.convert_to<std::int64_t>(), std::move(digits));
}

CFExpansion CFExpansion::Periodic(std::int64_t a0, Word preperiod,
                                  Word period) {
  if (period.empty()) throw DomainError("period must be nonempty");
  CheckDigits(preperiod, "preperiod");
  CheckDigits(period, "period");
  CFExpansion x;
  x.kind_ = Kind::kPeriodic;
  x.a0_ = a0;
  x.word_ = std::move(preperiod);
  x.period_ = std::move(period);
  x.name_ = "periodic";
  return x;
}

CFExpansion CFExpansion::E() {
  CFExpansion x;
  x.kind_ = Kind::kE;
  x.a0_ = 2;
  x.name_ = "e";
  return x;
}

CFExpansion CFExpansion::Generated(std::int64_t a0, Generator gen,
                                   std::string name) {
  if (!gen) throw DomainError("generator is empty");
  CFExpansion x;
  x.kind_ = Kind::kGenerated;
  x.a0_ = a0;
  x.gen_ = std::move(gen);
  x.name_ = std::move(name);
  return x;
}

CFExpansion CFExpansion::Prefix(std::int64_t a0, Word digits,
                                std::string name) {
  CheckDigits(digits, "prefix");
  CFExpansion x;
  x.kind_ = Kind::kPrefix;
  x.a0_ = a0;
  x.word_ = std::move(digits);
  x.name_ = std::move(name);
  return x;
}

CFExpansion CFExpansion::WithClaims(
    std::vector<ConstructionClaim> claims) const {
  CFExpansion x = *this;
  x.claims_ = std::move(claims);
  return x;
}

std::optional<std::size_t> CFExpansion::Length() const {
  if (kind_ == Kind::kFinite || kind_ == Kind::kPrefix) return word_.size();
  return std::nullopt;
}

Digit CFExpansion::DigitAt(std::size_t i) const {
  if (i == 0) throw DomainError("digits are indexed from 1");
  switch (kind_) {
    case Kind::kFinite:
    case Kind::kPrefix:
      if (i > word_.size()) {
        throw TruncationError("digit index past the end of the expansion",
                              word_.size());
      }
      return word_[i - 1];
    case Kind::kPeriodic:
      if (i <= word_.size()) return word_[i - 1];
      return period_[(i - word_.size() - 1) % period_.size()];
    case Kind::kE:
      return i % 3 == 2 ? 2 * (i + 1) / 3 : 1;
    case Kind::kGenerated: {
      const Digit d = gen_(i);
      if (d == 0) throw DomainError("generator emitted digit 0");
      return d;
    }
  }
  throw InternalError("unknown expansion kind");
}

Word CFExpansion::Digits(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(DigitAt(i));
  return out;
}

Word CFExpansion::AlternateWord() const {
  if (kind_ != Kind::kFinite) {
    throw DomainError("only finite words have two representations");
  }
  Word w = word_;
  if (w.empty()) return Word{1};  // [a0] = [a0 - 1; 1]
  --w.back();
  w.push_back(1);
  return w;
}

std::vector<Convergent> convergents(const CFExpansion& x, std::size_t n) {
  if (n < 1) throw DomainError("convergents needs n >= 1");
  if (auto len = x.Length(); len && *len < n) {
    throw TruncationError("expansion shorter than requested", *len);
  }
  std::vector<Convergent> out;
  out.reserve(n + 1);
  BigInt p_prev = 1, q_prev = 0;
  BigInt p = x.a0(), q = 1;
  out.push_back({0, p, q});
  for (std::size_t v = 1; v <= n; ++v) {
    const BigInt a = x.DigitAt(v);
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    out.push_back({v, p, q});
  }
  return out;
}

BigInt continuant(const Word& word) {
  CheckDigits(word, "continuant");
  // Machine words while the values stay below 2^63.
  using U128 = unsigned __int128;
  constexpr U128 kSmall = U128{1} << 63;
  U128 prev128 = 0, cur128 = 1;
  std::size_t i = 0;
  for (; i < word.size() && cur128 < kSmall; ++i) {
    const U128 next = U128{word[i]} * cur128 + prev128;
    prev128 = cur128;
    cur128 = next;
  }
  auto big = [](U128 v) {
    return (BigInt(static_cast<std::uint64_t>(v >> 64)) << 64) +
           BigInt(static_cast<std::uint64_t>(v));
  };
  if (i == word.size()) return big(cur128);
  BigInt prev = big(prev128), cur = big(cur128);
  for (; i < word.size(); ++i) {
    BigInt next = BigInt(word[i]) * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Cylinder cylinder(const Word& word) {
  if (word.empty()) throw DomainError("cylinder needs a nonempty word");
  CheckDigits(word, "cylinder");
  BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;
  for (Digit d : word) {
    BigInt p_next = BigInt(d) * p + p_prev;
    BigInt q_next = BigInt(d) * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
  }
  Cylinder c;
  c.word = word;
  c.odd = word.size() % 2 == 1;
  const BigRational conv(p, q);
  const BigRational mediant(p + p_prev, q + q_prev);
  // The mediant never belongs to the cylinder. The convergent does unless
  // the word ends in 1, in which case its canonical expansion is shorter.
  const bool conv_in = word.back() >= 2;
  if (c.odd) {
    c.left = mediant;
    c.right = conv;
    c.left_closed = false;
    c.right_closed = conv_in;
  } else {
    c.left = conv;
    c.right = mediant;
    c.left_closed = conv_in;
    c.right_closed = false;
  }
  return c;
}

bool Cylinder::Contains(const BigRational& r) const {
  const bool above = left_closed ? r >= left : r > left;
  const bool below = right_closed ? r <= right : r < right;
  return above && below;
}

bool Cylinder::Contains(const Cylinder& inner) const {
  const bool l = inner.left > left ||
                 (inner.left == left && (left_closed || !inner.left_closed));
  const bool r = inner.right < right ||
                 (inner.right == right &&
                  (right_closed || !inner.right_closed));
  return l && r;
}

double GuardTolerance() { return 1e-15; }

double psi(const CFExpansion& x, double t, Precision prec) {
  return Guarded(prec, [&]<class Real>() {
    return ToDouble(PsiT<Real>(x, Real(t)));
  });
}

namespace {

template <class Real>
std::pair<Real, Real> TailPair(const CFExpansion& x, std::size_t v,
                               const BigInt& q, const BigInt& q_prev) {
  return {TailValue<Real>(x, v + 1),
          FromBigInt<Real>(q_prev) / FromBigInt<Real>(q)};
}

template <class Fn>
HorizonExtremum Extremum(const CFExpansion& x, std::size_t n, Precision prec,
                         bool sup, Fn&& value) {
  if (n < 8) throw DomainError("horizon must be at least 8");
  if (auto len = x.Length(); len && *len < n + 1) {
    throw TruncationError("expansion shorter than the horizon", *len);
  }
  const auto conv = convergents(x, n);
  const std::size_t tail_start = (n + 1) / 2;
  auto run = [&]<class Real>() {
    std::vector<double> vals;
    for (std::size_t v = 1; v <= n; ++v) {
      auto [next, star] = TailPair<Real>(x, v, conv[v].q, conv[v - 1].q);
      vals.push_back(ToDouble(value(next, star)));
    }
    return vals;
  };
  auto pick = [&](const std::vector<double>& vals, std::size_t from) {
    double best = vals[from - 1];
    for (std::size_t v = from; v <= n; ++v) {
      best = sup ? std::max(best, vals[v - 1]) : std::min(best, vals[v - 1]);
    }
    return best;
  };
  HorizonExtremum out;
  out.running = Guarded(prec, [&]<class Real>() {
    return pick(run.template operator()<Real>(), 1);
  });
  out.tail = Guarded(prec, [&]<class Real>() {
    return pick(run.template operator()<Real>(), tail_start);
  });
  return out;
}

}  // namespace

HorizonExtremum dirichlet_constant_cf(const CFExpansion& x, std::size_t n,
                                      Precision prec) {
  return Extremum(x, n, prec, true, [](const auto& next, const auto& star) {
    using Real = std::decay_t<decltype(next)>;
    if (isinf(next)) return Real(1);
    return Real(1 / (1 + star / next));
  });
}

HorizonExtremum lagrange_constant_cf(const CFExpansion& x, std::size_t n,
                                     Precision prec) {
  return Extremum(x, n, prec, false, [](const auto& next, const auto& star) {
    using Real = std::decay_t<decltype(next)>;
    if (isinf(next)) return Real(0);
    return Real(1 / (next + star));
  });
}

namespace internal {

std::size_t TailDepth(const CFExpansion& x, std::size_t k, unsigned bits) {
  if (x.IsRational()) return x.word().size();
  // log2 of the continuant of a_{k+1}..a_j, kept in rescaled doubles.
  double prev = 0, cur = 1, log2_scale = 0;
  std::size_t j = k;
  for (;;) {
    if (auto len = x.Length(); len && j + 1 > *len) {
      throw TruncationError("prefix too short to evaluate a tail", *len);
    }
    const double a = static_cast<double>(x.DigitAt(j + 1));
    const double next = a * cur + prev;
    prev = cur;
    cur = next;
    ++j;
    if (cur > 1e150) {
      cur *= 1e-150;
      prev *= 1e-150;
      log2_scale += 150 * std::log2(10.0);
    }
    if (2 * (std::log2(cur) + log2_scale) > bits) return j;
  }
}

}  // namespace internal

}  // namespace lpdi
