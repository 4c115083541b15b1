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

// Continued fraction expansions, convergents, continuants, cylinders and
// the irrationality measure psi.
//
// Notation: x = [a0; a1, a2, ...], convergents p_v/q_v, complete quotients
// alpha_v = [a_v; a_{v+1}, ...] and reversed quotients
// alpha*_v = [0; a_v, ..., a_1] = q_{v-1}/q_v. Then
//   xi_v = |q_v x - p_v| = 1 / (q_v alpha_{v+1} + q_{v-1}).

#ifndef LPDI_CF_CORE_HPP_
#define LPDI_CF_CORE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpdi/errors.hpp"
#include "lpdi/real.hpp"

namespace lpdi {

using Digit = std::uint64_t;
using Word = std::vector<Digit>;

// A verdict attached to a stream by the code that built it.
struct ConstructionClaim {
  double p = 0;  // +inf for the sup-norm
  bool improvable = false;
  std::string justification;
};

class CFExpansion {
 public:
  enum class Kind { kFinite, kPeriodic, kE, kGenerated, kPrefix };
  // Digit i (1-based) of a generated stream.
  using Generator = std::function<Digit(std::size_t)>;

  // The integer 0.
  CFExpansion();

  // [a0; digits]; a trailing digit 1 is folded into its predecessor.
  static CFExpansion Finite(std::int64_t a0, Word digits);
  static CFExpansion Rational(const BigInt& num, const BigInt& den);
  static CFExpansion Periodic(std::int64_t a0, Word preperiod, Word period);
  static CFExpansion E();
  static CFExpansion Generated(std::int64_t a0, Generator gen,
                               std::string name);
  // Known prefix of an expansion that does not terminate there.
  static CFExpansion Prefix(std::int64_t a0, Word digits, std::string name);

  CFExpansion WithClaims(std::vector<ConstructionClaim> claims) const;

  Kind kind() const { return kind_; }
  std::int64_t a0() const { return a0_; }
  const std::string& name() const { return name_; }
  const std::vector<ConstructionClaim>& claims() const { return claims_; }
  bool IsRational() const { return kind_ == Kind::kFinite; }

  // Number of digits for finite words and prefixes, nothing otherwise.
  std::optional<std::size_t> Length() const;

  // Digit a_i for i >= 1.
  Digit DigitAt(std::size_t i) const;
  Word Digits(std::size_t n) const;

  // Finite words, prefixes and preperiods.
  const Word& word() const { return word_; }
  const Word& period() const { return period_; }

  // The other representation (..., a_n - 1, 1) of a finite word.
  Word AlternateWord() const;

 private:
  Kind kind_ = Kind::kFinite;
  std::int64_t a0_ = 0;
  Word word_;
  Word period_;
  Generator gen_;
  std::string name_;
  std::vector<ConstructionClaim> claims_;
};

struct Convergent {
  std::size_t index = 0;
  BigInt p;
  BigInt q;
};

// Convergents for v = 0..n.
std::vector<Convergent> convergents(const CFExpansion& x, std::size_t n);

BigInt continuant(const Word& word);

struct Cylinder {
  Word word;
  BigRational left;
  BigRational right;
  bool left_closed = true;
  bool right_closed = false;
  bool odd = false;

  BigRational Length() const { return right - left; }
  bool Contains(const BigRational& r) const;
  bool Contains(const Cylinder& inner) const;
};

// Numbers in (0,1) whose expansion starts with word.
Cylinder cylinder(const Word& word);

// Complete quotient alpha_k for k >= 1; +inf past the end of a finite word.
template <class Real>
Real TailValue(const CFExpansion& x, std::size_t k);

template <class Real>
Real Value(const CFExpansion& x);

template <class Real>
struct ApproxRecord {
  std::size_t nu = 0;
  Real xi;
  Real alpha;       // alpha_nu
  Real alpha_star;  // alpha*_nu
};

// Records for v = 1..n.
template <class Real>
std::vector<ApproxRecord<Real>> approx_records(const CFExpansion& x,
                                               std::size_t n);

// psi(t) = xi_v for the largest v with q_v <= t.
template <class Real>
Real PsiT(const CFExpansion& x, const Real& t);

double psi(const CFExpansion& x, double t, Precision prec = {});

struct HorizonExtremum {
  double running = 0;
  double tail = 0;
};

// Running and tail (v in [N/2, N]) sup of 1/(1 + alpha*_v / alpha_{v+1}).
HorizonExtremum dirichlet_constant_cf(const CFExpansion& x, std::size_t n,
                                      Precision prec = {});
// Running and tail inf of 1/(alpha_{v+1} + alpha*_v).
HorizonExtremum lagrange_constant_cf(const CFExpansion& x, std::size_t n,
                                     Precision prec = {});

// Agreement required between a tier and its guard tier.
double GuardTolerance();

// ---------------------------------------------------------------------------

namespace internal {

// Index j >= k such that [a_k; ..., a_j] determines alpha_k to about
// `bits` bits, or the last index of a finite word.
std::size_t TailDepth(const CFExpansion& x, std::size_t k, unsigned bits);

}  // namespace internal

template <class Real>
Real TailValue(const CFExpansion& x, std::size_t k) {
  if (k == 0) throw DomainError("complete quotients are indexed from 1");
  if (x.IsRational() && k > x.word().size()) return Infinity<Real>();
  const std::size_t end = internal::TailDepth(x, k, TierBits<Real>() + 16);
  Real v = Real(x.DigitAt(end));
  for (std::size_t i = end; i-- > k;) v = Real(x.DigitAt(i)) + 1 / v;
  return v;
}

template <class Real>
Real Value(const CFExpansion& x) {
  Real a0 = Real(x.a0());
  if (x.IsRational() && x.word().empty()) return a0;
  return a0 + 1 / TailValue<Real>(x, 1);
}

template <class Real>
std::vector<ApproxRecord<Real>> approx_records(const CFExpansion& x,
                                               std::size_t n) {
  const auto conv = convergents(x, n);
  std::vector<ApproxRecord<Real>> out;
  out.reserve(n);
  for (std::size_t v = 1; v <= n; ++v) {
    ApproxRecord<Real> r;
    r.nu = v;
    const Real q = FromBigInt<Real>(conv[v].q);
    const Real q_prev = v >= 2 ? FromBigInt<Real>(conv[v - 1].q) : Real(1);
    r.alpha = TailValue<Real>(x, v);
    r.alpha_star = q_prev / q;
    const Real next = TailValue<Real>(x, v + 1);
    r.xi = isinf(next) ? Real(0) : 1 / (q * next + q_prev);
    out.push_back(std::move(r));
  }
  return out;
}

template <class Real>
Real PsiT(const CFExpansion& x, const Real& t) {
  if (!(t >= 1)) throw DomainError("psi needs t >= 1");
  // Walk the denominators until q_{v+1} > t.
  BigInt q_prev = 0, q = 1;  // q_{-1}, q_0
  std::size_t v = 0;
  for (;;) {
    if (x.IsRational() && v == x.word().size()) return Real(0);
    const BigInt q_next = BigInt(x.DigitAt(v + 1)) * q + q_prev;
    if (FromBigInt<Real>(q_next) > t) break;
    q_prev = q;
    q = q_next;
    ++v;
  }
  const Real next = TailValue<Real>(x, v + 1);
  if (isinf(next)) return Real(0);
  return 1 / (FromBigInt<Real>(q) * next + FromBigInt<Real>(q_prev));
}

}  // namespace lpdi

#endif  // LPDI_CF_CORE_HPP_
