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

// Multiprecision number types.
//
// Reals use MPFR with a compile-time precision so that no global default
// precision is touched; that keeps every value safe to use from several
// threads. Three tiers are provided and a runtime bit count is mapped to
// the smallest tier that covers it.

#ifndef LPDI_REAL_HPP_
#define LPDI_REAL_HPP_

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "lpdi/errors.hpp"

namespace lpdi {

namespace mp = boost::multiprecision;

using BigInt = mp::mpz_int;
using BigRational = mp::mpq_rational;

using Float128 = mp::number<mp::mpfr_float_backend<40>, mp::et_off>;
using Float256 = mp::number<mp::mpfr_float_backend<78>, mp::et_off>;
using Float512 = mp::number<mp::mpfr_float_backend<155>, mp::et_off>;

template <class Real>
constexpr unsigned TierBits() {
  return static_cast<unsigned>(std::numeric_limits<Real>::digits);
}

struct Precision {
  unsigned bits = 128;

  Precision Doubled() const { return Precision{bits * 2}; }
};

constexpr unsigned kMaxPrecisionBits = 512;

// Calls fn.template operator()<Real>() for the tier covering prec.bits.
template <class Fn>
decltype(auto) WithPrecision(Precision prec, Fn&& fn) {
  if (prec.bits <= 128) return fn.template operator()<Float128>();
  if (prec.bits <= 256) return fn.template operator()<Float256>();
  if (prec.bits <= kMaxPrecisionBits) return fn.template operator()<Float512>();
  throw DomainError("precision above " + std::to_string(kMaxPrecisionBits) +
                    " bits is not supported");
}

template <class Real>
Real Infinity() {
  return std::numeric_limits<Real>::infinity();
}

template <class Real>
double ToDouble(const Real& x) {
  return x.template convert_to<double>();
}

inline double ToDouble(double x) { return x; }

inline double ToDouble(const BigInt& x) { return x.convert_to<double>(); }

inline double ToDouble(const BigRational& x) { return x.convert_to<double>(); }

template <class Real>
Real FromBigInt(const BigInt& x) {
  return Real(x);
}

template <class Real>
Real FromRational(const BigRational& x) {
  return Real(mp::numerator(x)) / Real(mp::denominator(x));
}

// 2^e in the given type.
template <class Real>
Real TwoPow(int e) {
  return ldexp(Real(1), e);
}

}  // namespace lpdi

#endif  // LPDI_REAL_HPP_
