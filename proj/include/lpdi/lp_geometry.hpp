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

// L_p norms in the plane and their critical lattices.
//
// sigma_p is the root in (0,1) of s^p + (1+s)^p = 2. The critical
// determinant is
//   (1 - 2^-p)^(1/p)            for 2 < p < p0,
//   (1 + 2 sigma_p) / 2^(2/p)   for 1 < p < 2 and p > p0,
// with Delta_1 = 1/2, Delta_2 = sqrt(3)/2 and Delta_inf = 1.

#ifndef LPDI_LP_GEOMETRY_HPP_
#define LPDI_LP_GEOMETRY_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lpdi/errors.hpp"
#include "lpdi/real.hpp"

namespace lpdi {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
// Upper end of the p range searched by h_inverse.
constexpr double kPMax = 100.0;

struct Vec2 {
  double x = 0;
  double y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

// Columns (a, b) and (c, d), i.e. the matrix [[a, c], [b, d]].
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  Vec2 col1() const { return {a, b}; }
  Vec2 col2() const { return {c, d}; }
  double det() const { return a * d - b * c; }
  static Mat2 FromColumns(Vec2 u, Vec2 v) { return {u.x, u.y, v.x, v.y}; }
};

double norm_eval(double p, double x, double y);
inline double norm_eval(double p, Vec2 v) { return norm_eval(p, v.x, v.y); }

template <class Real>
Real NormT(double p, const Real& x, const Real& y) {
  using std::abs;
  using std::pow;
  const Real ax = abs(x), ay = abs(y);
  const Real hi = ax > ay ? ax : ay;
  if (std::isinf(p)) return hi;
  if (hi == 0) return hi;
  const Real lo = ax > ay ? ay : ax;
  if (p == 1) return hi + lo;
  return hi * pow(1 + pow(lo / hi, Real(p)), Real(1) / Real(p));
}

// s^p + (1+s)^p - 2.
template <class Real>
Real SigmaResidual(const Real& s, const Real& p) {
  return pow(s, p) + pow(1 + s, p) - 2;
}

double sigma(double p);

// sigma_p to the full precision of Real: bisection in double, then
// safeguarded Newton steps.
template <class Real>
Real SigmaT(const Real& p) {
  if (p < 1) throw DomainError("sigma needs p >= 1");
  const double seed = sigma(ToDouble(p));
  Real lo = Real(seed) - Real(1e-12), hi = Real(seed) + Real(1e-12);
  if (lo < 0) lo = 0;
  Real s = Real(seed);
  const Real eps = TwoPow<Real>(-static_cast<int>(TierBits<Real>()) + 4);
  for (int it = 0; it < 200; ++it) {
    const Real g = SigmaResidual(s, p);
    if (g > 0) hi = s; else lo = s;
    const Real dg = p * (pow(s, p - 1) + pow(1 + s, p - 1));
    Real next = s - g / dg;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    if (abs(next - s) <= eps) return next;
    s = next;
  }
  throw InternalError("sigma refinement did not converge");
}

// (1 - 2^-p)^(1/p), the first coordinate of the marked points of L1.
template <class Real>
Real OmegaOneEntry(const Real& p) {
  return pow(1 - pow(Real(2), -p), 1 / p);
}

// |det| of the L2 lattices: (1 + 2 sigma_p) / 2^(2/p).
template <class Real>
Real OmegaTwoDet(const Real& p, const Real& s) {
  return (1 + 2 * s) / pow(Real(2), 2 / p);
}

enum class LatticeFamily {
  kL1,
  kL1Prime,
  kL2Plus,
  kL2Minus,
  kL3Plus,
  kL3Minus,
  kL4Plus,
  kL4Minus,
  kSquareRow,     // sup-norm lattices with basis (1, 0), (s, 1)
  kSquareColumn,  // sup-norm lattices with basis (1, s), (0, 1)
};

std::string FamilyName(LatticeFamily f);

struct CriticalLattice {
  LatticeFamily family = LatticeFamily::kL1;
  std::optional<double> param;
  double p = 2;
  Vec2 z1;  // z'
  Vec2 z2;  // z''

  Mat2 omega() const { return Mat2::FromColumns(z1, z2); }
  double det() const { return omega().det(); }
  // All documented points of the unit sphere, in +/- pairs.
  std::vector<Vec2> BoundaryPoints() const;
};

CriticalLattice MakeL1(double p);
CriticalLattice MakeL1Prime(double p);
CriticalLattice MakeL2(double p, bool plus);
CriticalLattice MakeL3(double a, bool plus);
CriticalLattice MakeL4(double phi, bool plus);

struct FamilyRange {
  LatticeFamily family;
  double lo = 0;
  double hi = 0;
  bool hi_closed = false;

  CriticalLattice At(double param) const;
  // n evenly spaced parameters over the range (open ends excluded).
  std::vector<CriticalLattice> Sample(std::size_t n) const;
};

struct Catalog {
  double p = 2;
  std::vector<CriticalLattice> lattices;
  std::vector<FamilyRange> families;

  // Fixed lattices plus n samples from each family.
  std::vector<CriticalLattice> Expanded(std::size_t n) const;
};

Catalog catalog(double p);

// alpha(omega) = -b/d and alpha*(omega) = a/c; zero denominators give +inf.
double alpha_of(const Mat2& omega);
double alpha_star_of(const Mat2& omega);
// beta = 1/(alpha - 1) - 1 and beta* = 1/alpha* - 1; on the L4 lattices
// their product is 3.
double beta_of(const Mat2& omega);
double beta_star_of(const Mat2& omega);

double critical_determinant(double p);

// Root of det L1 = det L2 in (2.5, 2.7) by bisection.
double p_zero(double tolerance = 1e-12, Precision prec = {});

// p0 to the full precision of Real.
template <class Real>
Real PZeroT();

// The cached double value of p0.
double P0();

double h_inverse(double sigma_value);

enum class RegimeTag {
  kPEq1,
  kOpen12,
  kPEq2,
  kOpen2P0,
  kPEqP0,
  kAboveP0,
  kPEqInf,
};

std::string RegimeName(RegimeTag tag);
// Distance below which p is treated as one of 1, 2, p0.
constexpr double kRegimeTolerance = 1e-9;
RegimeTag RegimeTagOf(double p);

struct CriticalConstants {
  double p = 2;
  double sigma_p = 0;
  double p0 = 0;
  double delta_p = 0;
  double dirichlet_bound = 0;
};

CriticalConstants constants(double p);

}  // namespace lpdi

#endif  // LPDI_LP_GEOMETRY_HPP_
