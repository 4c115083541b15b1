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

#include "lpdi/lp_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lpdi {

double norm_eval(double p, double x, double y) {
  if (p < 1) throw DomainError("norm needs p >= 1");
  const double ax = std::fabs(x), ay = std::fabs(y);
  const double hi = std::max(ax, ay), lo = std::min(ax, ay);
  if (std::isinf(p) || hi == 0) return hi;
  if (p == 1) return hi + lo;
  return hi * std::pow(1 + std::pow(lo / hi, p), 1 / p);
}

double sigma(double p) {
  if (!(p >= 1)) throw DomainError("sigma needs p >= 1");
  if (std::isinf(p)) throw DomainError("sigma is defined for finite p");
  double lo = 0, hi = 1;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g = std::pow(mid, p) + std::pow(1 + mid, p) - 2;
    if (g > 0) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::string FamilyName(LatticeFamily f) {
  switch (f) {
    case LatticeFamily::kL1: return "L1";
    case LatticeFamily::kL1Prime: return "L1PRIME";
    case LatticeFamily::kL2Plus: return "L2PLUS";
    case LatticeFamily::kL2Minus: return "L2MINUS";
    case LatticeFamily::kL3Plus: return "L3PLUS";
    case LatticeFamily::kL3Minus: return "L3MINUS";
    case LatticeFamily::kL4Plus: return "L4PLUS";
    case LatticeFamily::kL4Minus: return "L4MINUS";
    case LatticeFamily::kSquareRow: return "SQUARE_ROW";
    case LatticeFamily::kSquareColumn: return "SQUARE_COLUMN";
  }
  return "?";
}

std::vector<Vec2> CriticalLattice::BoundaryPoints() const {
  std::vector<Vec2> pts = {z1, z2};
  switch (family) {
    case LatticeFamily::kL1:
    case LatticeFamily::kSquareRow:
      pts.push_back(z2 - z1);
      break;
    case LatticeFamily::kSquareColumn:
      pts.push_back(z1 - z2);
      break;
    case LatticeFamily::kL3Plus:
    case LatticeFamily::kL3Minus:
      pts.push_back(z1 + z2);
      if (param && *param == 0) pts.push_back(2.0 * z2 + z1);
      break;
    default:
      pts.push_back(z1 + z2);
      break;
  }
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) pts.push_back(-1.0 * pts[i]);
  return pts;
}

CriticalLattice MakeL1(double p) {
  const double x0 = std::pow(1 - std::pow(2.0, -p), 1 / p);
  return {LatticeFamily::kL1, std::nullopt, p, {x0, -0.5}, {x0, 0.5}};
}

CriticalLattice MakeL1Prime(double p) {
  const double x0 = std::pow(1 - std::pow(2.0, -p), 1 / p);
  return {LatticeFamily::kL1Prime, std::nullopt, p, {0.5, -x0}, {0.5, x0}};
}

CriticalLattice MakeL2(double p, bool plus) {
  const double s = sigma(p);
  const double k = std::pow(2.0, -1 / p);
  const double sg = plus ? 1 : -1;
  return {plus ? LatticeFamily::kL2Plus : LatticeFamily::kL2Minus,
          std::nullopt, p,
          {k * s, -sg * k * (1 + s)},
          {k, sg * k}};
}

CriticalLattice MakeL3(double a, bool plus) {
  if (!(a >= 0 && a < 0.5)) throw DomainError("L3 parameter must be in [0,1/2)");
  const double sg = plus ? 1 : -1;
  return {plus ? LatticeFamily::kL3Plus : LatticeFamily::kL3Minus, a, 1.0,
          {a, sg * (a - 1)},
          {0.5, sg * 0.5}};
}

CriticalLattice MakeL4(double phi, bool plus) {
  if (!(phi >= 0 && phi <= kPi / 6 + 1e-15)) {
    throw DomainError("L4 parameter must be in [0,pi/6]");
  }
  const double sg = plus ? 1 : -1;
  return {plus ? LatticeFamily::kL4Plus : LatticeFamily::kL4Minus, phi, 2.0,
          {std::sin(phi), sg * std::cos(phi)},
          {std::cos(kPi / 6 + phi), -sg * std::sin(kPi / 6 + phi)}};
}

namespace {

CriticalLattice MakeSquare(double s, bool row) {
  if (row) {
    return {LatticeFamily::kSquareRow, s, kInf, {1, 0}, {s, 1}};
  }
  return {LatticeFamily::kSquareColumn, s, kInf, {1, s}, {0, 1}};
}

}  // namespace

CriticalLattice FamilyRange::At(double param) const {
  switch (family) {
    case LatticeFamily::kL3Plus: return MakeL3(param, true);
    case LatticeFamily::kL3Minus: return MakeL3(param, false);
    case LatticeFamily::kL4Plus: return MakeL4(param, true);
    case LatticeFamily::kL4Minus: return MakeL4(param, false);
    case LatticeFamily::kSquareRow: return MakeSquare(param, true);
    case LatticeFamily::kSquareColumn: return MakeSquare(param, false);
    default: break;
  }
  throw DomainError("family has no parameter");
}

std::vector<CriticalLattice> FamilyRange::Sample(std::size_t n) const {
  std::vector<CriticalLattice> out;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back(At(lo));
    return out;
  }
  const double steps = hi_closed ? static_cast<double>(n - 1)
                                 : static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    double t = lo + (hi - lo) * static_cast<double>(k) / steps;
    if (hi_closed && k + 1 == n) t = hi;
    out.push_back(At(t));
  }
  return out;
}

std::vector<CriticalLattice> Catalog::Expanded(std::size_t n) const {
  std::vector<CriticalLattice> out = lattices;
  for (const auto& f : families) {
    auto s = f.Sample(n);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

Catalog catalog(double p) {
  Catalog c;
  c.p = p;
  switch (RegimeTagOf(p)) {
    case RegimeTag::kPEq1:
      c.families = {{LatticeFamily::kL3Plus, 0, 0.5, false},
                    {LatticeFamily::kL3Minus, 0, 0.5, false}};
      break;
    case RegimeTag::kPEq2:
      c.families = {{LatticeFamily::kL4Plus, 0, kPi / 6, true},
                    {LatticeFamily::kL4Minus, 0, kPi / 6, true}};
      break;
    case RegimeTag::kOpen2P0:
      c.lattices = {MakeL1(p), MakeL1Prime(p)};
      break;
    case RegimeTag::kOpen12:
    case RegimeTag::kAboveP0:
      c.lattices = {MakeL2(p, true), MakeL2(p, false)};
      break;
    case RegimeTag::kPEqP0:
      c.lattices = {MakeL1(p), MakeL1Prime(p), MakeL2(p, true),
                    MakeL2(p, false)};
      break;
    case RegimeTag::kPEqInf:
      c.families = {{LatticeFamily::kSquareRow, 0, 1, false},
                    {LatticeFamily::kSquareColumn, 0, 1, false}};
      break;
  }
  return c;
}

double alpha_of(const Mat2& omega) {
  if (omega.d == 0) return kInf;
  return -omega.b / omega.d;
}

double alpha_star_of(const Mat2& omega) {
  if (omega.c == 0) return kInf;
  return omega.a / omega.c;
}

double beta_of(const Mat2& omega) { return 1 / (alpha_of(omega) - 1) - 1; }

double beta_star_of(const Mat2& omega) { return 1 / alpha_star_of(omega) - 1; }

double critical_determinant(double p) {
  switch (RegimeTagOf(p)) {
    case RegimeTag::kPEq1: return 0.5;
    case RegimeTag::kPEq2: return std::sqrt(3.0) / 2;
    case RegimeTag::kPEqInf: return 1.0;
    case RegimeTag::kOpen2P0:
      return std::pow(1 - std::pow(2.0, -p), 1 / p);
    case RegimeTag::kPEqP0:
    case RegimeTag::kOpen12:
    case RegimeTag::kAboveP0:
      return (1 + 2 * sigma(p)) / std::pow(2.0, 2 / p);
  }
  throw InternalError("unknown regime");
}

namespace {

// det L1 - det L2 at p.
template <class Real>
Real DetGap(const Real& p) {
  return OmegaOneEntry(p) - OmegaTwoDet(p, SigmaT(p));
}

template <class Real>
Real BisectP0(const Real& width) {
  Real lo = Real(2.5), hi = Real(2.7);
  if (!(DetGap(lo) < 0 && DetGap(hi) > 0)) {
    throw InternalError("p0 bracket does not change sign");
  }
  while (hi - lo > width) {
    const Real mid = (lo + hi) / 2;
    if (DetGap(mid) < 0) lo = mid; else hi = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

template <class Real>
Real PZeroT() {
  static const Real value =
      BisectP0(TwoPow<Real>(-static_cast<int>(TierBits<Real>()) + 6));
  return value;
}

template Float128 PZeroT<Float128>();
template Float256 PZeroT<Float256>();
template Float512 PZeroT<Float512>();

double p_zero(double tolerance, Precision prec) {
  if (!(tolerance >= 1e-12)) throw DomainError("p_zero tolerance below 1e-12");
  return WithPrecision(prec, [&]<class Real>() {
    return ToDouble(BisectP0(Real(tolerance)));
  });
}

double P0() {
  static const double value = ToDouble(PZeroT<Float128>());
  return value;
}

double h_inverse(double sigma_value) {
  const double s = sigma_value;
  auto f = [s](double p) { return std::pow(s, p) + std::pow(1 + s, p) - 2; };
  if (!(s > 0 && s <= 0.5) || f(1) > 0 || f(kPMax) < 0) {
    throw DomainError("sigma outside the range attained for p in [1, 100]");
  }
  double lo = 1, hi = kPMax;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::string RegimeName(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::kPEq1: return "P_EQ_1";
    case RegimeTag::kOpen12: return "OPEN_1_2";
    case RegimeTag::kPEq2: return "P_EQ_2";
    case RegimeTag::kOpen2P0: return "OPEN_2_P0";
    case RegimeTag::kPEqP0: return "P_EQ_P0";
    case RegimeTag::kAboveP0: return "ABOVE_P0";
    case RegimeTag::kPEqInf: return "P_EQ_INF";
  }
  return "?";
}

RegimeTag RegimeTagOf(double p) {
  if (std::isnan(p) || p < 1) throw DomainError("p must be in [1, inf]");
  if (std::isinf(p)) return RegimeTag::kPEqInf;
  if (std::fabs(p - 1) <= kRegimeTolerance) return RegimeTag::kPEq1;
  if (p < 2 - kRegimeTolerance) return RegimeTag::kOpen12;
  if (std::fabs(p - 2) <= kRegimeTolerance) return RegimeTag::kPEq2;
  const double p0 = P0();
  if (std::fabs(p - p0) <= kRegimeTolerance) return RegimeTag::kPEqP0;
  return p < p0 ? RegimeTag::kOpen2P0 : RegimeTag::kAboveP0;
}

CriticalConstants constants(double p) {
  CriticalConstants c;
  c.p = p;
  c.p0 = P0();
  c.sigma_p = std::isinf(p) ? std::nan("") : sigma(p);
  c.delta_p = critical_determinant(p);
  c.dirichlet_bound = 1 / std::sqrt(c.delta_p);
  return c;
}

}  // namespace lpdi
