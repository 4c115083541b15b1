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

// The diagonal flow on the lattices
//   L(t) = diag(1/t, t) [[1, 0], [-alpha, 1]] Z^2,
// whose vectors are (q/t, t(p - q alpha)) for integers (q, p), and the
// successive minima of L(t) for the L_p unit ball.

#ifndef LPDI_LATTICE_FLOW_HPP_
#define LPDI_LATTICE_FLOW_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpdi/cf_core.hpp"
#include "lpdi/lp_geometry.hpp"
#include "lpdi/real.hpp"

namespace lpdi {

// Integer coordinates on a basis; for flow lattices these are (q, p).
struct IntPair {
  std::int64_t q = 0;
  std::int64_t p = 0;

  bool operator==(const IntPair&) const = default;
};

template <class Real>
struct VecT {
  Real x;
  Real y;
};

template <class Real>
struct LatticeBasisT {
  VecT<Real> b1;
  VecT<Real> b2;
  std::optional<Real> alpha;
  std::optional<Real> t;

  Real Det() const { return b1.x * b2.y - b1.y * b2.x; }
};

using LatticeBasis = LatticeBasisT<double>;

template <class Real>
LatticeBasisT<Real> LatticeAtT(const Real& alpha, const Real& t);

LatticeBasis lattice_at(double alpha, double t);

inline LatticeBasis BasisFromMat(const Mat2& m) {
  return LatticeBasis{{m.a, m.b}, {m.c, m.d}, std::nullopt, std::nullopt};
}

template <class Real>
struct MinimaT {
  Real lambda1;
  Real lambda2;
  IntPair v1;
  IntPair v2;
};

struct MinimaSample {
  double t = 1;
  double lambda1 = 0;
  double lambda2 = 0;
  IntPair v1;
  IntPair v2;
};

// Exact successive minima; throws ResourceError when the enumeration box
// is too large.
template <class Real>
MinimaT<Real> SuccessiveMinimaT(double p, const LatticeBasisT<Real>& basis);

MinimaSample successive_minima(double p, const LatticeBasis& basis);

// Gauss-reduced basis (shortest vector first) in the Euclidean metric.
template <class Real>
LatticeBasisT<Real> GaussReduceT(const LatticeBasisT<Real>& basis,
                                 IntPair* c1 = nullptr, IntPair* c2 = nullptr);

// Distance from unimodular lattices to the critical locus of the L_p
// ball, rescaled to covolume 1.
class CriticalLocus {
 public:
  explicit CriticalLocus(double p, std::size_t grid = 100);
  double Distance(const Mat2& basis) const;
  double p() const { return p_; }

 private:
  double p_;
  std::vector<Mat2> reduced_;
};

double locus_distance(const Mat2& basis, double p);

struct FlowOptions {
  double grid_ratio = 1.02;
  double rel_tol = 1e-10;
  unsigned workers = 1;
  bool trace = false;
  bool locus = true;
  Precision precision;
  // A rational alpha is reported as degenerate once lambda1 drops below this.
  double rational_floor = 1e-6;
};

struct Crossing {
  double t = 0;
  double lambda1 = 0;
  double lambda2 = 0;
  IntPair v1;  // shortest before the crossing
  IntPair v2;  // shortest after it
  double locus_distance = 0;
};

struct TraceRow {
  double t = 0;
  double lambda1 = 0;
  double lambda2 = 0;
  bool is_crossing = false;
  double locus_distance = 0;
};

struct FlowEstimate {
  double p = 2;
  double t_max = 0;
  std::vector<Crossing> crossings;
  double d_estimate = 0;    // max lambda1 over the last half of crossings
  double d_global_max = 0;  // max lambda1 over all crossings
  double delta_estimate = 0;
  double delta_p = 0;
  double bound = 0;  // 1/sqrt(Delta_p)
  bool rational_degenerate = false;
  std::size_t grid_points = 0;
  unsigned precision_bits = 0;
  std::vector<TraceRow> trace;
};

FlowEstimate critical_times(const CFExpansion& x, double p, double t_max,
                            const FlowOptions& options = {});

struct BestApproxPoint {
  std::size_t nu = 0;
  BigInt q;
  BigInt p;
  double second = 0;  // p - q alpha
};

std::vector<BestApproxPoint> best_approx_points(const CFExpansion& x,
                                                std::size_t n,
                                                Precision prec = {});

struct RectangleCheck {
  bool closed_empty = true;    // no extra point in the closed rectangle
  bool interior_empty = true;  // no extra point in its interior
  std::vector<IntPair> interior_hits;
  std::vector<IntPair> boundary_hits;
};

// Lattice points (q, p) of L(1) with 0 <= q <= q'' and |p - q alpha| <=
// |p' - q' alpha|, other than 0, z' and z''.
RectangleCheck rectangle_check(const CFExpansion& x, IntPair z1, IntPair z2,
                               Precision prec = {});

bool rectangle_empty_check(const CFExpansion& x, IntPair z1, IntPair z2,
                           Precision prec = {});

}  // namespace lpdi

#endif  // LPDI_LATTICE_FLOW_HPP_
