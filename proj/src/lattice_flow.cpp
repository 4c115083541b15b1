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

#include "lpdi/lattice_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>
#include <type_traits>
#include <utility>

namespace lpdi {

namespace {

constexpr double kMaxRows = 1e6;
constexpr std::int64_t kDirectRowWidth = 64;

std::int64_t Checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw ResourceError("lattice coordinates overflow 64 bits",
                        static_cast<double>(v));
  }
  return static_cast<std::int64_t>(v);
}

IntPair Combine(std::int64_t m, const IntPair& a, std::int64_t n,
                const IntPair& b) {
  return {Checked(static_cast<__int128>(m) * a.q +
                  static_cast<__int128>(n) * b.q),
          Checked(static_cast<__int128>(m) * a.p +
                  static_cast<__int128>(n) * b.p)};
}

IntPair Normalized(IntPair c) {
  if (c.q < 0 || (c.q == 0 && c.p < 0)) return {-c.q, -c.p};
  return c;
}

bool Independent(const IntPair& a, const IntPair& b) {
  return static_cast<__int128>(a.q) * b.p != static_cast<__int128>(a.p) * b.q;
}

bool Before(const IntPair& a, const IntPair& b) {
  const auto aq = a.q < 0 ? -a.q : a.q, bq = b.q < 0 ? -b.q : b.q;
  if (aq != bq) return aq < bq;
  return a.p < b.p;
}

template <class Real>
std::int64_t RoundToInt(const Real& x) {
  using std::round;
  const Real r = round(x);
  if (!(r < 9.2e18 && r > -9.2e18)) {
    throw ResourceError("rounding outside the 64-bit range", ToDouble(r));
  }
  if constexpr (std::is_same_v<Real, double>) {
    return static_cast<std::int64_t>(r);
  } else {
    return r.template convert_to<long long>();
  }
}

template <class Real>
std::int64_t FloorToInt(const Real& x) {
  using std::floor;
  return RoundToInt(Real(floor(x)));
}

template <class Real>
std::int64_t CeilToInt(const Real& x) {
  using std::ceil;
  return RoundToInt(Real(ceil(x)));
}

template <class Real>
Real Dot(const VecT<Real>& a, const VecT<Real>& b) {
  return a.x * b.x + a.y * b.y;
}

// The lattice vector with coordinates c. Flow lattices are evaluated in
// the (q/t, t(p - q alpha)) form, which loses fewer bits.
template <class Real>
VecT<Real> VectorOf(const LatticeBasisT<Real>& b, const IntPair& c) {
  const Real q = Real(c.q), p = Real(c.p);
  if (b.alpha && b.t) {
    return {q / *b.t, *b.t * (p - q * *b.alpha)};
  }
  return {q * b.b1.x + p * b.b2.x, q * b.b1.y + p * b.b2.y};
}

template <class Real>
struct Reduced {
  IntPair cu, cv;
  VecT<Real> u, v;
};

template <class Real>
Reduced<Real> Reduce(const LatticeBasisT<Real>& b) {
  using std::abs;
  Reduced<Real> r{{1, 0}, {0, 1}, VectorOf(b, IntPair{1, 0}),
                  VectorOf(b, IntPair{0, 1})};
  for (int it = 0; it < 100000; ++it) {
    if (Dot(r.v, r.v) < Dot(r.u, r.u)) {
      std::swap(r.u, r.v);
      std::swap(r.cu, r.cv);
    }
    const Real uu = Dot(r.u, r.u);
    if (uu == 0) throw DomainError("degenerate lattice basis");
    const Real mu = Dot(r.u, r.v) / uu;
    // Ties between equally short vectors are settled by the tolerance.
    if (2 * abs(mu) <= 1 + 64 * std::numeric_limits<Real>::epsilon()) {
      return r;
    }
    const std::int64_t k = RoundToInt(mu);
    r.cv = Combine(1, r.cv, -k, r.cu);
    r.v = VectorOf(b, r.cv);
  }
  throw InternalError("Gauss reduction did not terminate");
}

template <class Real>
struct Candidate {
  IntPair c;
  Real norm;
};

}  // namespace

template <class Real>
LatticeBasisT<Real> LatticeAtT(const Real& alpha, const Real& t) {
  if (!(t >= 1)) throw DomainError("lattice_at needs t >= 1");
  LatticeBasisT<Real> b;
  b.b1 = {1 / t, -t * alpha};
  b.b2 = {Real(0), t};
  b.alpha = alpha;
  b.t = t;
  return b;
}

LatticeBasis lattice_at(double alpha, double t) {
  return LatticeAtT<double>(alpha, t);
}

template <class Real>
LatticeBasisT<Real> GaussReduceT(const LatticeBasisT<Real>& basis,
                                 IntPair* c1, IntPair* c2) {
  const Reduced<Real> r = Reduce(basis);
  if (c1) *c1 = r.cu;
  if (c2) *c2 = r.cv;
  LatticeBasisT<Real> out;
  out.b1 = r.u;
  out.b2 = r.v;
  return out;
}

template <class Real>
MinimaT<Real> SuccessiveMinimaT(double p, const LatticeBasisT<Real>& basis) {
  using std::sqrt;
  const Reduced<Real> r = Reduce(basis);
  auto norm_of = [&](const IntPair& c) {
    const VecT<Real> w = VectorOf(basis, c);
    return NormT(p, w.x, w.y);
  };
  const Real nu = norm_of(r.cu), nv = norm_of(r.cv);
  const Real bound = nu > nv ? nu : nv;
  // Every vector of L_p norm <= bound has Euclidean norm <= sqrt(2) bound.
  const Real radius = sqrt(Real(2)) * bound * (1 + Real(1e-12));
  const Real uu = Dot(r.u, r.u);
  const Real mu = Dot(r.u, r.v) / uu;
  const VecT<Real> vstar{r.v.x - mu * r.u.x, r.v.y - mu * r.u.y};
  const Real rows = radius / sqrt(Dot(vstar, vstar));
  if (!(rows < kMaxRows)) {
    throw ResourceError("enumeration needs too many rows", ToDouble(rows));
  }
  const std::int64_t n_max = FloorToInt(rows);
  const Real half = radius / sqrt(uu);

  std::vector<Candidate<Real>> cands;
  auto add = [&](std::int64_t m, std::int64_t n) {
    if (m == 0 && n == 0) return;
    const IntPair c = Combine(m, r.cu, n, r.cv);
    cands.push_back({Normalized(c), norm_of(c)});
  };
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    const Real center = -Real(n) * mu;
    std::int64_t lo = CeilToInt(Real(center - half));
    std::int64_t hi = FloorToInt(Real(center + half));
    if (n == 0) lo = 1;  // the row through 0: only +u, +2u, ...
    if (n < 0) continue;  // rows -n hold the negatives of rows n
    if (lo > hi) continue;
    if (hi - lo <= kDirectRowWidth) {
      for (std::int64_t m = lo; m <= hi; ++m) add(m, n);
      continue;
    }
    // The norm is convex along the row: ternary search, then keep the
    // minimizer and its two neighbours.
    auto f = [&](std::int64_t m) { return norm_of(Combine(m, r.cu, n, r.cv)); };
    std::int64_t a = lo, b = hi;
    while (b - a > 2) {
      const std::int64_t m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
      const Real f1 = f(m1), f2 = f(m2);
      if (f1 < f2) {
        b = m2 - 1;
      } else if (f2 < f1) {
        a = m1 + 1;
      } else {
        a = m1;
        b = m2;
      }
    }
    std::int64_t best = a;
    for (std::int64_t m = a + 1; m <= b; ++m) {
      if (f(m) < f(best)) best = m;
    }
    for (std::int64_t m = std::max(lo, best - 1); m <= std::min(hi, best + 1);
         ++m) {
      add(m, n);
    }
  }
  if (cands.empty()) throw InternalError("minima enumeration found nothing");
  auto better = [](const Candidate<Real>& x, const Candidate<Real>& y) {
    if (x.norm != y.norm) return x.norm < y.norm;
    return Before(x.c, y.c);
  };
  const Candidate<Real>* first = &cands[0];
  for (const auto& c : cands) {
    if (better(c, *first)) first = &c;
  }
  const Candidate<Real>* second = nullptr;
  for (const auto& c : cands) {
    if (!Independent(c.c, first->c)) continue;
    if (second == nullptr || better(c, *second)) second = &c;
  }
  if (second == nullptr) throw InternalError("no independent second minimum");
  return {first->norm, second->norm, first->c, second->c};
}

MinimaSample successive_minima(double p, const LatticeBasis& basis) {
  if (p < 1) throw DomainError("p must be in [1, inf]");
  const auto m = SuccessiveMinimaT<double>(p, basis);
  MinimaSample s;
  s.t = basis.t.value_or(1.0);
  s.lambda1 = m.lambda1;
  s.lambda2 = m.lambda2;
  s.v1 = m.v1;
  s.v2 = m.v2;
  return s;
}

template LatticeBasisT<double> GaussReduceT(const LatticeBasisT<double>&,
                                            IntPair*, IntPair*);

// ---------------------------------------------------------------------------
// Critical locus

namespace {

Mat2 ToMat(const LatticeBasisT<double>& b) {
  return {b.b1.x, b.b1.y, b.b2.x, b.b2.y};
}

Mat2 ReducedMat(const Mat2& m) {
  return ToMat(GaussReduceT(BasisFromMat(m)));
}

double MaxEntryDistance(const Mat2& x, const Mat2& y) {
  return std::max({std::fabs(x.a - y.a), std::fabs(x.b - y.b),
                   std::fabs(x.c - y.c), std::fabs(x.d - y.d)});
}

// Bases of the same lattice near a reduced one: the basis itself and the
// four one-step neighbours, each under column swap and sign changes.
std::vector<Mat2> Representatives(const Mat2& m) {
  const Vec2 u = m.col1(), v = m.col2();
  const std::pair<Vec2, Vec2> base[] = {
      {u, v}, {u, v + u}, {u, v - u}, {u + v, v}, {u - v, v}};
  std::vector<Mat2> out;
  for (const auto& [x, y] : base) {
    for (int su : {1, -1}) {
      for (int sv : {1, -1}) {
        const Vec2 a = static_cast<double>(su) * x;
        const Vec2 b = static_cast<double>(sv) * y;
        out.push_back(Mat2::FromColumns(a, b));
        out.push_back(Mat2::FromColumns(b, a));
      }
    }
  }
  return out;
}

}  // namespace

CriticalLocus::CriticalLocus(double p, std::size_t grid) : p_(p) {
  for (const auto& lat : catalog(p).Expanded(grid)) {
    const Mat2 om = lat.omega();
    const double s = 1 / std::sqrt(std::fabs(om.det()));
    reduced_.push_back(ReducedMat({s * om.a, s * om.b, s * om.c, s * om.d}));
  }
}

double CriticalLocus::Distance(const Mat2& basis) const {
  double best = kInf;
  for (const Mat2& cand : Representatives(ReducedMat(basis))) {
    for (const Mat2& r : reduced_) {
      best = std::min(best, MaxEntryDistance(cand, r));
    }
  }
  return best;
}

double locus_distance(const Mat2& basis, double p) {
  return CriticalLocus(p).Distance(basis);
}

// ---------------------------------------------------------------------------
// Flow

namespace {

template <class Real>
struct Flow {
  double p;
  Real alpha;
  const FlowOptions* options;

  Real NormAt(const IntPair& c, const Real& t) const {
    const Real q = Real(c.q);
    return NormT(p, Real(q / t), Real(t * (Real(c.p) - q * alpha)));
  }

  MinimaT<Real> MinimaAt(const Real& t) const {
    return SuccessiveMinimaT(p, LatticeAtT(alpha, t));
  }

  Mat2 ReducedAt(const Real& t) const {
    const LatticeBasisT<Real> r = GaussReduceT(LatticeAtT(alpha, t));
    return {ToDouble(r.b1.x), ToDouble(r.b1.y), ToDouble(r.b2.x),
            ToDouble(r.b2.y)};
  }

  // Crossings between lo (where a is shortest) and hi (where b is).
  void Refine(const Real& lo0, const IntPair& a, const Real& hi0,
              const IntPair& b, int depth, std::vector<Crossing>* out) const {
    Real lo = lo0, hi = hi0;
    const Real tol = Real(options->rel_tol);
    while (hi - lo > tol * hi) {
      const Real mid = (lo + hi) / 2;
      if (NormAt(a, mid) - NormAt(b, mid) <= 0) lo = mid; else hi = mid;
    }
    const Real t = (lo + hi) / 2;
    const MinimaT<Real> m = MinimaAt(t);
    const Real na = NormAt(a, t), nb = NormAt(b, t);
    const Real ab = na < nb ? na : nb;
    if (depth < 64 && m.v1 != a && m.v1 != b &&
        m.lambda1 < ab * (1 - Real(1e-9))) {
      // A third vector is shorter here: split at t.
      Refine(lo0, a, t, m.v1, depth + 1, out);
      Refine(t, m.v1, hi0, b, depth + 1, out);
      return;
    }
    Crossing c;
    c.t = ToDouble(t);
    c.lambda1 = ToDouble(m.lambda1);
    c.lambda2 = ToDouble(m.lambda2);
    c.v1 = a;
    c.v2 = b;
    out->push_back(c);
  }
};

template <class Fn>
void ParallelChunks(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, 64));
  if (workers == 1 || n < 2 * workers) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, w, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <class Real>
FlowEstimate RunFlow(const CFExpansion& x, double p, double t_max,
                     const FlowOptions& options) {
  using std::log;
  using std::pow;
  Flow<Real> flow{p, Value<Real>(x), &options};
  const Real ratio = Real(options.grid_ratio);
  const std::size_t k_max = static_cast<std::size_t>(
      std::ceil(std::log(t_max) / std::log(options.grid_ratio)));
  std::vector<Real> ts(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) ts[k] = pow(ratio, Real(k));
  ts[k_max] = Real(t_max);

  std::vector<MinimaT<Real>> samples(ts.size());
  ParallelChunks(ts.size(), options.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) samples[k] = flow.MinimaAt(ts[k]);
  });

  FlowEstimate est;
  est.p = p;
  est.t_max = t_max;
  est.delta_p = critical_determinant(p);
  est.bound = 1 / std::sqrt(est.delta_p);
  est.precision_bits = TierBits<Real>();
  std::size_t used = ts.size();
  if (x.IsRational()) {
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (samples[k].lambda1 < Real(options.rational_floor)) {
        used = k + 1;
        break;
      }
    }
    est.rational_degenerate = true;
  }
  est.grid_points = used;

  std::mutex merge;
  ParallelChunks(used - 1, options.workers, [&](std::size_t lo, std::size_t hi) {
    std::vector<Crossing> local;
    for (std::size_t k = lo; k < hi; ++k) {
      if (samples[k].v1 != samples[k + 1].v1) {
        flow.Refine(ts[k], samples[k].v1, ts[k + 1], samples[k + 1].v1, 0,
                    &local);
      }
    }
    std::lock_guard<std::mutex> lock(merge);
    est.crossings.insert(est.crossings.end(), local.begin(), local.end());
  });
  std::sort(est.crossings.begin(), est.crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.t < b.t; });

  std::unique_ptr<CriticalLocus> locus;
  if (options.locus || options.trace) {
    locus = std::make_unique<CriticalLocus>(p);
  }
  if (options.locus) {
    for (auto& c : est.crossings) {
      c.locus_distance = locus->Distance(flow.ReducedAt(Real(c.t)));
    }
  }
  if (options.trace) {
    for (std::size_t k = 0; k < used; ++k) {
      est.trace.push_back({ToDouble(ts[k]), ToDouble(samples[k].lambda1),
                           ToDouble(samples[k].lambda2), false,
                           locus->Distance(flow.ReducedAt(ts[k]))});
    }
    for (const auto& c : est.crossings) {
      est.trace.push_back({c.t, c.lambda1, c.lambda2, true, c.locus_distance});
    }
    std::stable_sort(est.trace.begin(), est.trace.end(),
                     [](const TraceRow& a, const TraceRow& b) {
                       return a.t < b.t;
                     });
  }

  if (est.rational_degenerate) {
    est.d_estimate = 0;
    est.d_global_max = 0;
    for (const auto& c : est.crossings) {
      est.d_global_max = std::max(est.d_global_max, c.lambda1);
    }
    est.delta_estimate = 0;
    return est;
  }
  const std::size_t n = est.crossings.size();
  if (n < 4) {
    throw HorizonError("fewer than 4 crossings up to t_max (found " +
                       std::to_string(n) + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double l = est.crossings[i].lambda1;
    est.d_global_max = std::max(est.d_global_max, l);
    if (i >= n / 2) est.d_estimate = std::max(est.d_estimate, l);
  }
  est.delta_estimate = est.delta_p * est.d_estimate * est.d_estimate;
  return est;
}

}  // namespace

FlowEstimate critical_times(const CFExpansion& x, double p, double t_max,
                            const FlowOptions& options) {
  if (p < 1) throw DomainError("p must be in [1, inf]");
  if (!(t_max >= 4)) throw DomainError("t_max must be at least 4");
  if (!(options.grid_ratio > 1 && options.grid_ratio <= 1.02)) {
    throw DomainError("grid ratio must be in (1, 1.02]");
  }
  // Evaluating t (p - q alpha) with q up to t loses about 2 log2 t bits.
  const unsigned needed =
      static_cast<unsigned>(2 * std::log2(t_max)) + 64;
  Precision prec{std::max(options.precision.bits, needed)};
  FlowEstimate est = WithPrecision(prec, [&]<class Real>() {
    return RunFlow<Real>(x, p, t_max, options);
  });
  return est;
}

std::vector<BestApproxPoint> best_approx_points(const CFExpansion& x,
                                                std::size_t n,
                                                Precision prec) {
  if (n < 1) throw DomainError("best_approx_points needs n >= 1");
  const auto conv = convergents(x, n);
  return WithPrecision(prec, [&]<class Real>() {
    const Real alpha = Value<Real>(x);
    std::vector<BestApproxPoint> out;
    for (std::size_t v = 1; v <= n; ++v) {
      const Real second =
          FromBigInt<Real>(conv[v].p) - FromBigInt<Real>(conv[v].q) * alpha;
      out.push_back({v, conv[v].q, conv[v].p, ToDouble(second)});
    }
    return out;
  });
}

namespace {

// Hits for one choice of number type: BigRational for rational alpha.
template <class Num, class Alpha>
RectangleCheck Rectangle(const Alpha& alpha, IntPair z1, IntPair z2) {
  auto second = [&](std::int64_t q, std::int64_t p) -> Num {
    return Num(p) - Num(q) * alpha;
  };
  auto magnitude = [](const Num& v) -> Num { return v < 0 ? Num(-v) : v; };
  const Num y1 = magnitude(second(z1.q, z1.p));
  const Num y2 = magnitude(second(z2.q, z2.p));
  if (!(z1.q > 0 && z1.q < z2.q && y2 < y1)) {
    throw DomainError("rectangle needs 0 < q' < q'' and |y''| < |y'|");
  }
  if (z2.q > 10000000) {
    throw ResourceError("rectangle too wide", static_cast<double>(z2.q));
  }
  const double alpha_d = ToDouble(alpha);
  const std::int64_t reach =
      static_cast<std::int64_t>(std::ceil(ToDouble(y1))) + 1;
  RectangleCheck out;
  for (std::int64_t q = 0; q <= z2.q; ++q) {
    const std::int64_t c =
        static_cast<std::int64_t>(std::llround(static_cast<double>(q) * alpha_d));
    for (std::int64_t p = c - reach - 1; p <= c + reach + 1; ++p) {
      const IntPair z{q, p};
      if ((q == 0 && p == 0) || z == z1 || z == z2) continue;
      const Num y = magnitude(second(q, p));
      if (y > y1) continue;
      if (y < y1 && q > 0 && q < z2.q) {
        out.interior_hits.push_back(z);
      } else {
        out.boundary_hits.push_back(z);
      }
    }
  }
  out.interior_empty = out.interior_hits.empty();
  out.closed_empty = out.interior_empty && out.boundary_hits.empty();
  return out;
}

}  // namespace

RectangleCheck rectangle_check(const CFExpansion& x, IntPair z1, IntPair z2,
                               Precision prec) {
  if (x.IsRational()) {
    const auto conv = convergents(x, std::max<std::size_t>(1, x.word().size()));
    const BigRational alpha(conv.back().p, conv.back().q);
    return Rectangle<BigRational>(alpha, z1, z2);
  }
  return WithPrecision(prec, [&]<class Real>() {
    return Rectangle<Real>(Value<Real>(x), z1, z2);
  });
}

bool rectangle_empty_check(const CFExpansion& x, IntPair z1, IntPair z2,
                           Precision prec) {
  return rectangle_check(x, z1, z2, prec).closed_empty;
}

#define LPDI_INSTANTIATE(Real)                                             \
  template LatticeBasisT<Real> LatticeAtT(const Real&, const Real&);       \
  template LatticeBasisT<Real> GaussReduceT(const LatticeBasisT<Real>&,    \
                                            IntPair*, IntPair*);           \
  template MinimaT<Real> SuccessiveMinimaT(double, const LatticeBasisT<Real>&);

LPDI_INSTANTIATE(Float128)
LPDI_INSTANTIATE(Float256)
LPDI_INSTANTIATE(Float512)
template MinimaT<double> SuccessiveMinimaT(double, const LatticeBasisT<double>&);

#undef LPDI_INSTANTIATE

}  // namespace lpdi
