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

#include <cmath>

#include "doctest.h"
#include "lpdi/lp_geometry.hpp"

namespace lpdi {
namespace {

const double kSqrt3 = std::sqrt(3.0);

std::vector<double> TestPs() { return {1, 1.5, 2, 2.3, P0(), 3, 7.5, kInf}; }

}  // namespace

TEST_SUITE("lp_geometry") {

TEST_CASE("norm examples") {
  CHECK(norm_eval(1, 0.3, 0.7) == doctest::Approx(1.0));
  CHECK(norm_eval(kInf, 0.3, 0.7) == doctest::Approx(0.7));
  CHECK(norm_eval(2, 3, 4) == doctest::Approx(5.0));
  CHECK(norm_eval(3, 0, -2) == 2);
  CHECK_THROWS_AS(norm_eval(0.5, 1, 1), DomainError);
}

TEST_CASE("sigma values") {
  CHECK(sigma(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::fabs(sigma(2) - (kSqrt3 - 1) / 2) <= 1e-12);
  const double s3 = sigma(3);
  CHECK(std::fabs(SigmaResidual(s3, 3.0)) <= 1e-11);
  CHECK_THROWS_AS(sigma(0.9), DomainError);
}

TEST_CASE("sigma residual on a grid") {
  for (int k = 0; k < 50; ++k) {
    const double p = 1.1 + (10 - 1.1) * k / 49.0;
    REQUIRE(std::fabs(SigmaResidual(sigma(p), p)) <= 1e-11);
  }
}

TEST_CASE("sigma at high precision") {
  const Float256 s = SigmaT(Float256(2));
  const Float256 want = (sqrt(Float256(3)) - 1) / 2;
  CHECK(abs(s - want) < Float256(1e-70));
}

TEST_CASE("residual changes sign once") {
  for (int k = 0; k <= 100; ++k) {
    const double p = 1.01 + (10 - 1.01) * k / 100.0;
    int changes = 0;
    double prev = SigmaResidual(1e-9, p);
    for (int j = 1; j <= 2000; ++j) {
      const double s = j / 2000.0 - 1e-9;
      const double g = SigmaResidual(s, p);
      if ((g > 0) != (prev > 0)) ++changes;
      prev = g;
    }
    REQUIRE(changes == 1);
  }
}

TEST_CASE("critical determinants") {
  CHECK(std::fabs(critical_determinant(1) - 0.5) <= 1e-10);
  CHECK(std::fabs(critical_determinant(2) - kSqrt3 / 2) <= 1e-10);
  CHECK(std::fabs(critical_determinant(kInf) - 1) <= 1e-10);
  CHECK(critical_determinant(2.3) ==
        doctest::Approx(std::pow(1 - std::pow(2.0, -2.3), 1 / 2.3)));
  CHECK(constants(1).delta_p == doctest::Approx(0.5));
}

TEST_CASE("catalog at p = 2.3") {
  const Catalog c = catalog(2.3);
  REQUIRE(c.lattices.size() == 2);
  CHECK(c.lattices[0].family == LatticeFamily::kL1);
  CHECK(c.lattices[1].family == LatticeFamily::kL1Prime);
  for (const auto& l : c.lattices) {
    CHECK(std::fabs(l.det()) ==
          doctest::Approx(std::pow(1 - std::pow(2.0, -2.3), 1 / 2.3)));
    CHECK(alpha_of(l.omega()) == doctest::Approx(1.0));
    CHECK(alpha_star_of(l.omega()) == doctest::Approx(1.0));
  }
}

TEST_CASE("the a = 0 lattice for p = 1 has eight boundary points") {
  const auto l = MakeL3(0, true);
  const auto pts = l.BoundaryPoints();
  CHECK(pts.size() == 8);
  for (const Vec2& v : pts) CHECK(norm_eval(1, v) == doctest::Approx(1.0));
  CHECK(l.det() == doctest::Approx(0.5));
}

TEST_CASE("hexagonal end of the p = 2 family") {
  CHECK(std::fabs(MakeL4(kPi / 6, true).det()) ==
        doctest::Approx(kSqrt3 / 2));
}

TEST_CASE("alpha of the p = 1 family") {
  const Mat2 om = MakeL3(0.2, true).omega();
  CHECK(alpha_of(om) == doctest::Approx(1.6));
  CHECK(alpha_star_of(om) == doctest::Approx(0.4));
  CHECK(alpha_of(om) + alpha_star_of(om) == doctest::Approx(2.0));
}

TEST_CASE("alpha of the sigma lattices") {
  for (double p : {1.3, 1.8, 3.0, 6.0}) {
    for (bool plus : {true, false}) {
      const Mat2 om = MakeL2(p, plus).omega();
      CHECK(alpha_of(om) == doctest::Approx(1 + sigma(p)).epsilon(1e-12));
      CHECK(alpha_star_of(om) == doctest::Approx(sigma(p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("beta product on the p = 2 family") {
  const Mat2 om = MakeL4(0.25, true).omega();
  CHECK(std::fabs(beta_of(om) * beta_star_of(om) - 3) <= 1e-10);
}

TEST_CASE("zero denominators map to infinity") {
  CHECK(std::isinf(alpha_of(Mat2{1, 0, 0, 0})));
  CHECK(std::isinf(alpha_star_of(Mat2{1, 0, 0, 1})));
}

TEST_CASE("boundary membership over the catalog") {
  for (double p : TestPs()) {
    const Catalog c = catalog(p);
    for (const auto& l : c.Expanded(100)) {
      for (const Vec2& v : l.BoundaryPoints()) {
        REQUIRE(std::fabs(norm_eval(p, v) - 1) <= 1e-10);
      }
      REQUIRE(std::fabs(std::fabs(l.det()) - critical_determinant(p)) <=
              1e-10);
    }
  }
}

TEST_CASE("determinants at the seams") {
  for (double p : {2 - 1e-10, 2 + 1e-10}) {
    CHECK(std::fabs(std::fabs(MakeL2(p, true).det()) - kSqrt3 / 2) <= 1e-9);
  }
  for (const auto& l : catalog(2).Expanded(100)) {
    CHECK(std::fabs(std::fabs(l.det()) - kSqrt3 / 2) <= 1e-9);
  }
}

TEST_CASE("p0") {
  const double p0 = p_zero(1e-9);
  CHECK(p0 > 2.57);
  CHECK(p0 < 2.58);
  const double lo = p_zero(1e-12, Precision{128});
  const double hi = p_zero(1e-12, Precision{256});
  CHECK(std::fabs(lo - hi) <= 1e-9);
  CHECK_THROWS_AS(p_zero(1e-13), DomainError);
}

TEST_CASE("determinant gap brackets p0") {
  auto gap = [](double p) {
    const Float128 q(p);
    return OmegaOneEntry(q) - OmegaTwoDet(q, SigmaT(q));
  };
  CHECK(gap(2.5) * gap(2.7) < 0);
  const Float128 p0 = PZeroT<Float128>();
  CHECK(abs(OmegaOneEntry(p0) - OmegaTwoDet(p0, SigmaT(p0))) <
        Float128(1e-10));
}

TEST_CASE("h inverse") {
  CHECK(h_inverse(0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h_inverse((kSqrt3 - 1) / 2) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::fabs(h_inverse(sigma(2.8)) - 2.8) <= 1e-9);
  CHECK_THROWS_AS(h_inverse(0.7), DomainError);
}

TEST_CASE("regime tags") {
  CHECK(RegimeTagOf(1) == RegimeTag::kPEq1);
  CHECK(RegimeTagOf(1.5) == RegimeTag::kOpen12);
  CHECK(RegimeTagOf(2) == RegimeTag::kPEq2);
  CHECK(RegimeTagOf(2.3) == RegimeTag::kOpen2P0);
  CHECK(RegimeTagOf(P0()) == RegimeTag::kPEqP0);
  CHECK(RegimeTagOf(2.7) == RegimeTag::kAboveP0);
  CHECK(RegimeTagOf(kInf) == RegimeTag::kPEqInf);
  CHECK_THROWS_AS(RegimeTagOf(0.99), DomainError);
}

TEST_CASE("parameter ranges") {
  CHECK_THROWS_AS(MakeL3(0.5, true), DomainError);
  CHECK_THROWS_AS(MakeL4(1.0, true), DomainError);
}

}  // TEST_SUITE

}  // namespace lpdi
