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

#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "gen.hpp"
#include "lpdi/json_io.hpp"

namespace lpdi {

TEST_SUITE("json_io") {

TEST_CASE("number formatting") {
  CHECK(FormatDouble(0.1) == "0.1");
  CHECK(FormatDouble(1.0 / 3) == "0.333333333333333");
  CHECK(FormatDouble(2) == "2");
  CHECK(Round15(1.0 / 3) == 0.333333333333333);
  CHECK(NumberJson(kInf) == "inf");
  CHECK(NumberJson(-kInf) == "-inf");
  CHECK(NumberJson(std::nan("")).is_null());
  CHECK(NumberFromJson(Json("inf")) == kInf);
  CHECK(NumberFromJson(Json(2.5)) == 2.5);
}

TEST_CASE("expansions round trip") {
  const std::vector<CFExpansion> xs = {
      CFExpansion::Finite(1, {2, 3}),
      CFExpansion::Periodic(0, {4}, {1, 2}),
      CFExpansion::E(),
  };
  for (const auto& x : xs) {
    const CFExpansion y = ExpansionFromJson(ToJson(x));
    CHECK(y.kind() == x.kind());
    CHECK(y.a0() == x.a0());
    const std::size_t n = std::min<std::size_t>(20, x.Length().value_or(20));
    CHECK(y.Digits(n) == x.Digits(n));
  }
  const auto g = CFExpansion::Generated(
      0, [](std::size_t i) { return static_cast<Digit>(i % 3 + 1); }, "cyc");
  const CFExpansion back = ExpansionFromJson(ToJson(g, 50));
  CHECK(back.kind() == CFExpansion::Kind::kPrefix);
  CHECK(back.Digits(50) == g.Digits(50));
}

TEST_CASE("witness round trip") {
  const auto w = witness_di1_minus_di2(OnesBase());
  const Json j = WitnessToJson(w, 600);
  CHECK(j["label"] == "di1-minus-di2");
  CHECK(j["schedule"]["offsets"].size() == w.schedule().Upto(600).size());
  const WitnessStream back = WitnessFromJson(j);
  CHECK(back.Prefix(600) == w.Prefix(600));
  CHECK(back.info().target == TargetSet::kDi1MinusDi2);

  Json bad = j;
  bad["digits_prefix"][10] = 7;
  CHECK_THROWS_AS(WitnessFromJson(bad), DomainError);
}

TEST_CASE("custom witness round trip") {
  const auto s = InsertionSchedule::Explicit({3, 9}, {{5, 6}, {7}});
  const auto w = insert_map(CFExpansion::Periodic(0, {}, {2}), s);
  const WitnessStream back = WitnessFromJson(WitnessToJson(w, 40));
  CHECK(back.Prefix(40) == w.Prefix(40));
}

TEST_CASE("digit text") {
  CHECK(ParseDigitText("1, 2;3\n4 # five\n6") == Word{1, 2, 3, 4, 6});
  CHECK(DigitText({1, 2, 3}).find('2') != std::string::npos);
  CHECK(ParseDigitText(DigitText({4, 5, 6})) == Word{4, 5, 6});
  CHECK_THROWS_AS(ParseDigitText("1, 0"), DomainError);
  CHECK_THROWS_AS(ParseDigitText("1, x"), DomainError);
}

TEST_CASE("trace csv") {
  FlowOptions o;
  o.trace = true;
  const auto f = critical_times(CFExpansion::Periodic(0, {}, {1}), 2, 100, o);
  const std::string csv = TraceCsv(f);
  CHECK(csv.rfind("t,lambda1,lambda2,is_crossing,locus_distance\n", 0) == 0);
  CHECK(csv.find(',') != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(f.trace.size() + 1));
}

TEST_CASE("verdict json") {
  const Json j = ToJson(classify_e(2.3));
  CHECK(j["status"] == "DECIDED_NON_IMPROVABLE");
  CHECK(j["decided"] == true);
  CHECK(j["regime"]["tag"] == "OPEN_2_P0");
}

}  // TEST_SUITE

}  // namespace lpdi
