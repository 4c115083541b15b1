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

// Digit patterns whose recurrence with growing flanks (or growing cores)
// makes a number L_p-Dirichlet non-improvable, scanners for them, and a
// classifier that decides the question for inputs with a finite
// description.

#ifndef LPDI_CLASSIFIER_HPP_
#define LPDI_CLASSIFIER_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "lpdi/cf_core.hpp"
#include "lpdi/lp_geometry.hpp"

namespace lpdi {

struct Regime {
  RegimeTag tag = RegimeTag::kOpen2P0;
  double p = 2.3;
  // Trusted digits of sigma_p (for OPEN_1_2, ABOVE_P0 and P_EQ_P0).
  Word sigma_digits;
  bool sigma_rational = false;
  // True when sigma_p was supplied as an exact rational word.
  bool sigma_exact = false;
};

// max_digits bounds the sigma digits that are computed.
Regime regime_of(double p, Precision prec = {}, std::size_t max_digits = 48);

// Regime at p = h(sigma) for sigma = [0; word] given exactly.
Regime regime_from_sigma_word(const Word& word);

enum class PatternKind {
  kFlankedFixed,        // x, core, y
  kPalindromicGrowing,  // s_v..s_1, 1, s_1..s_v
  kCentralProduct,      // windows around a central 1 with beta beta* = 3
  kAlmostSymmetric,     // windows around 1,1 with outward values U, U + 1
  kUnboundedDigits,     // a_n -> inf along a subsequence
};

std::string PatternKindName(PatternKind k);

struct PatternSpec {
  PatternKind kind = PatternKind::kFlankedFixed;
  std::string clause;
  Word core;              // fixed core, or the sigma digits s_1..s_K
  double tolerance = 0;   // residual tolerance for product windows
  std::size_t depth = 0;  // window depth for product and flanked searches

  bool operator==(const PatternSpec&) const = default;
};

std::vector<PatternSpec> patterns_for(const Regime& regime);

// Minimum last record for a record sequence to count as growing.
constexpr double kRecordMin = 5;

struct Record {
  std::size_t position = 0;
  double value = 0;
};

struct Occurrence {
  std::size_t position = 0;  // first digit of the core (1-based)
  std::size_t length = 0;    // digits between the flanks
  Digit left = 0;
  Digit right = 0;
};

struct ProductWindow {
  std::size_t center = 0;
  std::size_t depth = 0;
  double beta = 0;
  double beta_star = 0;
  double residual = 0;
};

struct FamilyScan {
  PatternSpec spec;
  std::vector<Occurrence> occurrences;
  std::vector<Record> records;  // records of min(x, y)
  std::size_t max_nu = 0;
  std::size_t nu_cap = 0;
  std::vector<Record> nu_records;  // records of the growing core index
  std::vector<ProductWindow> windows;
  std::vector<Record> window_records;  // records of -log10 residual
};

struct ScanReport {
  std::size_t horizon = 0;
  std::vector<FamilyScan> families;
};

// At least 3 strictly increasing records, the last >= kRecordMin and set
// in the final quarter of the horizon. horizon = 0 drops the last condition.
bool RecordsGrowing(const std::vector<Record>& records, std::size_t horizon);
bool FamilyGrowing(const FamilyScan& scan, std::size_t horizon);

ScanReport scan(const CFExpansion& x, const std::vector<PatternSpec>& specs,
                std::size_t horizon);

// Scan an explicit digit window a_1..a_n.
ScanReport ScanDigits(const Word& digits,
                      const std::vector<PatternSpec>& specs);

enum class VerdictStatus {
  kDecidedImprovable,
  kDecidedNonImprovable,
  kEvidenceImprovable,
  kEvidenceNonImprovable,
};

std::string StatusName(VerdictStatus s);
bool IsImprovable(VerdictStatus s);
bool IsDecided(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::kEvidenceImprovable;
  std::string justification;
  Regime regime;
  std::vector<PatternSpec> patterns;
  ScanReport report;
};

constexpr std::size_t kDefaultHorizon = 1024;

Verdict classify(const CFExpansion& x, double p,
                 std::size_t horizon = kDefaultHorizon, Precision prec = {});
Verdict classify(const CFExpansion& x, const Regime& regime,
                 std::size_t horizon = kDefaultHorizon);

Verdict classify_e(double p);

}  // namespace lpdi

#endif  // LPDI_CLASSIFIER_HPP_
