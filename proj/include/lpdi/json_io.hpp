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

// JSON and CSV forms of the library types. Doubles are written with 15
// significant digits so that identical inputs give identical bytes.

#ifndef LPDI_JSON_IO_HPP_
#define LPDI_JSON_IO_HPP_

#include <string>

#include "json.hpp"
#include "lpdi/cf_core.hpp"
#include "lpdi/classifier.hpp"
#include "lpdi/constructors.hpp"
#include "lpdi/lattice_flow.hpp"
#include "lpdi/lp_geometry.hpp"

namespace lpdi {

using Json = nlohmann::ordered_json;

// x rounded to 15 significant digits.
double Round15(double x);
// "%.15g" independent of the locale.
std::string FormatDouble(double x);
// Rounded number, "inf"/"-inf", or null for NaN.
Json NumberJson(double x);
double NumberFromJson(const Json& j);

// Periodic expansions keep their structure; generated streams are written
// as the first `prefix` digits.
Json ToJson(const CFExpansion& x, std::size_t prefix = 64);
CFExpansion ExpansionFromJson(const Json& j);

Json ToJson(const CriticalConstants& c);
Json ToJson(const Regime& r);
Json ToJson(const Verdict& v);
Json ToJson(const FlowEstimate& f);
std::string TraceCsv(const FlowEstimate& f);

Json ToJson(const BaWParams& b);
Json ToJson(const GoodConditionReport& g);

// {label, p, offset, schedule: {offsets, words}, base, digits_prefix,
// claims} for the first n emitted digits.
Json WitnessToJson(const WitnessStream& w, std::size_t n);
// Rebuilds the witness and checks it against digits_prefix.
WitnessStream WitnessFromJson(const Json& j);

// Digits separated by commas or whitespace; '#' starts a comment.
Word ParseDigitText(const std::string& text);
std::string DigitText(const Word& digits);

}  // namespace lpdi

#endif  // LPDI_JSON_IO_HPP_
