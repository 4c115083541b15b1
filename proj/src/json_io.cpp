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

#include "lpdi/json_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace lpdi {

double Round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x,
                                 std::chars_format::general, 15);
  double y = 0;
  std::from_chars(buf, res.ptr, y);
  return y;
}

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x,
                                 std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

Json NumberJson(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return Round15(x);
}

double NumberFromJson(const Json& j) {
  if (j.is_null()) return std::nan("");
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw DomainError("expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

namespace {

std::string KindName(CFExpansion::Kind k) {
  switch (k) {
    case CFExpansion::Kind::kFinite: return "finite";
    case CFExpansion::Kind::kPeriodic: return "periodic";
    case CFExpansion::Kind::kE: return "e";
    case CFExpansion::Kind::kGenerated: return "generated";
    case CFExpansion::Kind::kPrefix: return "prefix";
  }
  return "?";
}

Json WordJson(const Word& w) {
  Json a = Json::array();
  for (Digit d : w) a.push_back(d);
  return a;
}

Word WordFromJson(const Json& j) {
  Word w;
  for (const auto& d : j) w.push_back(d.get<Digit>());
  return w;
}

Json RecordsJson(const std::vector<Record>& records) {
  Json a = Json::array();
  for (const Record& r : records) {
    a.push_back(Json::array({r.position, NumberJson(r.value)}));
  }
  return a;
}

Json PatternJson(const PatternSpec& s) {
  Json j;
  j["kind"] = PatternKindName(s.kind);
  j["clause"] = s.clause;
  j["core"] = WordJson(s.core);
  if (s.depth > 0) j["depth"] = s.depth;
  if (s.tolerance > 0) j["tolerance"] = NumberJson(s.tolerance);
  return j;
}

Json ClaimsJson(const std::vector<ConstructionClaim>& claims) {
  Json a = Json::array();
  for (const auto& c : claims) {
    Json j;
    j["p"] = NumberJson(c.p);
    j["improvable"] = c.improvable;
    j["justification"] = c.justification;
    a.push_back(j);
  }
  return a;
}

Json BigIntJson(const BigInt& x) {
  if (x <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return x.convert_to<std::uint64_t>();
  }
  return x.str();
}

}  // namespace

Json ToJson(const CFExpansion& x, std::size_t prefix) {
  Json j;
  j["kind"] = KindName(x.kind());
  j["a0"] = x.a0();
  switch (x.kind()) {
    case CFExpansion::Kind::kFinite:
      j["digits"] = WordJson(x.word());
      break;
    case CFExpansion::Kind::kPeriodic:
      j["digits"] = WordJson(x.word());
      j["period"] = WordJson(x.period());
      break;
    case CFExpansion::Kind::kE:
      break;
    case CFExpansion::Kind::kGenerated:
      j["name"] = x.name();
      j["digits"] = WordJson(x.Digits(prefix));
      break;
    case CFExpansion::Kind::kPrefix:
      j["name"] = x.name();
      j["digits"] = WordJson(x.word());
      break;
  }
  return j;
}

CFExpansion ExpansionFromJson(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const std::int64_t a0 = j.value("a0", std::int64_t{0});
  if (kind == "finite") return CFExpansion::Finite(a0, WordFromJson(j["digits"]));
  if (kind == "periodic") {
    return CFExpansion::Periodic(a0, WordFromJson(j.value("digits", Json::array())),
                                 WordFromJson(j.at("period")));
  }
  if (kind == "e") return CFExpansion::E();
  if (kind == "generated" || kind == "prefix") {
    return CFExpansion::Prefix(a0, WordFromJson(j.at("digits")),
                               j.value("name", std::string("prefix")));
  }
  throw DomainError("unknown expansion kind '" + kind + "'");
}

Json ToJson(const CriticalConstants& c) {
  Json j;
  j["p"] = NumberJson(c.p);
  j["regime"] = RegimeName(RegimeTagOf(c.p));
  j["sigma_p"] = NumberJson(c.sigma_p);
  j["delta_p"] = NumberJson(c.delta_p);
  j["dirichlet_bound"] = NumberJson(c.dirichlet_bound);
  j["p0"] = NumberJson(c.p0);
  return j;
}

Json ToJson(const Regime& r) {
  Json j;
  j["tag"] = RegimeName(r.tag);
  j["p"] = NumberJson(r.p);
  if (!r.sigma_digits.empty()) {
    j["sigma_digits"] = WordJson(r.sigma_digits);
    j["sigma_rational"] = r.sigma_rational;
    j["sigma_exact"] = r.sigma_exact;
  }
  return j;
}

Json ToJson(const Verdict& v) {
  Json j;
  j["status"] = StatusName(v.status);
  j["improvable"] = IsImprovable(v.status);
  j["decided"] = IsDecided(v.status);
  j["justification"] = v.justification;
  j["regime"] = ToJson(v.regime);
  Json pats = Json::array();
  for (const auto& s : v.patterns) pats.push_back(PatternJson(s));
  j["patterns"] = pats;
  Json rep;
  rep["horizon"] = v.report.horizon;
  Json fams = Json::array();
  for (const auto& f : v.report.families) {
    Json fj;
    fj["clause"] = f.spec.clause;
    fj["kind"] = PatternKindName(f.spec.kind);
    fj["occurrences"] = f.occurrences.size();
    fj["growing"] = FamilyGrowing(f, v.report.horizon);
    fj["records"] = RecordsJson(f.records);
    if (f.spec.kind == PatternKind::kPalindromicGrowing ||
        f.spec.kind == PatternKind::kAlmostSymmetric) {
      fj["max_nu"] = f.max_nu;
      fj["nu_cap"] = f.nu_cap;
      fj["nu_records"] = RecordsJson(f.nu_records);
    }
    if (f.spec.kind == PatternKind::kCentralProduct) {
      fj["windows"] = f.windows.size();
      fj["window_records"] = RecordsJson(f.window_records);
    }
    fams.push_back(fj);
  }
  rep["families"] = fams;
  j["report"] = rep;
  return j;
}

Json ToJson(const FlowEstimate& f) {
  Json j;
  j["p"] = NumberJson(f.p);
  j["t_max"] = NumberJson(f.t_max);
  j["crossings"] = f.crossings.size();
  j["d_estimate"] = NumberJson(f.d_estimate);
  j["d_global_max"] = NumberJson(f.d_global_max);
  j["delta_estimate"] = NumberJson(f.delta_estimate);
  j["delta_p"] = NumberJson(f.delta_p);
  j["bound"] = NumberJson(f.bound);
  j["rational_degenerate"] = f.rational_degenerate;
  j["grid_points"] = f.grid_points;
  j["precision_bits"] = f.precision_bits;
  Json cs = Json::array();
  for (const auto& c : f.crossings) {
    Json cj;
    cj["t"] = NumberJson(c.t);
    cj["lambda1"] = NumberJson(c.lambda1);
    cj["lambda2"] = NumberJson(c.lambda2);
    cj["v1"] = Json::array({c.v1.q, c.v1.p});
    cj["v2"] = Json::array({c.v2.q, c.v2.p});
    cj["locus_distance"] = NumberJson(c.locus_distance);
    cs.push_back(cj);
  }
  j["crossing_list"] = cs;
  return j;
}

std::string TraceCsv(const FlowEstimate& f) {
  std::string out = "t,lambda1,lambda2,is_crossing,locus_distance\n";
  for (const auto& r : f.trace) {
    out += FormatDouble(r.t) + "," + FormatDouble(r.lambda1) + "," +
           FormatDouble(r.lambda2) + "," + (r.is_crossing ? "1" : "0") + "," +
           FormatDouble(r.locus_distance) + "\n";
  }
  return out;
}

Json ToJson(const BaWParams& b) {
  Json j;
  j["label"] = TargetLabel(TargetSet::kBaW);
  j["epsilon"] = NumberJson(b.epsilon);
  j["M"] = b.m;
  Json blocks = Json::array();
  for (const auto& blk : b.blocks) {
    Json bj;
    bj["word"] = WordJson(blk.word);
    bj["Q"] = BigIntJson(blk.q);
    bj["nu"] = blk.nu;
    bj["n"] = blk.n;
    bj["word_offset"] = blk.word_offset;
    bj["q_root"] = NumberJson(blk.q_root);
    blocks.push_back(bj);
  }
  j["blocks"] = blocks;
  j["period"] = b.period;
  j["one_minus_2_over_m"] = NumberJson(b.one_minus_2_over_m);
  j["two_pow_half_eps"] = NumberJson(b.two_pow_half_eps);
  j["two_pow_eps_times_one_minus_2_over_m"] = NumberJson(b.lower);
  j["printed_chain_holds"] = b.printed_chain_holds;
  j["chain_holds"] = b.chain_holds;
  return j;
}

Json ToJson(const GoodConditionReport& g) {
  Json j;
  j["horizon"] = g.horizon;
  j["first_period_end"] = g.first_period_end;
  j["min_log_product"] = NumberJson(g.min_log_product);
  j["stays_from"] = g.stays_from ? Json(*g.stays_from) : Json(nullptr);
  j["failure"] = g.failure ? Json(*g.failure) : Json(nullptr);
  return j;
}

Json WitnessToJson(const WitnessStream& w, std::size_t n) {
  const WitnessInfo& info = w.info();
  Json j;
  j["label"] = TargetLabel(info.target);
  j["p"] = info.target == TargetSet::kDiMinusBa ? NumberJson(info.p)
                                                : Json(nullptr);
  if (!info.sigma_word.empty()) j["sigma_word"] = WordJson(info.sigma_word);
  j["offset"] = info.offset;
  j["nominal_offset"] = info.nominal_offset;
  j["length_constraint"] = info.length_constraint;
  Json offsets = Json::array(), words = Json::array();
  for (const Insertion& ins : w.schedule().Upto(n)) {
    offsets.push_back(ins.offset);
    words.push_back(WordJson(ins.word));
  }
  j["schedule"] = {{"offsets", offsets}, {"words", words}};
  const std::size_t base_len = n - omega(w, n) + 1;
  j["base"] = ToJson(w.base(), base_len);
  j["digits_prefix"] = WordJson(w.Prefix(n));
  j["claims"] = ClaimsJson(w.claims());
  return j;
}

WitnessStream WitnessFromJson(const Json& j) {
  try {
    WitnessInfo info;
    info.target = ParseTargetLabel(j.at("label").get<std::string>());
    if (j.contains("p") && !j["p"].is_null()) info.p = NumberFromJson(j["p"]);
    if (j.contains("sigma_word")) info.sigma_word = WordFromJson(j["sigma_word"]);
    info.offset = j.value("offset", std::size_t{0});
    info.nominal_offset = j.value("nominal_offset", std::size_t{0});
    info.length_constraint = j.value("length_constraint", false);
    const CFExpansion base = ExpansionFromJson(j.at("base"));
    const Word prefix = WordFromJson(j.at("digits_prefix"));
    std::optional<WitnessStream> w;
    if (info.target == TargetSet::kCustom) {
      std::vector<std::size_t> offsets;
      std::vector<Word> words;
      for (const auto& o : j.at("schedule").at("offsets")) {
        offsets.push_back(o.get<std::size_t>());
      }
      for (const auto& wd : j.at("schedule").at("words")) {
        words.push_back(WordFromJson(wd));
      }
      w.emplace(base, InsertionSchedule::Explicit(std::move(offsets),
                                                  std::move(words),
                                                  info.length_constraint));
    } else {
      w.emplace(MakeWitness(info, base));
    }
    if (w->Prefix(prefix.size()) != prefix) {
      throw DomainError("digits_prefix does not match the construction");
    }
    return *w;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed witness: ") + e.what());
  }
}

Word ParseDigitText(const std::string& text) {
  Word out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    }
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
      Digit d = 0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), d);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() ||
          d == 0) {
        throw DomainError("bad digit '" + tok + "'");
      }
      out.push_back(d);
    }
  }
  return out;
}

std::string DigitText(const Word& digits) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0) out += (i % 32 == 0) ? '\n' : ' ';
    out += std::to_string(digits[i]);
  }
  out += '\n';
  return out;
}

}  // namespace lpdi
