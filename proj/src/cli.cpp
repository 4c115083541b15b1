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

#include "lpdi/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "lpdi/classifier.hpp"
#include "lpdi/constructors.hpp"
#include "lpdi/json_io.hpp"
#include "lpdi/lattice_flow.hpp"
#include "lpdi/lp_geometry.hpp"

namespace lpdi {

double ParseP(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity") return kInf;
  if (t == "p0") return P0();
  double p = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), p);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw DomainError("cannot parse p = '" + text + "'");
  }
  if (!(p >= 1)) throw DomainError("p must be >= 1");
  return p;
}

namespace {

struct Options {
  std::string p;
  bool p0 = false;
  std::string number;
  std::string rational;
  std::string periodic;
  std::string digits_file;
  std::string witness;
  std::string sigma_word;
  std::size_t digits = 0;
  double tmax = 1e4;
  unsigned precision = 0;
  std::string out_path;
  std::string format = "json";
  unsigned workers = 1;
  std::string trace_path;
  std::string label;
  double epsilon = 0;
  std::vector<std::string> words;
  std::optional<std::size_t> offset;
  std::uint64_t seed = 1;
  bool length_constraint = false;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void Emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + o.out_path);
  f << text;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

Word ParseWord(const std::string& text) { return ParseDigitText(text); }

Precision PrecisionOf(const Options& o) {
  if (o.precision == 0) return Precision{};
  if (o.precision < 64) throw DomainError("precision must be >= 64 bits");
  if (o.precision > kMaxPrecisionBits) {
    throw DomainError("precision above 512 bits is not supported");
  }
  return Precision{o.precision};
}

CFExpansion ParsePeriodic(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) return CFExpansion::Periodic(0, {}, ParseWord(text));
  return CFExpansion::Periodic(0, ParseWord(text.substr(0, semi)),
                               ParseWord(text.substr(semi + 1)));
}

CFExpansion ParseRational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    const BigInt num(text.substr(0, slash));
    const BigInt den(slash == std::string::npos ? std::string("1")
                                                : text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator");
    return CFExpansion::Rational(num, den);
  } catch (const std::runtime_error&) {
    throw DomainError("cannot parse rational '" + text + "'");
  }
}

CFExpansion Number(const Options& o) {
  const int given = !o.number.empty() + !o.rational.empty() +
                    !o.periodic.empty() + !o.digits_file.empty() +
                    !o.witness.empty();
  if (given != 1) {
    throw DomainError(
        "give exactly one of --number, --rational, --periodic, "
        "--digits-file, --witness");
  }
  if (!o.number.empty()) {
    if (o.number == "e") return CFExpansion::E();
    throw DomainError("unknown named number '" + o.number + "'");
  }
  if (!o.rational.empty()) return ParseRational(o.rational);
  if (!o.periodic.empty()) return ParsePeriodic(o.periodic);
  if (!o.digits_file.empty()) {
    const Word w = ParseDigitText(ReadFile(o.digits_file));
    if (w.empty()) throw DomainError("no digits in " + o.digits_file);
    return CFExpansion::Prefix(0, w, o.digits_file);
  }
  try {
    return WitnessFromJson(Json::parse(ReadFile(o.witness))).Expansion();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed witness file: ") + e.what());
  }
}

void CheckFormat(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (o.format == f) return;
  }
  throw DomainError("format '" + o.format + "' is not available here");
}

void RunConstants(const Options& o, std::ostream& out) {
  CheckFormat(o, {"json", "csv", "text"});
  if (o.p.empty() && !o.p0) throw DomainError("give --p or --p0");
  Json j;
  if (o.p0 && o.p.empty()) {
    const Precision prec = PrecisionOf(o);
    j["p0"] = NumberJson(p_zero(1e-12, prec));
    j["tolerance"] = NumberJson(1e-12);
    j["precision_bits"] = prec.bits;
  } else {
    j = ToJson(constants(ParseP(o.p)));
  }
  if (o.format == "json") {
    Emit(o, Dump(j), out);
    return;
  }
  std::string head, row, text;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string v = it->is_string() ? it->get<std::string>()
                          : it->is_null() ? std::string("nan")
                          : it->is_number_float()
                              ? FormatDouble(it->get<double>())
                              : it->dump();
    head += (head.empty() ? "" : ",") + it.key();
    row += (row.empty() ? "" : ",") + v;
    text += it.key() + ": " + v + "\n";
  }
  Emit(o, o.format == "csv" ? head + "\n" + row + "\n" : text, out);
}

void RunClassify(const Options& o, std::ostream& out) {
  CheckFormat(o, {"json", "text"});
  const CFExpansion x = Number(o);
  Regime regime;
  if (!o.sigma_word.empty()) {
    regime = regime_from_sigma_word(ParseWord(o.sigma_word));
  } else {
    if (o.p.empty()) throw DomainError("--p is required");
    regime = regime_of(ParseP(o.p), PrecisionOf(o));
  }
  std::size_t horizon = o.digits;
  if (horizon == 0) {
    horizon = kDefaultHorizon;
    if (auto len = x.Length(); len && !x.IsRational()) {
      horizon = std::min(horizon, *len);
    }
  }
  const Verdict v = classify(x, regime, horizon);
  if (o.format == "json") {
    Emit(o, Dump(ToJson(v)), out);
  } else {
    Emit(o,
         "status: " + StatusName(v.status) + "\nregime: " +
             RegimeName(v.regime.tag) + "\njustification: " +
             v.justification + "\n",
         out);
  }
}

void RunFlow(const Options& o, std::ostream& out) {
  CheckFormat(o, {"json", "csv", "text"});
  if (o.p.empty()) throw DomainError("--p is required");
  const double p = ParseP(o.p);
  const CFExpansion x = Number(o);
  FlowOptions fo;
  fo.workers = std::max(1u, o.workers);
  fo.trace = o.format == "csv" || !o.trace_path.empty();
  if (o.precision != 0) fo.precision = PrecisionOf(o);
  const FlowEstimate f = critical_times(x, p, o.tmax, fo);
  if (!o.trace_path.empty()) {
    std::ofstream t(o.trace_path, std::ios::binary);
    if (!t) throw DomainError("cannot write " + o.trace_path);
    t << TraceCsv(f);
  }
  if (o.format == "csv") {
    Emit(o, TraceCsv(f), out);
  } else if (o.format == "json") {
    Emit(o, Dump(ToJson(f)), out);
  } else {
    Emit(o,
         "crossings: " + std::to_string(f.crossings.size()) +
             "\nd_estimate: " + FormatDouble(f.d_estimate) +
             "\ndelta_estimate: " + FormatDouble(f.delta_estimate) +
             "\nbound: " + FormatDouble(f.bound) + "\n",
         out);
  }
}

void RunConstruct(const Options& o, std::ostream& out) {
  CheckFormat(o, {"json", "text"});
  if (o.label.empty()) throw DomainError("--label is required");
  const TargetSet target = ParseTargetLabel(o.label);
  const std::size_t n = o.digits == 0 ? 4096 : o.digits;
  if (target == TargetSet::kBaW) {
    if (o.words.empty()) throw DomainError("ba-w needs at least one --word");
    std::vector<Word> words;
    for (const auto& w : o.words) words.push_back(ParseWord(w));
    const BaWParams params = ba_w(o.epsilon, words);
    Json j = ToJson(params);
    j["good_condition"] = ToJson(good_condition_check(o.epsilon, words, n));
    Word prefix;
    if (params.period > 0) {
      j["seed"] = o.seed;
      prefix = BaWStream(params, o.seed).Prefix(n);
      Json d = Json::array();
      for (Digit x : prefix) d.push_back(x);
      j["digits_prefix"] = d;
    }
    Emit(o, o.format == "json" ? Dump(j) : DigitText(prefix), out);
    return;
  }
  if (!o.number.empty() || !o.rational.empty() || !o.digits_file.empty() ||
      !o.witness.empty()) {
    throw DomainError("construct takes its base from --periodic only");
  }
  const CFExpansion base =
      o.periodic.empty() ? OnesBase() : ParsePeriodic(o.periodic);
  std::optional<WitnessStream> w;
  switch (target) {
    case TargetSet::kDiMinusBa:
      if (!o.sigma_word.empty()) {
        w.emplace(witness_di_minus_ba(
            regime_from_sigma_word(ParseWord(o.sigma_word)), base, o.offset));
      } else {
        if (o.p.empty()) throw DomainError("di-minus-ba needs --p");
        w.emplace(witness_di_minus_ba(ParseP(o.p), base, o.offset));
      }
      break;
    case TargetSet::kDi1MinusDi2:
      w.emplace(witness_di1_minus_di2(base, o.offset, o.length_constraint));
      break;
    case TargetSet::kDi2MinusDi1:
      w.emplace(witness_di2_minus_di1(base, o.offset, o.length_constraint));
      break;
    default:
      throw DomainError("unknown label " + o.label);
  }
  if (o.format == "text") {
    Emit(o, DigitText(w->Prefix(n)), out);
    return;
  }
  Json j = WitnessToJson(*w, n);
  const SignatureCheck sig = witness_signature(*w, n);
  j["signature"] = {{"intended_growing", sig.intended_growing},
                    {"complementary_absent", sig.complementary_absent},
                    {"matches", sig.Matches()}};
  Emit(o, Dump(j), out);
}

void AddNumber(CLI::App* app, Options& o) {
  app->add_option("--number", o.number, "Named number (e)");
  app->add_option("--rational", o.rational, "Rational P/Q");
  app->add_option("--periodic", o.periodic,
                  "Eventually periodic digits 'pre;period', comma separated");
  app->add_option("--digits-file", o.digits_file, "Text file of digits");
  app->add_option("--witness", o.witness, "Witness JSON from construct");
}

void AddOutput(CLI::App* app, Options& o) {
  app->add_option("--out", o.out_path, "Output path (default stdout)");
  app->add_option("--format", o.format, "json, csv or text");
  app->add_option("--precision", o.precision, "Working precision in bits")
      ->check(CLI::Range(64u, kMaxPrecisionBits));
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"L_p Dirichlet improvability toolkit", "lpdi"};
  app.set_config("--config", "", "TOML/INI file with the same keys as flags");
  app.require_subcommand(1);

  auto* c = app.add_subcommand("constants", "sigma_p, Delta_p and p0");
  c->add_option("--p", o.p, "Exponent (number, inf or p0)");
  c->add_flag("--p0", o.p0, "Print p0");
  AddOutput(c, o);

  auto* k = app.add_subcommand("classify", "Improvability verdict");
  k->add_option("--p", o.p, "Exponent (number, inf or p0)");
  k->add_option("--sigma-word", o.sigma_word,
                "Regime from sigma = [0; word] given exactly");
  k->add_option("--digits", o.digits, "Scan horizon");
  AddNumber(k, o);
  AddOutput(k, o);

  auto* f = app.add_subcommand("flow", "Critical times of the lattice flow");
  f->add_option("--p", o.p, "Exponent (number, inf or p0)");
  f->add_option("--tmax", o.tmax, "Flow horizon")->check(CLI::Range(4.0, 1e12));
  f->add_option("--workers", o.workers, "Threads");
  f->add_option("--trace", o.trace_path, "CSV trace path");
  AddNumber(f, o);
  AddOutput(f, o);

  auto* s = app.add_subcommand("construct", "Witness streams");
  s->add_option("--label", o.label,
                "di-minus-ba, di1-minus-di2, di2-minus-di1 or ba-w");
  s->add_option("--p", o.p, "Exponent for di-minus-ba");
  s->add_option("--sigma-word", o.sigma_word, "Exact sigma for di-minus-ba");
  s->add_option("--offset", o.offset, "c in n_i = 2^(i+c)");
  s->add_flag("--length-constraint", o.length_constraint,
              "Require |A_i| < n_{i+1} - n_i");
  s->add_option("--digits", o.digits, "Emitted prefix length");
  s->add_option("--epsilon", o.epsilon, "BA_W epsilon");
  s->add_option("--word", o.words, "BA_W word, comma separated (repeatable)");
  s->add_option("--seed", o.seed, "Seed for BA_W free digits");
  AddNumber(s, o);
  AddOutput(s, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (c->parsed()) RunConstants(o, out);
    if (k->parsed()) RunClassify(o, out);
    if (f->parsed()) RunFlow(o, out);
    if (s->parsed()) RunConstruct(o, out);
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const HorizonError& e) {
    err << "error: " << e.what() << "\n";
    return kExitHorizon;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitHorizon;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace lpdi
