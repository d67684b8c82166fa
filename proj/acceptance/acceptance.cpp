// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "trx/analysis.hpp"
#include "trx/bench.hpp"
#include "trx/calculator.hpp"
#include "trx/cli.hpp"
#include "trx/corpus.hpp"
#include "trx/interpreter.hpp"
#include "trx/meta_grammar.hpp"
#include "trx/selftest.hpp"
#include "trx/tree_json.hpp"

using namespace trx;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string grammar_path(const std::string& name) { return std::string(TRX_GRAMMAR_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string fixed(double x, int digits = 2) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << x;
  return ss.str();
}

std::string summary(const selftest::SuiteResult& r) {
  std::string s = std::to_string(r.cases) + " cases, " + std::to_string(r.failures) + " failures, " +
                  fixed(r.seconds) + " s";
  if (r.truncated) s += ", truncated";
  if (!r.samples.empty()) s += "; first: " + r.samples.front();
  return s;
}

std::size_t invariant_firings(const selftest::SuiteResult& r) {
  std::size_t n = 0;
  for (const auto& s : r.samples) {
    if (s.find("invariant violation") != std::string::npos) ++n;
  }
  return n;
}

int cli_exit(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out;
  std::ostringstream err;
  return cli::run(args, in, out, err);
}

std::vector<selftest::SuiteResult> suites;

Verdict ac1() {
  oracle::CaseConfig cfg;
  auto r = selftest::differential(cfg, selftest::Deadline::after(120));
  suites.push_back(r);
  bool pass = r.ok() && !r.truncated && r.cases >= 10'000 && r.seconds < 60;
  return {pass, summary(r) + " [" + r.note + "]"};
}

Verdict ac2() {
  auto v = calculator::evaluate("(1+2) * (3 * 4)");
  if (!v) return {false, "no value"};
  return {*v == 36, "value " + std::to_string(*v)};
}

Verdict ac3() {
  std::vector<std::string> bad;
  Grammar math = load_grammar_file(grammar_path("math.peg")).grammar;
  if (!check_well_formed(math).is_well_formed) bad.push_back("math rejected");

  WfReport left = check_well_formed(load_grammar_file(grammar_path("math-leftrec.peg")).grammar);
  bool left_ok = !left.is_well_formed && !left.offenders.empty() && left.offenders.front().production == "expr";
  if (!left_ok) bad.push_back("left-recursive variant");

  Grammar guarded = Grammar::from_core({{"A", Expr::seq(Expr::not_(Expr::empty()), Expr::nonterminal("A"))}}, "A");
  if (!check_well_formed(guarded, AnalysisMode::Full).is_well_formed) bad.push_back("!eps A rejected by full");
  if (check_well_formed(guarded, AnalysisMode::Simplified).is_well_formed) {
    bad.push_back("!eps A accepted by simplified");
  }

  WfReport star = check_well_formed(Grammar::from_core({{"A", Expr::star(Expr::empty())}}, "A"));
  bool star_ok = !star.is_well_formed && !star.offenders.empty() &&
                 star.offenders.front().reason == OffenseReason::NullableStar;
  if (!star_ok) bad.push_back("eps* verdict");

  std::string detail = "math accepted; leftrec offender expr; !eps A full yes, simplified no; eps* NullableStar";
  if (!bad.empty()) {
    detail = "wrong:";
    for (const auto& b : bad) detail += " " + b + ";";
  }
  return {bad.empty(), detail};
}

Verdict ac4() {
  selftest::RandomConfig cfg;
  auto r = selftest::completeness(cfg, selftest::Deadline::after(600));
  suites.push_back(r);
  bool pass = r.ok() && !r.truncated && r.cases == cfg.grammars * cfg.inputs_per_grammar;
  return {pass, summary(r) + " [" + r.note + "]"};
}

Verdict ac5() {
  oracle::CaseConfig cfg;
  auto r = selftest::property_soundness(cfg, selftest::Deadline::after(300));
  suites.push_back(r);
  return {r.ok() && !r.truncated, summary(r)};
}

Verdict ac6() {
  auto r = selftest::mode_agreement(1, 1000, 12, selftest::Deadline::after(300));
  suites.push_back(r);
  std::size_t firings = 0;
  for (const auto& s : suites) firings += invariant_firings(s);
  bool pass = r.ok() && !r.truncated && r.cases == 1000 && firings == 0;
  return {pass, summary(r) + "; invariant firings across suites: " + std::to_string(firings)};
}

Verdict ac7() {
  auto t0 = std::chrono::steady_clock::now();
  Grammar g = load_grammar_file(grammar_path("xml-lite.peg")).grammar;
  auto cert = *check_well_formed(g).certificate;
  std::vector<std::pair<std::string, std::string>> inputs;
  for (std::size_t mb : {1, 2, 4}) {
    inputs.emplace_back(std::to_string(mb) + "M", corpus::xmark_lite(mb << 20, 1));
  }
  auto rows = bench::run(g, cert, inputs, ParseMode::Plain, 5);
  double total = seconds_since(t0);
  bool pass = total < 300;
  std::string detail;
  for (const auto& row : rows) {
    if (!row.matched) pass = false;
    detail += row.label + " " + fixed(row.median, 3) + " s";
    if (row.ratio > 0) {
      detail += " (x" + fixed(row.ratio) + ")";
      if (row.ratio < 1.6 || row.ratio > 2.6) pass = false;
    }
    if (!row.matched) detail += " rejected";
    detail += ", ";
  }
  return {pass, detail + "total " + fixed(total, 1) + " s"};
}

Verdict ac8() {
  int code = cli_exit({"check", grammar_path("peg.peg")});
  std::string text = slurp(grammar_path("peg.peg"));
  Grammar loaded = load_grammar(text);
  auto rep = check_well_formed(loaded);
  if (!rep.certificate) return {false, "loaded peg.peg is not well-formed"};
  Grammar reparsed = load_grammar_with(loaded, *rep.certificate, text).grammar;
  bool equal = reparsed == meta_grammar();
  return {code == 0 && equal,
          "check exit " + std::to_string(code) + ", self-parse " + (equal ? "equals" : "differs from") +
              " the built-in meta-grammar"};
}

Verdict ac9() {
  std::vector<std::string> bad;
  Grammar reserved = load_grammar_file(grammar_path("reserved.peg")).grammar;
  auto rc = *check_well_formed(reserved).certificate;
  ParseOutcome ifs = parse_to_tree(reserved, rc, "ifs");
  if (!ifs.ok() || ifs.match->next_pos != 3 ||
      tree_json(ifs.match->value, "ifs") != slurp(std::string(TRX_GOLDEN_DIR) + "/reserved-ifs.json")) {
    bad.push_back("ifs");
  }
  if (parse_to_tree(reserved, rc, "if").ok()) bad.push_back("if accepted");

  Grammar dangling = load_grammar_file(grammar_path("dangling.peg")).grammar;
  auto dc = *check_well_formed(dangling).certificate;
  std::string input = "if (a) if (b) x; else y;";
  ParseOutcome d = parse_to_tree(dangling, dc, input);
  if (!d.ok() || d.match->next_pos != input.size() ||
      tree_json(d.match->value, input) != slurp(std::string(TRX_GOLDEN_DIR) + "/dangling.json")) {
    bad.push_back("dangling else");
  }
  std::string detail = "\"ifs\" identifier, \"if\" rejected, else binds innermost if";
  if (!bad.empty()) {
    detail = "mismatch:";
    for (const auto& b : bad) detail += " " + b + ";";
  }
  return {bad.empty(), detail};
}

Verdict ac10() {
  auto t0 = std::chrono::steady_clock::now();
  int code = cli_exit({"check", grammar_path("synthetic200.peg")});
  double t = seconds_since(t0);
  std::size_t rules = load_grammar_file(grammar_path("synthetic200.peg")).grammar.size();
  return {code == 0 && rules == 200 && t < 5,
          std::to_string(rules) + " rules, exit " + std::to_string(code) + ", " + fixed(t, 3) + " s"};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"AC1 oracle/interpreter agreement", ac1},
      {"AC2 arithmetic value", ac2},
      {"AC3 well-formedness verdicts", ac3},
      {"AC4 completeness on random grammars", ac4},
      {"AC5 property soundness", ac5},
      {"AC6 position bounds and mode agreement", ac6},
      {"AC7 linear scaling", ac7},
      {"AC8 bootstrap", ac8},
      {"AC9 reserved words and dangling else", ac9},
      {"AC10 check performance", ac10},
  };
  bool all = true;
  for (auto& [name, fn] : criteria) {
    Verdict v{false, ""};
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  return all ? 0 : 1;
}
