#include "trx/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "trx/bench.hpp"
#include "trx/calculator.hpp"
#include "trx/corpus.hpp"
#include "trx/errors.hpp"
#include "trx/interpreter.hpp"
#include "trx/meta_grammar.hpp"
#include "trx/selftest.hpp"
#include "trx/tree_json.hpp"

namespace trx::cli {

namespace {

using json = nlohmann::ordered_json;

class Painter {
 public:
  Painter() {
    const char* v = std::getenv("TRX_COLOR");
    on_ = v != nullptr && std::string(v) == "1";
  }
  std::string good(const std::string& s) const { return wrap("32", s); }
  std::string bad(const std::string& s) const { return wrap("31", s); }

 private:
  std::string wrap(const char* code, const std::string& s) const {
    return on_ ? "\x1b[" + std::string(code) + "m" + s + "\x1b[0m" : s;
  }
  bool on_ = false;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

std::string where(const std::string& path, const SourcePos& p) {
  return path + ":" + std::to_string(p.line) + ":" + std::to_string(p.column);
}

// Loads a grammar file, reporting failures on `err`. nullopt means the
// caller should exit with kUsage.
std::optional<GrammarSource> load(const std::string& path, std::ostream& err,
                                  LoadMode mode = LoadMode::Shaped) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    err << "trx: " << e.what() << '\n';
    return std::nullopt;
  }
  try {
    return load_grammar_source(text, mode, path);
  } catch (const SyntaxError& e) {
    err << path << ':' << e.line() << ':' << e.column() << ": syntax error: " << e.context() << '\n';
  } catch (const GrammarError& e) {
    err << path;
    if (e.line() > 0) err << ':' << e.line() << ':' << e.column();
    err << ": " << e.what() << '\n';
  }
  return std::nullopt;
}

json report_json(const GrammarSource& src, const WfReport& rep, double seconds) {
  json offenders = json::array();
  for (const Offender& o : rep.offenders) {
    json j{{"rule", o.production}, {"expression", to_text(o.expression)}, {"reason", to_string(o.reason)}};
    if (const RuleSource* r = src.find(o.production)) {
      j["line"] = r->pos.line;
      j["column"] = r->pos.column;
    }
    offenders.push_back(std::move(j));
  }
  return json{
      {"grammar", src.path},
      {"well_formed", rep.is_well_formed},
      {"analysis", rep.mode == AnalysisMode::Full ? "full" : "simplified"},
      {"rules", src.grammar.size()},
      {"start", src.grammar.start()},
      {"expressions", rep.expressions.size()},
      {"well_formed_expressions", rep.well_formed.size()},
      {"passes", rep.passes},
      {"offenders", std::move(offenders)},
      {"seconds", seconds},
  };
}

int cmd_check(const std::string& path, const std::string& analysis, bool text, std::ostream& out,
              std::ostream& err) {
  auto t0 = std::chrono::steady_clock::now();
  auto src = load(path, err);
  if (!src) return kUsage;
  AnalysisMode mode = analysis == "simplified" ? AnalysisMode::Simplified : AnalysisMode::Full;
  WfReport rep = check_well_formed(src->grammar, mode);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (text) {
    Painter paint;
    out << path << ": " << (rep.is_well_formed ? paint.good("well-formed") : paint.bad("not well-formed"))
        << " (" << src->grammar.size() << " rules, " << rep.expressions.size() << " expressions, "
        << std::fixed << std::setprecision(3) << seconds << " s)\n";
    for (const Offender& o : rep.offenders) {
      const RuleSource* r = src->find(o.production);
      out << "  " << (r ? where(path, r->pos) : path) << ": rule '" << o.production << "' blocked at "
          << to_text(o.expression) << " (" << to_string(o.reason) << ")\n";
    }
  } else {
    out << report_json(*src, rep, seconds).dump(2) << '\n';
  }
  return rep.is_well_formed ? kOk : kReject;
}

struct ParseArgs {
  std::string grammar;
  std::string input_path;
  std::optional<std::string> input_text;
  std::string mode = "plain";
  bool json = false;
  bool prefix = false;
  bool eval = false;
};

int cmd_parse(const ParseArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  if (a.input_path.empty() == !a.input_text.has_value()) {
    err << "trx parse: give exactly one input: a path, '-' for stdin, or --string\n";
    return kUsage;
  }
  std::string input;
  if (a.input_text) {
    input = *a.input_text;
  } else if (a.input_path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    input = buf.str();
  } else {
    try {
      input = read_file(a.input_path);
    } catch (const std::exception& e) {
      err << "trx: " << e.what() << '\n';
      return kUsage;
    }
  }

  auto src = load(a.grammar, err);
  if (!src) return kUsage;
  WfReport rep = check_well_formed(src->grammar);
  if (!rep.certificate) {
    err << "trx parse: refusing to run '" << a.grammar << "': grammar is not well-formed\n";
    for (const Offender& o : rep.offenders) {
      err << "  rule '" << o.production << "' blocked at " << to_text(o.expression) << " ("
          << to_string(o.reason) << ")\n";
    }
    return kRefused;
  }
  Painter paint;

  if (a.eval) {
    auto raw = load(a.grammar, err, LoadMode::Raw);
    if (!raw) return kUsage;
    if (!(raw->grammar == calculator::plain_grammar())) {
      err << "trx parse --eval: only the bundled arithmetic grammar (math.peg) has evaluation actions\n";
      return kUsage;
    }
    auto v = calculator::evaluate(input);
    if (!v) {
      out << paint.bad("reject") << ": not an arithmetic expression\n";
      return kReject;
    }
    if (a.json) {
      out << json{{"ok", true}, {"value", *v}}.dump() << '\n';
    } else {
      out << *v << '\n';
    }
    return kOk;
  }

  ParseMode mode = a.mode == "packrat" ? ParseMode::Packrat : ParseMode::Plain;
  ParseStats stats;
  ParseOutcome res = parse_to_tree(src->grammar, *rep.certificate, input, mode, &stats);
  bool accepted = res.ok() && (a.prefix || res.match->next_pos == input.size());
  if (accepted) {
    std::size_t consumed = res.match->next_pos;
    if (a.json) {
      out << "{\"ok\":true,\"consumed\":" << consumed << ",\"length\":" << input.size() << ",\"tree\":";
      write_tree_json(out, res.match->value, input);
      out << "}\n";
    } else {
      out << paint.good("match") << ": consumed " << consumed << " of " << input.size() << " bytes\n";
      write_tree_outline(out, res.match->value, input);
    }
    return kOk;
  }
  std::size_t at = stats.farthest_failure;
  if (res.ok()) at = std::max(at, res.match->next_pos);
  SourcePos p = position_of(input, at);
  if (a.json) {
    json j{{"ok", false}, {"farthest_failure", at}, {"line", p.line}, {"column", p.column}};
    j["consumed"] = res.ok() ? json(res.match->next_pos) : json(nullptr);
    out << j.dump() << '\n';
  } else {
    out << paint.bad("reject") << ": failed at byte " << at << " (line " << p.line << ", column "
        << p.column << ")";
    if (res.ok()) out << "; the start rule matched only " << res.match->next_pos << " bytes";
    out << '\n';
  }
  return kReject;
}

struct BenchArgs {
  std::string grammar;
  std::string gen = "xmark-lite";
  std::string sizes = "1M,2M,4M";
  std::string mode = "plain";
  std::uint64_t seed = 1;
  std::size_t runs = 5;
  bool json = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  auto src = load(a.grammar, err);
  if (!src) return kUsage;
  WfReport rep = check_well_formed(src->grammar);
  if (!rep.certificate) {
    err << "trx bench: grammar is not well-formed\n";
    return kRefused;
  }
  std::vector<std::pair<std::string, std::string>> inputs;
  try {
    if (a.gen == "xmark-lite" || a.gen == "backtrack") {
      for (std::size_t n : bench::parse_sizes(a.sizes)) {
        inputs.emplace_back(bench::size_label(n),
                            a.gen == "backtrack" ? corpus::backtrack(n) : corpus::xmark_lite(n, a.seed));
      }
    } else {
      namespace fs = std::filesystem;
      if (!fs::is_directory(a.gen)) {
        err << "trx bench: --gen must be xmark-lite, backtrack or a corpus directory\n";
        return kUsage;
      }
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(a.gen)) {
        if (e.is_regular_file()) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) inputs.emplace_back(f.filename().string(), read_file(f.string()));
    }
  } catch (const std::exception& e) {
    err << "trx bench: " << e.what() << '\n';
    return kUsage;
  }
  ParseMode mode = a.mode == "packrat" ? ParseMode::Packrat : ParseMode::Plain;
  auto rows = bench::run(src->grammar, *rep.certificate, inputs, mode, std::max<std::size_t>(1, a.runs));

  if (a.json) {
    json jrows = json::array();
    for (const auto& r : rows) {
      json j{{"label", r.label},
             {"bytes", r.bytes},
             {"median_seconds", r.median},
             {"runs", r.runs},
             {"bytes_per_second", r.median > 0 ? r.bytes / r.median : 0.0},
             {"ratio", r.ratio > 0 ? json(r.ratio) : json(nullptr)},
             {"matched", r.matched}};
      if (mode == ParseMode::Packrat) {
        j["memo"] = {{"entries", r.memo.entries}, {"hits", r.memo.hits}, {"misses", r.memo.misses}};
      }
      jrows.push_back(std::move(j));
    }
    out << json{{"grammar", a.grammar}, {"generator", a.gen}, {"mode", a.mode},
                {"runs", a.runs},       {"seed", a.seed},     {"rows", std::move(jrows)}}
               .dump(2)
        << '\n';
    return kOk;
  }
  out << std::left << std::setw(10) << "input" << std::right << std::setw(12) << "bytes" << std::setw(12)
      << "median s" << std::setw(10) << "MB/s" << std::setw(8) << "ratio" << std::setw(9) << "matched";
  if (mode == ParseMode::Packrat) out << std::setw(12) << "memo" << std::setw(12) << "hits";
  out << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(10) << r.label << std::right << std::setw(12) << r.bytes << std::fixed
        << std::setprecision(4) << std::setw(12) << r.median << std::setprecision(2) << std::setw(10)
        << (r.median > 0 ? r.bytes / r.median / 1e6 : 0.0) << std::setw(8);
    if (r.ratio > 0) {
      out << r.ratio;
    } else {
      out << "-";
    }
    out << std::setw(9) << (r.matched ? "yes" : "no");
    if (mode == ParseMode::Packrat) out << std::setw(12) << r.memo.entries << std::setw(12) << r.memo.hits;
    out << '\n';
  }
  out << "median of " << a.runs << " runs, mode " << a.mode << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parsing expression grammar toolkit", "trx"};
  app.require_subcommand(1);

  std::string check_path;
  std::string analysis = "full";
  bool check_text = false;
  auto* check = app.add_subcommand("check", "Check a grammar for well-formedness; prints a JSON report");
  check->add_option("grammar", check_path, "Grammar file (.peg)")->required();
  check->add_option("--analysis", analysis, "full or simplified")->check(CLI::IsMember({"full", "simplified"}));
  check->add_flag("--text", check_text, "Human-readable report");

  ParseArgs pa;
  auto* parse_cmd = app.add_subcommand("parse", "Parse an input with a grammar");
  parse_cmd->add_option("grammar", pa.grammar, "Grammar file (.peg)")->required();
  parse_cmd->add_option("input", pa.input_path, "Input file, or - for stdin");
  parse_cmd->add_option("--string", pa.input_text, "Inline input text");
  parse_cmd->add_option("--mode", pa.mode, "plain or packrat")->check(CLI::IsMember({"plain", "packrat"}));
  parse_cmd->add_flag("--json", pa.json, "JSON output");
  parse_cmd->add_flag("--prefix", pa.prefix, "Accept when a prefix of the input matches");
  parse_cmd->add_flag("--eval", pa.eval, "Evaluate with the built-in arithmetic actions (math.peg only)");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Time parses of generated or stored inputs");
  bench_cmd->add_option("grammar", ba.grammar, "Grammar file (.peg)")->required();
  bench_cmd->add_option("--gen", ba.gen, "xmark-lite, backtrack, or a directory of input files");
  bench_cmd->add_option("--sizes", ba.sizes, "Comma-separated sizes, K/M suffixes allowed");
  bench_cmd->add_option("--mode", ba.mode, "plain or packrat")->check(CLI::IsMember({"plain", "packrat"}));
  bench_cmd->add_option("--seed", ba.seed, "Generator seed");
  bench_cmd->add_option("--runs", ba.runs, "Repetitions per input; the median is reported");
  bench_cmd->add_flag("--json", ba.json, "JSON output");

  selftest::Config st;
  auto* self = app.add_subcommand("selftest", "Run the oracle and property suites");
  self->group("");
  self->add_option("--seed", st.seed, "Case stream seed");
  self->add_option("--budget", st.budget_seconds, "Time budget in seconds");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_path, analysis, check_text, out, err);
    if (parse_cmd->parsed()) return cmd_parse(pa, in, out, err);
    if (bench_cmd->parsed()) return cmd_bench(ba, out, err);
    if (self->parsed()) return selftest::run_all(st, out) ? kOk : kReject;
  } catch (const InvariantViolation& e) {
    err << "trx: internal error: " << e.what() << '\n';
    return 70;
  }
  return kUsage;
}

}  // namespace trx::cli
