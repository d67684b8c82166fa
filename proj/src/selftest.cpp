#include "trx/selftest.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "trx/analysis.hpp"
#include "trx/errors.hpp"
#include "trx/meta_grammar.hpp"

namespace trx::selftest {

using Clock = std::chrono::steady_clock;

Deadline Deadline::after(double seconds) {
  Deadline d;
  d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
  return d;
}

Deadline Deadline::never() {
  Deadline d;
  d.unlimited_ = true;
  return d;
}

bool Deadline::passed() const { return !unlimited_ && Clock::now() >= at_; }

std::string describe(const ParseOutcome& o) {
  if (!o.ok()) return "Fail, steps=" + std::to_string(o.steps);
  return "Ok(" + std::to_string(o.match->next_pos) + ", " + o.match->value.repr() +
         "), steps=" + std::to_string(o.steps);
}

namespace {

constexpr std::size_t kMaxSamples = 5;

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_ = Clock::now();
};

void record(SuiteResult& r, const std::string& what) {
  ++r.failures;
  if (r.samples.size() < kMaxSamples) r.samples.push_back(what);
}

// The dump on one line.
std::string grammar_text(const Grammar& g) {
  std::string s = dump_grammar(g);
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string case_text(const oracle::SmallCase& c) {
  return "grammar {" + grammar_text(c.grammar) + "} input \"" + c.input + "\"";
}

// Certificate of the current grammar of a stream, recomputed when it changes.
class CertCache {
 public:
  const Certificate* get(const oracle::SmallCase& c) {
    if (index_ != c.grammar_index || !valid_) {
      index_ = c.grammar_index;
      valid_ = true;
      cert_ = check_well_formed(c.grammar).certificate;
      if (cert_) ++certified_grammars_;
      ++grammars_;
    }
    return cert_ ? &*cert_ : nullptr;
  }
  std::size_t grammars() const { return grammars_; }
  std::size_t certified_grammars() const { return certified_grammars_; }

 private:
  std::size_t index_ = 0;
  bool valid_ = false;
  std::optional<Certificate> cert_;
  std::size_t grammars_ = 0;
  std::size_t certified_grammars_ = 0;
};

}  // namespace

SuiteResult differential(const oracle::CaseConfig& cfg, Deadline deadline) {
  SuiteResult r{"differential"};
  Timer timer;
  oracle::CaseStream stream(cfg);
  CertCache certs;
  std::size_t skipped = 0;
  while (auto c = stream.next()) {
    if (deadline.passed()) {
      r.truncated = true;
      break;
    }
    const Certificate* cert = certs.get(*c);
    if (cert == nullptr) {
      ++skipped;
      continue;
    }
    ++r.cases;
    try {
      ParseOutcome plain = parse(c->grammar, *cert, c->input, ParseMode::Plain);
      ParseOutcome packrat = parse(c->grammar, *cert, c->input, ParseMode::Packrat);
      auto exact = oracle::eval_start(c->grammar, c->input, plain.steps);
      if (exact.exhausted() || *exact.outcome != plain) {
        record(r, case_text(*c) + ": interpreter " + describe(plain) + ", oracle " +
                      (exact.exhausted() ? "exhausted" : describe(*exact.outcome)));
        continue;
      }
      if (!oracle::eval_start(c->grammar, c->input, plain.steps - 1).exhausted()) {
        record(r, case_text(*c) + ": oracle finished with less fuel than " + std::to_string(plain.steps));
        continue;
      }
      auto more = oracle::eval_start(c->grammar, c->input, plain.steps + 1 + plain.steps / 2);
      if (more.exhausted() || *more.outcome != plain) {
        record(r, case_text(*c) + ": oracle outcome changed with more fuel");
        continue;
      }
      if (packrat != plain) {
        record(r, case_text(*c) + ": packrat " + describe(packrat) + ", plain " + describe(plain));
      }
    } catch (const InvariantViolation& e) {
      record(r, case_text(*c) + ": invariant violation: " + e.what());
    }
  }
  r.note = std::to_string(certs.certified_grammars()) + " of " + std::to_string(certs.grammars()) +
           " grammars certified, " + std::to_string(skipped) + " uncertified cases skipped";
  r.seconds = timer.seconds();
  return r;
}

SuiteResult property_soundness(const oracle::CaseConfig& cfg, Deadline deadline) {
  SuiteResult r{"property-soundness"};
  Timer timer;
  oracle::CaseStream stream(cfg);
  std::optional<PropertyTable> props;
  std::size_t index = 0;
  bool certified = false;
  while (auto c = stream.next()) {
    if (deadline.passed()) {
      r.truncated = true;
      break;
    }
    if (!props || index != c->grammar_index) {
      index = c->grammar_index;
      props = infer_properties(c->grammar);
      certified = check_well_formed(c->grammar, *props).is_well_formed;
    }
    // Certified grammars always finish; elsewhere a small fuel keeps
    // runaway recursion cheap, and exhausted runs observe nothing.
    const std::uint64_t fuel = certified ? 1'000'000 : 64;
    const ExprSet& domain = props->domain();
    for (std::size_t i = 0; i < domain.size(); ++i) {
      auto out = oracle::eval(c->grammar, domain[i], c->input, 0, fuel);
      if (out.exhausted()) continue;
      ++r.cases;
      const Properties& p = (*props)[i];
      const char* missing = nullptr;
      if (!out.outcome->ok()) {
        if (!p.can_fail) missing = "fail";
      } else if (out.outcome->match->next_pos == 0) {
        if (!p.empty_success) missing = "0";
      } else if (!p.consuming_success) {
        missing = ">0";
      }
      if (missing != nullptr) {
        record(r, case_text(*c) + ": expression " + to_text(domain[i]) + " showed '" + missing +
                      "' but the flag is unset");
      }
    }
  }
  r.note = "observations over E(G), uncertified grammars at fuel 64";
  r.seconds = timer.seconds();
  return r;
}

SuiteResult unambiguity(const oracle::CaseConfig& cfg, Deadline deadline, std::size_t stride) {
  SuiteResult r{"unambiguity"};
  Timer timer;
  oracle::CaseStream stream(cfg);
  CertCache certs;
  std::size_t seen = 0;
  while (auto c = stream.next()) {
    if (deadline.passed()) {
      r.truncated = true;
      break;
    }
    if (certs.get(*c) == nullptr || seen++ % stride != 0) continue;
    ++r.cases;
    std::vector<std::string> first;
    std::vector<std::string> second;
    auto a = oracle::eval_start(c->grammar, c->input, 1'000'000, &first);
    auto b = oracle::eval_start(c->grammar, c->input, 1'000'000, &second);
    if (a != b || first != second || first.empty()) record(r, case_text(*c) + ": traces differ");
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult stream_checks(const oracle::CaseConfig& cfg) {
  SuiteResult r{"stream"};
  Timer timer;
  oracle::CaseStream a(cfg);
  oracle::CaseStream b(cfg);
  oracle::CaseConfig reseeded = cfg;
  reseeded.seed = cfg.seed + 1;
  oracle::CaseStream other(reseeded);
  bool differs = false;
  while (true) {
    auto x = a.next();
    auto y = b.next();
    auto z = other.next();
    if (!x || !y) {
      if (x.has_value() != y.has_value()) record(r, "streams with the same seed have different lengths");
      break;
    }
    ++r.cases;
    if (!(x->grammar == y->grammar) || x->input != y->input) {
      record(r, "same seed, different case at position " + std::to_string(r.cases));
      break;
    }
    if (z && !(z->grammar == x->grammar)) differs = true;
  }
  if (cfg.random_grammars > 0 && !differs) record(r, "a different seed produced the same stream");
  const auto& cover = a.constructor_coverage();
  for (std::size_t k = 0; k < cover.size(); ++k) {
    if (cover[k] == 0 && (cfg.with_actions || static_cast<ExprKind>(k) != ExprKind::Action)) {
      record(r, std::string("constructor never generated: ") + to_string(static_cast<ExprKind>(k)));
    }
  }
  r.note = std::to_string(a.grammars_emitted()) + " grammars";
  r.seconds = timer.seconds();
  return r;
}

namespace {

std::string random_input(std::mt19937_64& rng, const std::string& alphabet, std::size_t max_len) {
  std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s(len, ' ');
  for (char& ch : s) ch = alphabet[pick(rng)];
  return s;
}

// Draws random grammars until one is certified.
std::pair<Grammar, Certificate> certified_grammar(std::mt19937_64& rng, const oracle::GrammarShape& shape) {
  while (true) {
    Grammar g = oracle::random_grammar(rng, shape);
    auto report = check_well_formed(g);
    if (report.certificate) return {g, *report.certificate};
  }
}

}  // namespace

SuiteResult completeness(const RandomConfig& cfg, Deadline deadline) {
  SuiteResult r{"completeness"};
  Timer timer;
  std::mt19937_64 rng(cfg.seed);
  // Inputs may contain a byte no grammar mentions.
  const std::string alphabet = cfg.shape.alphabet + "z";
  double slowest = 0;
  for (std::size_t gi = 0; gi < cfg.grammars && !r.truncated; ++gi) {
    auto [g, cert] = certified_grammar(rng, cfg.shape);
    for (std::size_t k = 0; k < cfg.inputs_per_grammar; ++k) {
      if (deadline.passed()) {
        r.truncated = true;
        break;
      }
      std::string input = random_input(rng, alphabet, cfg.max_input_len);
      ++r.cases;
      Timer one;
      try {
        ParseOutcome out = parse(g, cert, input, ParseMode::Packrat);
        if (out.ok() && out.match->next_pos > input.size()) record(r, "position past end");
      } catch (const std::exception& e) {
        record(r, "grammar {" + grammar_text(g) + "} input \"" + input + "\": " + e.what());
      }
      double t = one.seconds();
      slowest = std::max(slowest, t);
      if (t > cfg.case_ceiling_seconds) record(r, "case exceeded the time ceiling");
    }
  }
  std::ostringstream note;
  note << cfg.grammars << " certified grammars, slowest case " << std::fixed << std::setprecision(4)
       << slowest << " s";
  r.note = note.str();
  r.seconds = timer.seconds();
  return r;
}

SuiteResult mode_agreement(std::uint64_t seed, std::size_t cases, std::size_t max_len, Deadline deadline) {
  SuiteResult r{"mode-agreement"};
  Timer timer;
  std::mt19937_64 rng(seed);
  oracle::GrammarShape shape{"ab", 4, 8, true};
  while (r.cases < cases) {
    if (deadline.passed()) {
      r.truncated = true;
      break;
    }
    auto [g, cert] = certified_grammar(rng, shape);
    std::string input = random_input(rng, shape.alphabet, max_len);
    ++r.cases;
    try {
      ParseOutcome plain = parse(g, cert, input, ParseMode::Plain);
      ParseOutcome packrat = parse(g, cert, input, ParseMode::Packrat);
      if (plain != packrat) {
        record(r, "grammar {" + grammar_text(g) + "} input \"" + input + "\": plain " + describe(plain) +
                      ", packrat " + describe(packrat));
      }
    } catch (const InvariantViolation& e) {
      record(r, std::string("invariant violation: ") + e.what());
    }
  }
  r.seconds = timer.seconds();
  return r;
}

bool run_all(const Config& cfg, std::ostream& log, std::vector<SuiteResult>* results) {
  Deadline deadline = Deadline::after(cfg.budget_seconds);
  oracle::CaseConfig cases;
  cases.seed = cfg.seed;
  RandomConfig random;
  random.seed = cfg.seed;

  bool ok = true;
  auto report = [&](SuiteResult r) {
    ok = ok && r.ok();
    log << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.failures
        << " failures, " << std::fixed << std::setprecision(2) << r.seconds << " s";
    if (r.truncated) log << " (budget reached)";
    if (!r.note.empty()) log << " [" << r.note << "]";
    log << '\n';
    for (const std::string& s : r.samples) log << "    " << s << '\n';
    if (results != nullptr) results->push_back(std::move(r));
  };
  report(stream_checks(cases));
  report(differential(cases, deadline));
  report(property_soundness(cases, deadline));
  report(unambiguity(cases, deadline));
  report(mode_agreement(cfg.seed, 1000, 12, deadline));
  report(completeness(random, deadline));
  return ok;
}

}  // namespace trx::selftest
