#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "trx/grammar.hpp"
#include "trx/interpreter.hpp"

namespace trx::oracle {

/// Either an outcome whose step index is within the fuel, or exhaustion: no
/// derivation with index <= fuel exists.
struct FueledOutcome {
  std::optional<ParseOutcome> outcome;

  bool exhausted() const noexcept { return !outcome.has_value(); }
  friend bool operator==(const FueledOutcome&, const FueledOutcome&) = default;
};

/// Direct recursive transcription of the semantics; no certificate, no
/// sharing. When `trace` is given, the name of every rule applied is
/// appended in the order derivations complete.
FueledOutcome eval(const Grammar& g, const Expr& e, std::string_view input, std::size_t pos,
                   std::uint64_t fuel, std::vector<std::string>* trace = nullptr);

/// eval of NonTerminal(start) at position 0, matching trx::parse.
FueledOutcome eval_start(const Grammar& g, std::string_view input, std::uint64_t fuel,
                         std::vector<std::string>* trace = nullptr);

/// Actions used by generated grammars: drop, leaf and "wrap" (v -> (v)).
const std::vector<ActionRef>& generator_actions();

struct GrammarShape {
  std::string alphabet = "ab";
  std::size_t max_productions = 4;
  std::size_t max_body_size = 7;
  bool with_actions = true;
};

/// Size-bounded recursive sampling. Constructor weights (atoms only once the
/// budget is 1; unary needs 2, binary 3):
///   Empty 1, AnyChar 1, Terminal 4, Range 1, NonTerminal 3,
///   Seq 4, Choice 4, Star 2, Not 2, Action 1.
/// Rules are named S, A, B, C, ... with S the start.
Grammar random_grammar(std::mt19937_64& rng, const GrammarShape& shape);

/// Every expression with at most `max_size` nodes over the given alphabet,
/// referring to the nonterminal `self` and using generator_actions().
std::vector<Expr> enumerate_exprs(std::string_view alphabet, std::size_t max_size,
                                  const std::string& self);

/// All strings over the alphabet of length <= max_len, shortest first.
std::vector<std::string> all_inputs(std::string_view alphabet, std::size_t max_len);

struct CaseConfig {
  std::string alphabet = "ab";
  /// Upper bound on productions of the random phase.
  std::size_t max_productions = 4;
  std::size_t max_input_len = 6;
  /// Exhaustive phase: every single-rule grammar S <- e with |e| <= this.
  std::size_t exhaustive_size = 3;
  /// Random phase: this many sampled grammars.
  std::size_t random_grammars = 400;
  std::size_t max_body_size = 7;
  bool with_actions = true;
  std::uint64_t seed = 1;
};

struct SmallCase {
  Grammar grammar;
  std::string input;
  std::size_t grammar_index;
};

/// Deterministic stream: all exhaustive grammars, then the random ones; each
/// grammar is paired with every input of length <= max_input_len.
class CaseStream {
 public:
  explicit CaseStream(CaseConfig config);

  std::optional<SmallCase> next();

  std::size_t grammars_emitted() const noexcept { return grammar_count_; }
  /// How many emitted grammars contain each core constructor, by ExprKind.
  const std::array<std::size_t, 10>& constructor_coverage() const noexcept { return coverage_; }

 private:
  bool advance_grammar();

  CaseConfig config_;
  std::mt19937_64 rng_;
  std::vector<std::string> inputs_;
  std::vector<Expr> exhaustive_;
  std::size_t exhaustive_pos_ = 0;
  std::size_t random_done_ = 0;
  std::optional<Grammar> current_;
  std::size_t input_pos_ = 0;
  std::size_t grammar_count_ = 0;
  std::array<std::size_t, 10> coverage_{};
};

CaseStream enumerate_small_cases(std::string_view alphabet, std::size_t max_grammar_size,
                                 std::size_t max_input_len, std::uint64_t seed = 1);

}  // namespace trx::oracle
