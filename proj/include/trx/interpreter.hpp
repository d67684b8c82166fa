#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "trx/analysis.hpp"
#include "trx/grammar.hpp"
#include "trx/value.hpp"

namespace trx {

struct Match {
  std::size_t next_pos = 0;
  Value value;

  friend bool operator==(const Match&, const Match&) = default;
};

/// Fail (no match) or Ok(next position, value), with the exact number of
/// semantic steps of the derivation.
struct ParseOutcome {
  std::optional<Match> match;
  std::uint64_t steps = 0;

  bool ok() const noexcept { return match.has_value(); }
  friend bool operator==(const ParseOutcome&, const ParseOutcome&) = default;
};

enum class ParseMode { Plain, Packrat };

struct MemoStats {
  std::size_t entries = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
};

struct ParseStats {
  /// Farthest position at which a character test (terminal, range,
  /// any-char) failed; 0 when none failed.
  std::size_t farthest_failure = 0;
  MemoStats memo;
  /// Largest evaluation-stack depth reached.
  std::size_t max_depth = 0;
};

/// Runs the start rule on `input`. Total for certified grammars; throws
/// std::invalid_argument if `cert` does not certify `g`, and
/// InvariantViolation on a broken internal invariant.
ParseOutcome parse(const Grammar& g, const Certificate& cert, std::string_view input,
                   ParseMode mode = ParseMode::Plain, ParseStats* stats = nullptr);

/// Evaluates one rule of `g` at `pos`, as if called through a nonterminal.
ParseOutcome parse_rule(const Grammar& g, const Certificate& cert, std::string_view rule,
                        std::string_view input, std::size_t pos,
                        ParseMode mode = ParseMode::Plain, ParseStats* stats = nullptr);

/// parse() for grammars loaded from text; a successful outcome's value is the
/// start rule's TreeNode. Throws std::invalid_argument when the start rule is
/// not tree-shaped.
ParseOutcome parse_to_tree(const Grammar& g, const Certificate& cert, std::string_view input,
                           ParseMode mode = ParseMode::Plain, ParseStats* stats = nullptr);

}  // namespace trx
