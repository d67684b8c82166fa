#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trx/analysis.hpp"
#include "trx/grammar.hpp"
#include "trx/surface.hpp"
#include "trx/value.hpp"

namespace trx {

enum class LoadMode {
  /// Every rule builds a TreeNode and atoms contribute leaf spans.
  Shaped,
  /// Plain desugaring, no tree-shaping actions.
  Raw,
};

struct SourcePos {
  std::size_t offset = 0;
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
};

/// 1-based line and column of a byte offset.
SourcePos position_of(std::string_view text, std::size_t offset);

struct RuleSource {
  std::string name;
  SourcePos pos;
};

/// A loaded grammar together with where each rule was defined.
struct GrammarSource {
  std::string path;  // empty for inline text
  std::vector<RuleSource> rules;
  std::optional<RuleSource> start_pragma;
  Grammar grammar;

  /// nullptr when no rule has that name.
  const RuleSource* find(std::string_view rule) const;
};

/// Applies textual tree-shaping to surface rules: leaves on atoms and a
/// node action around each body.
Grammar shape_grammar(const std::vector<std::pair<std::string, Surface>>& rules,
                      const std::string& start);

/// The built-in grammar of the `.peg` format, in Shaped form, and its
/// certificate.
const Grammar& meta_grammar();
const Certificate& meta_certificate();

/// Parses `.peg` text with the built-in meta-grammar and lowers the tree.
/// Throws SyntaxError, then GrammarError.
Grammar load_grammar(std::string_view text, LoadMode mode = LoadMode::Shaped);
GrammarSource load_grammar_source(std::string_view text, LoadMode mode = LoadMode::Shaped,
                                  std::string path = {});

/// As load_grammar_source, using `parser` (which must have the meta-grammar's
/// rule names and tree shape) instead of the built-in one.
GrammarSource load_grammar_with(const Grammar& parser, const Certificate& cert,
                                std::string_view text, LoadMode mode = LoadMode::Shaped,
                                std::string path = {});

/// Reads a file and loads it. Throws std::runtime_error on I/O failure.
GrammarSource load_grammar_file(const std::string& path, LoadMode mode = LoadMode::Shaped);

/// Canonical text: an optional `@start` pragma, then one `name <- body ;`
/// line per rule in definition order. load_grammar(dump_grammar(g)) == g
/// when g came from load_grammar (in the same mode), or from core
/// expressions without embedder actions in Raw mode.
std::string dump_grammar(const Grammar& g);

}  // namespace trx
