#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trx {

enum class GrammarErrorKind {
  InvalidRange,
  EmptyLiteral,
  EmptyClass,
  DuplicateRule,
  UndefinedNonterminal,
  UnknownStart,
  DuplicateStart,
};

const char* to_string(GrammarErrorKind kind);

/// Raised while desugaring or assembling a grammar.
class GrammarError : public std::runtime_error {
 public:
  GrammarError(GrammarErrorKind kind, std::string symbol, std::string detail);

  GrammarErrorKind kind() const noexcept { return kind_; }
  /// The rule (or nonterminal) the error is about, empty when not applicable.
  const std::string& symbol() const noexcept { return symbol_; }

  /// Source position in a textual grammar; 0 when unknown.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  void locate(std::size_t line, std::size_t column) noexcept {
    line_ = line;
    column_ = column;
  }

 private:
  GrammarErrorKind kind_;
  std::string symbol_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

/// The textual grammar did not match the meta-grammar.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, std::size_t line, std::size_t column,
              std::string context);

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& context() const noexcept { return context_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
  std::string context_;
};

/// A defect: an internal invariant that the analysis guarantees was broken.
/// Never part of a normal result.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace trx
