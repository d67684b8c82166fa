#include "trx/errors.hpp"

namespace trx {

const char* to_string(GrammarErrorKind kind) {
  switch (kind) {
    case GrammarErrorKind::InvalidRange: return "InvalidRange";
    case GrammarErrorKind::EmptyLiteral: return "EmptyLiteral";
    case GrammarErrorKind::EmptyClass: return "EmptyClass";
    case GrammarErrorKind::DuplicateRule: return "DuplicateRule";
    case GrammarErrorKind::UndefinedNonterminal: return "UndefinedNonterminal";
    case GrammarErrorKind::UnknownStart: return "UnknownStart";
    case GrammarErrorKind::DuplicateStart: return "DuplicateStart";
  }
  return "?";
}

GrammarError::GrammarError(GrammarErrorKind kind, std::string symbol, std::string detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      symbol_(std::move(symbol)) {}

SyntaxError::SyntaxError(std::size_t offset, std::size_t line, std::size_t column,
                         std::string context)
    : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + context),
      offset_(offset),
      line_(line),
      column_(column),
      context_(std::move(context)) {}

}  // namespace trx
