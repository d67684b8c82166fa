#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trx/expr.hpp"

namespace trx::detail {

/// Flat form of a grammar used by the interpreter. Child links are indices
/// into `code`; a NonTerminal links to its rule's body.
struct Instr {
  ExprKind kind;
  unsigned char lo = 0;
  unsigned char hi = 0;
  std::uint32_t a = 0;  // left/inner child, or body root for NonTerminal
  std::uint32_t b = 0;  // right child, or rule index for NonTerminal
  std::uint32_t action = 0;
};

struct Program {
  std::vector<Instr> code;
  std::vector<ActionRef> actions;
  std::vector<std::uint32_t> rule_body;   // rule index -> body root
  std::vector<std::uint32_t> rule_entry;  // rule index -> NonTerminal node
};

Program compile(const std::vector<std::string>& names, const std::vector<Expr>& bodies);

}  // namespace trx::detail
