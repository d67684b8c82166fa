#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trx/expr.hpp"
#include "trx/surface.hpp"

namespace trx {

namespace detail {
struct Program;
}

/// Nonterminal table plus start symbol. Immutable; copies share storage.
class Grammar {
 public:
  /// Desugars every rule and checks totality of the production map.
  /// Throws GrammarError (DuplicateRule, UndefinedNonterminal, UnknownStart,
  /// or any desugaring error).
  static Grammar build(const std::vector<std::pair<std::string, Surface>>& rules,
                       const std::string& start);
  static Grammar from_core(const std::vector<std::pair<std::string, Expr>>& rules,
                           const std::string& start);

  /// Rule names in definition order.
  const std::vector<std::string>& nonterminals() const noexcept;
  bool has(std::string_view name) const noexcept;
  /// Throws std::out_of_range for unknown names.
  const Expr& production(std::string_view name) const;
  std::size_t rule_index(std::string_view name) const;
  const std::string& start() const noexcept;
  std::size_t size() const noexcept { return nonterminals().size(); }

  /// Distinguishes grammar instances; certificates bind to it.
  const void* identity() const noexcept { return impl_.get(); }

  const detail::Program& program() const noexcept;

  /// Structural equality: same rule order, start and bodies.
  friend bool operator==(const Grammar& a, const Grammar& b);

 private:
  struct Impl;
  explicit Grammar(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// Same productions regardless of rule order (start and bodies by name).
bool same_production_map(const Grammar& a, const Grammar& b);

}  // namespace trx
