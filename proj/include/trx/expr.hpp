#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "trx/value.hpp"

namespace trx {

enum class ExprKind : std::uint8_t {
  Empty,
  AnyChar,
  Terminal,
  Range,
  NonTerminal,
  Seq,
  Choice,
  Star,
  Not,
  Action,
};

const char* to_string(ExprKind kind);

/// Semantic action attached by the coercion operator. Identity (for equality
/// and printing) is the label; the function must be total.
class ActionRef {
 public:
  using Fn = std::function<Value(const Value& inner, Span matched)>;

  ActionRef(std::string label, Fn fn);

  const std::string& label() const noexcept { return *label_; }
  Value apply(const Value& v, Span matched) const { return (*fn_)(v, matched); }

 private:
  std::shared_ptr<const std::string> label_;
  std::shared_ptr<const Fn> fn_;
};

/// Untyped parsing expression. Nodes are immutable and shared; equality and
/// hashing are structural (Action nodes compare by label).
class Expr {
 public:
  static Expr empty();
  static Expr any();
  static Expr terminal(unsigned char c);
  /// Throws GrammarError(InvalidRange) when lo > hi.
  static Expr range(unsigned char lo, unsigned char hi);
  static Expr nonterminal(std::string name);
  static Expr seq(Expr left, Expr right);
  static Expr choice(Expr first, Expr second);
  static Expr star(Expr inner);
  static Expr not_(Expr inner);
  static Expr action(Expr inner, ActionRef fn);

  ExprKind kind() const noexcept;

  /// Terminal character, or the low bound of a Range.
  unsigned char lo() const;
  unsigned char hi() const;
  const std::string& name() const;

  /// First child (Seq/Choice left, Star/Not/Action inner).
  const Expr& left() const;
  const Expr& right() const;
  const Expr& inner() const { return left(); }
  const ActionRef& action_ref() const;

  std::size_t child_count() const noexcept;
  const Expr& child(std::size_t i) const;

  std::size_t hash() const noexcept;
  /// Node address; distinct for distinct allocations even if structurally equal.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Node n);

  std::shared_ptr<const Node> node_;
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const noexcept { return e.hash(); }
};

/// Number of nodes in the expression tree.
std::size_t expr_size(const Expr& e);

/// Canonical textual form in `.peg` syntax. Desugared forms produced by this
/// library (literals, `+`, `?`, `~`, tree-shaping wrappers) are printed back
/// in their surface spelling.
std::string to_text(const Expr& e);

/// Escapes one byte for use inside a quoted literal or a character class.
std::string escape_char(unsigned char c, bool in_class);

}  // namespace trx
