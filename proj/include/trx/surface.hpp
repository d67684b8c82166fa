#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trx/expr.hpp"

namespace trx {

/// Built-in actions used by desugaring and by the tree-shaping of textual
/// grammars. Labels are stable; the printer recognises them.
namespace builtin {

inline constexpr const char* kTuple2Str = "tuple2str";
inline constexpr const char* kCons = "cons";
inline constexpr const char* kSome = "some";
inline constexpr const char* kNone = "none";
inline constexpr const char* kDrop = "drop";
inline constexpr const char* kLeaf = "leaf";
inline constexpr const char* kNodePrefix = "node:";

/// Right-nested pair of chars -> Str.
ActionRef tuple2str();
/// (v, List vs) -> List (v :: vs).
ActionRef cons();
ActionRef some();
ActionRef none();
/// Anything -> Unit.
ActionRef drop();
/// Anything -> Leaf(matched span).
ActionRef leaf();
/// Anything -> TreeNode(rule, matched span, flattened children).
ActionRef node(const std::string& rule);

bool is_node_label(const std::string& label);
std::string node_rule(const std::string& label);

/// Collects Tree and Leaf values out of a nested value in input order,
/// merging leaves whose spans touch.
std::vector<Value> flatten_children(const Value& v);

}  // namespace builtin

struct ClassItem {
  unsigned char lo;
  unsigned char hi;
  bool single;  // written as one char rather than lo-hi

  static ClassItem one(unsigned char c) { return {c, c, true}; }
  static ClassItem span(unsigned char lo, unsigned char hi) { return {lo, hi, false}; }
};

enum class SurfaceKind : std::uint8_t {
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
  Literal,
  Plus,
  Optional,
  And,
  CharClass,
  Drop,
};

/// A parsing expression that may still contain derived operators.
class Surface {
 public:
  static Surface empty();
  static Surface any();
  static Surface terminal(unsigned char c);
  static Surface range(unsigned char lo, unsigned char hi);
  static Surface nonterminal(std::string name);
  static Surface seq(Surface left, Surface right);
  /// Right-nested sequence of one or more items.
  static Surface seq(std::vector<Surface> items);
  static Surface choice(Surface first, Surface second);
  static Surface choice(std::vector<Surface> items);
  static Surface star(Surface inner);
  static Surface not_(Surface inner);
  static Surface action(Surface inner, ActionRef fn);
  static Surface literal(std::string s);
  static Surface plus(Surface inner);
  static Surface optional(Surface inner);
  static Surface and_(Surface inner);
  static Surface char_class(std::vector<ClassItem> items);
  static Surface drop(Surface inner);

  SurfaceKind kind() const noexcept { return kind_; }
  const std::vector<Surface>& children() const noexcept { return children_; }
  const std::string& text() const noexcept { return text_; }
  unsigned char lo() const noexcept { return lo_; }
  unsigned char hi() const noexcept { return hi_; }
  const std::vector<ClassItem>& items() const noexcept { return items_; }
  const std::optional<ActionRef>& action_ref() const noexcept { return action_; }

 private:
  SurfaceKind kind_ = SurfaceKind::Empty;
  std::vector<Surface> children_;
  std::string text_;
  unsigned char lo_ = 0;
  unsigned char hi_ = 0;
  std::vector<ClassItem> items_;
  std::optional<ActionRef> action_;
};

/// Lifts a core expression into the surface language unchanged.
Surface embed(const Expr& e);

/// Expands derived operators into core constructors:
///   'c0..cn' = (c0 ; (c1 ; ... cn))[tuple2str]
///   e+       = (e ; e*)[cons]
///   e?       = e[some] / eps[none]
///   &e       = !!e
///   [items]  = right-nested choice of Terminal/Range in source order
///   ~e       = e[drop]
/// Throws GrammarError (InvalidRange, EmptyLiteral, EmptyClass).
Expr desugar(const Surface& e);

/// Wraps every atom (literal, class, terminal, range, any-char) in a leaf
/// action so it contributes its span to the enclosing tree node.
Surface with_leaves(const Surface& e);

}  // namespace trx
