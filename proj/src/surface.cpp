#include "trx/surface.hpp"

#include <stdexcept>

#include "trx/errors.hpp"

namespace trx {

namespace builtin {

namespace {

void collect_chars(const Value& v, std::string& out) {
  // Literal values are right-nested pairs: (c0, (c1, (... cn))).
  const Value* cur = &v;
  while (cur->is(Value::Kind::Tuple)) {
    const auto& items = cur->items();
    out.push_back(static_cast<char>(items.at(0).as_char()));
    cur = &items.at(1);
  }
  out.push_back(static_cast<char>(cur->as_char()));
}

void flatten_into(const Value& v, std::vector<Value>& out) {
  switch (v.kind()) {
    case Value::Kind::Tree:
      out.push_back(v);
      break;
    case Value::Kind::Leaf: {
      Span s = v.as_leaf();
      if (s.size() == 0) break;
      if (!out.empty() && out.back().is(Value::Kind::Leaf) && out.back().as_leaf().end == s.start) {
        out.back() = Value::leaf({out.back().as_leaf().start, s.end});
      } else {
        out.push_back(v);
      }
      break;
    }
    case Value::Kind::Tuple:
    case Value::Kind::List:
      for (const Value& item : v.items()) flatten_into(item, out);
      break;
    case Value::Kind::Opt:
      if (const Value* inner = v.as_opt()) flatten_into(*inner, out);
      break;
    case Value::Kind::Unit:
    case Value::Kind::Char:
    case Value::Kind::Str:
    case Value::Kind::User:
      break;
  }
}

}  // namespace

ActionRef tuple2str() {
  static const ActionRef ref{kTuple2Str, [](const Value& v, Span) {
                               std::string s;
                               collect_chars(v, s);
                               return Value::string(std::move(s));
                             }};
  return ref;
}

ActionRef cons() {
  static const ActionRef ref{kCons, [](const Value& v, Span) {
                               const auto& pair = v.items();
                               const auto& rest = pair.at(1).items();
                               std::vector<Value> out;
                               out.reserve(rest.size() + 1);
                               out.push_back(pair.at(0));
                               out.insert(out.end(), rest.begin(), rest.end());
                               return Value::list(std::move(out));
                             }};
  return ref;
}

ActionRef some() {
  static const ActionRef ref{kSome, [](const Value& v, Span) { return Value::some(v); }};
  return ref;
}

ActionRef none() {
  static const ActionRef ref{kNone, [](const Value&, Span) { return Value::none(); }};
  return ref;
}

ActionRef drop() {
  static const ActionRef ref{kDrop, [](const Value&, Span) { return Value::unit(); }};
  return ref;
}

ActionRef leaf() {
  static const ActionRef ref{kLeaf, [](const Value&, Span s) { return Value::leaf(s); }};
  return ref;
}

ActionRef node(const std::string& rule) {
  return ActionRef{kNodePrefix + rule, [rule](const Value& v, Span s) {
                     return Value::tree(rule, s, flatten_children(v));
                   }};
}

bool is_node_label(const std::string& label) { return label.starts_with(kNodePrefix); }

std::string node_rule(const std::string& label) {
  if (!is_node_label(label)) throw std::invalid_argument("not a node label: " + label);
  return label.substr(std::char_traits<char>::length(kNodePrefix));
}

std::vector<Value> flatten_children(const Value& v) {
  std::vector<Value> out;
  flatten_into(v, out);
  return out;
}

}  // namespace builtin

namespace {

Surface with_children(SurfaceKind kind, std::vector<Surface> kids);

}  // namespace

Surface Surface::empty() { return Surface{}; }

Surface Surface::any() {
  Surface s;
  s.kind_ = SurfaceKind::AnyChar;
  return s;
}

Surface Surface::terminal(unsigned char c) {
  Surface s;
  s.kind_ = SurfaceKind::Terminal;
  s.lo_ = s.hi_ = c;
  return s;
}

Surface Surface::range(unsigned char lo, unsigned char hi) {
  Surface s;
  s.kind_ = SurfaceKind::Range;
  s.lo_ = lo;
  s.hi_ = hi;
  return s;
}

Surface Surface::nonterminal(std::string name) {
  Surface s;
  s.kind_ = SurfaceKind::NonTerminal;
  s.text_ = std::move(name);
  return s;
}

Surface Surface::seq(Surface left, Surface right) {
  Surface s;
  s.kind_ = SurfaceKind::Seq;
  s.children_ = {std::move(left), std::move(right)};
  return s;
}

Surface Surface::seq(std::vector<Surface> items) {
  if (items.empty()) throw std::invalid_argument("empty sequence");
  Surface acc = std::move(items.back());
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = seq(std::move(items[i]), std::move(acc));
  return acc;
}

Surface Surface::choice(Surface first, Surface second) {
  Surface s;
  s.kind_ = SurfaceKind::Choice;
  s.children_ = {std::move(first), std::move(second)};
  return s;
}

Surface Surface::choice(std::vector<Surface> items) {
  if (items.empty()) throw std::invalid_argument("empty choice");
  Surface acc = std::move(items.back());
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = choice(std::move(items[i]), std::move(acc));
  return acc;
}

Surface Surface::star(Surface inner) {
  Surface s;
  s.kind_ = SurfaceKind::Star;
  s.children_ = {std::move(inner)};
  return s;
}

Surface Surface::not_(Surface inner) {
  Surface s;
  s.kind_ = SurfaceKind::Not;
  s.children_ = {std::move(inner)};
  return s;
}

Surface Surface::action(Surface inner, ActionRef fn) {
  Surface s;
  s.kind_ = SurfaceKind::Action;
  s.children_ = {std::move(inner)};
  s.action_ = std::move(fn);
  return s;
}

Surface Surface::literal(std::string text) {
  Surface s;
  s.kind_ = SurfaceKind::Literal;
  s.text_ = std::move(text);
  return s;
}

Surface Surface::plus(Surface inner) {
  Surface s;
  s.kind_ = SurfaceKind::Plus;
  s.children_ = {std::move(inner)};
  return s;
}

Surface Surface::optional(Surface inner) {
  Surface s;
  s.kind_ = SurfaceKind::Optional;
  s.children_ = {std::move(inner)};
  return s;
}

Surface Surface::and_(Surface inner) {
  Surface s;
  s.kind_ = SurfaceKind::And;
  s.children_ = {std::move(inner)};
  return s;
}

Surface Surface::char_class(std::vector<ClassItem> items) {
  Surface s;
  s.kind_ = SurfaceKind::CharClass;
  s.items_ = std::move(items);
  return s;
}

Surface Surface::drop(Surface inner) {
  Surface s;
  s.kind_ = SurfaceKind::Drop;
  s.children_ = {std::move(inner)};
  return s;
}

Surface embed(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Empty: return Surface::empty();
    case ExprKind::AnyChar: return Surface::any();
    case ExprKind::Terminal: return Surface::terminal(e.lo());
    case ExprKind::Range: return Surface::range(e.lo(), e.hi());
    case ExprKind::NonTerminal: return Surface::nonterminal(e.name());
    case ExprKind::Seq: return Surface::seq(embed(e.left()), embed(e.right()));
    case ExprKind::Choice: return Surface::choice(embed(e.left()), embed(e.right()));
    case ExprKind::Star: return Surface::star(embed(e.inner()));
    case ExprKind::Not: return Surface::not_(embed(e.inner()));
    case ExprKind::Action: return Surface::action(embed(e.inner()), e.action_ref());
  }
  throw std::logic_error("unknown expression kind");
}

namespace {

Expr class_item(const ClassItem& item) {
  if (item.single) return Expr::terminal(item.lo);
  return Expr::range(item.lo, item.hi);
}

}  // namespace

Expr desugar(const Surface& e) {
  const auto& kids = e.children();
  switch (e.kind()) {
    case SurfaceKind::Empty: return Expr::empty();
    case SurfaceKind::AnyChar: return Expr::any();
    case SurfaceKind::Terminal: return Expr::terminal(e.lo());
    case SurfaceKind::Range: return Expr::range(e.lo(), e.hi());
    case SurfaceKind::NonTerminal: return Expr::nonterminal(e.text());
    case SurfaceKind::Seq: return Expr::seq(desugar(kids[0]), desugar(kids[1]));
    case SurfaceKind::Choice: return Expr::choice(desugar(kids[0]), desugar(kids[1]));
    case SurfaceKind::Star: return Expr::star(desugar(kids[0]));
    case SurfaceKind::Not: return Expr::not_(desugar(kids[0]));
    case SurfaceKind::Action: return Expr::action(desugar(kids[0]), *e.action_ref());
    case SurfaceKind::Literal: {
      const std::string& s = e.text();
      if (s.empty()) throw GrammarError(GrammarErrorKind::EmptyLiteral, "", "empty literal (write eps)");
      Expr acc = Expr::terminal(static_cast<unsigned char>(s.back()));
      for (std::size_t i = s.size() - 1; i-- > 0;) {
        acc = Expr::seq(Expr::terminal(static_cast<unsigned char>(s[i])), std::move(acc));
      }
      return Expr::action(std::move(acc), builtin::tuple2str());
    }
    case SurfaceKind::Plus: {
      Expr inner = desugar(kids[0]);
      return Expr::action(Expr::seq(inner, Expr::star(inner)), builtin::cons());
    }
    case SurfaceKind::Optional:
      return Expr::choice(Expr::action(desugar(kids[0]), builtin::some()),
                          Expr::action(Expr::empty(), builtin::none()));
    case SurfaceKind::And:
      return Expr::not_(Expr::not_(desugar(kids[0])));
    case SurfaceKind::CharClass: {
      const auto& items = e.items();
      if (items.empty()) throw GrammarError(GrammarErrorKind::EmptyClass, "", "empty character class");
      Expr acc = class_item(items.back());
      for (std::size_t i = items.size() - 1; i-- > 0;) {
        acc = Expr::choice(class_item(items[i]), std::move(acc));
      }
      return acc;
    }
    case SurfaceKind::Drop:
      return Expr::action(desugar(kids[0]), builtin::drop());
  }
  throw std::logic_error("unknown surface kind");
}

namespace {

Surface with_children(SurfaceKind kind, std::vector<Surface> kids) {
  switch (kind) {
    case SurfaceKind::Seq: return Surface::seq(std::move(kids[0]), std::move(kids[1]));
    case SurfaceKind::Choice: return Surface::choice(std::move(kids[0]), std::move(kids[1]));
    case SurfaceKind::Star: return Surface::star(std::move(kids[0]));
    case SurfaceKind::Not: return Surface::not_(std::move(kids[0]));
    case SurfaceKind::Plus: return Surface::plus(std::move(kids[0]));
    case SurfaceKind::Optional: return Surface::optional(std::move(kids[0]));
    case SurfaceKind::And: return Surface::and_(std::move(kids[0]));
    case SurfaceKind::Drop: return Surface::drop(std::move(kids[0]));
    default: break;
  }
  throw std::logic_error("with_children on a leaf kind");
}

}  // namespace

Surface with_leaves(const Surface& e) {
  switch (e.kind()) {
    case SurfaceKind::Literal:
    case SurfaceKind::CharClass:
    case SurfaceKind::Terminal:
    case SurfaceKind::Range:
    case SurfaceKind::AnyChar:
      return Surface::action(e, builtin::leaf());
    case SurfaceKind::Empty:
    case SurfaceKind::NonTerminal:
      return e;
    case SurfaceKind::Action:
      return Surface::action(with_leaves(e.children()[0]), *e.action_ref());
    default: {
      std::vector<Surface> kids;
      kids.reserve(e.children().size());
      for (const Surface& k : e.children()) kids.push_back(with_leaves(k));
      return with_children(e.kind(), std::move(kids));
    }
  }
}

}  // namespace trx
