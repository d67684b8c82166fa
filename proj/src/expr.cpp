#include "trx/expr.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "trx/errors.hpp"

namespace trx {

const char* to_string(ExprKind kind) {
  switch (kind) {
    case ExprKind::Empty: return "Empty";
    case ExprKind::AnyChar: return "AnyChar";
    case ExprKind::Terminal: return "Terminal";
    case ExprKind::Range: return "Range";
    case ExprKind::NonTerminal: return "NonTerminal";
    case ExprKind::Seq: return "Seq";
    case ExprKind::Choice: return "Choice";
    case ExprKind::Star: return "Star";
    case ExprKind::Not: return "Not";
    case ExprKind::Action: return "Action";
  }
  return "?";
}

ActionRef::ActionRef(std::string label, Fn fn)
    : label_(std::make_shared<const std::string>(std::move(label))),
      fn_(std::make_shared<const Fn>(std::move(fn))) {
  if (!*fn_) throw std::invalid_argument("action '" + *label_ + "' has no function");
}

struct Expr::Node {
  ExprKind kind;
  unsigned char lo = 0;
  unsigned char hi = 0;
  std::string name;
  std::vector<Expr> kids;
  std::optional<ActionRef> action;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Expr Expr::make(Node n) {
  std::size_t h = mix(0, static_cast<std::size_t>(n.kind));
  h = mix(h, n.lo);
  h = mix(h, n.hi);
  if (!n.name.empty()) h = mix(h, std::hash<std::string>{}(n.name));
  if (n.action) h = mix(h, std::hash<std::string>{}(n.action->label()));
  for (const Expr& k : n.kids) h = mix(h, k.hash());
  n.hash = h;
  return Expr{std::make_shared<const Node>(std::move(n))};
}

Expr Expr::empty() { return make(Node{ExprKind::Empty}); }
Expr Expr::any() { return make(Node{ExprKind::AnyChar}); }

Expr Expr::terminal(unsigned char c) {
  Node n{ExprKind::Terminal};
  n.lo = n.hi = c;
  return make(std::move(n));
}

Expr Expr::range(unsigned char lo, unsigned char hi) {
  if (lo > hi) {
    throw GrammarError(GrammarErrorKind::InvalidRange, "",
                       "range " + escape_char(lo, true) + "-" + escape_char(hi, true) +
                           " has lo > hi");
  }
  Node n{ExprKind::Range};
  n.lo = lo;
  n.hi = hi;
  return make(std::move(n));
}

Expr Expr::nonterminal(std::string name) {
  if (name.empty()) throw std::invalid_argument("nonterminal name is empty");
  Node n{ExprKind::NonTerminal};
  n.name = std::move(name);
  return make(std::move(n));
}

Expr Expr::seq(Expr left, Expr right) {
  Node n{ExprKind::Seq};
  n.kids = {std::move(left), std::move(right)};
  return make(std::move(n));
}

Expr Expr::choice(Expr first, Expr second) {
  Node n{ExprKind::Choice};
  n.kids = {std::move(first), std::move(second)};
  return make(std::move(n));
}

Expr Expr::star(Expr inner) {
  Node n{ExprKind::Star};
  n.kids = {std::move(inner)};
  return make(std::move(n));
}

Expr Expr::not_(Expr inner) {
  Node n{ExprKind::Not};
  n.kids = {std::move(inner)};
  return make(std::move(n));
}

Expr Expr::action(Expr inner, ActionRef fn) {
  Node n{ExprKind::Action};
  n.kids = {std::move(inner)};
  n.action = std::move(fn);
  return make(std::move(n));
}

ExprKind Expr::kind() const noexcept { return node_->kind; }

unsigned char Expr::lo() const {
  if (kind() != ExprKind::Terminal && kind() != ExprKind::Range)
    throw std::logic_error("lo() on a non-character expression");
  return node_->lo;
}

unsigned char Expr::hi() const {
  if (kind() != ExprKind::Terminal && kind() != ExprKind::Range)
    throw std::logic_error("hi() on a non-character expression");
  return node_->hi;
}

const std::string& Expr::name() const {
  if (kind() != ExprKind::NonTerminal) throw std::logic_error("name() on a non-nonterminal");
  return node_->name;
}

const Expr& Expr::left() const {
  if (node_->kids.empty()) throw std::logic_error("expression has no children");
  return node_->kids[0];
}

const Expr& Expr::right() const {
  if (node_->kids.size() < 2) throw std::logic_error("expression has no right child");
  return node_->kids[1];
}

const ActionRef& Expr::action_ref() const {
  if (!node_->action) throw std::logic_error("action_ref() on a non-action");
  return *node_->action;
}

std::size_t Expr::child_count() const noexcept { return node_->kids.size(); }

const Expr& Expr::child(std::size_t i) const { return node_->kids.at(i); }

std::size_t Expr::hash() const noexcept { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const Expr::Node& x = *a.node_;
  const Expr::Node& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.lo != y.lo || x.hi != y.hi ||
      x.name != y.name || x.kids.size() != y.kids.size()) {
    return false;
  }
  if (x.action && x.action->label() != y.action->label()) return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    if (!(x.kids[i] == y.kids[i])) return false;
  }
  return true;
}

std::size_t expr_size(const Expr& e) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < e.child_count(); ++i) n += expr_size(e.child(i));
  return n;
}

}  // namespace trx
