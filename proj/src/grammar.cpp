#include "trx/grammar.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "trx/detail/program.hpp"
#include "trx/errors.hpp"

namespace trx {

struct Grammar::Impl {
  std::vector<std::string> names;
  std::vector<Expr> bodies;
  std::unordered_map<std::string, std::size_t> index;
  std::string start;
  detail::Program program;
};

namespace {

// First undefined nonterminal reachable in `e`, if any.
const std::string* find_undefined(const Expr& e,
                                  const std::unordered_map<std::string, std::size_t>& index) {
  if (e.kind() == ExprKind::NonTerminal) {
    return index.contains(e.name()) ? nullptr : &e.name();
  }
  for (std::size_t i = 0; i < e.child_count(); ++i) {
    if (const std::string* u = find_undefined(e.child(i), index)) return u;
  }
  return nullptr;
}

}  // namespace

Grammar Grammar::from_core(const std::vector<std::pair<std::string, Expr>>& rules,
                           const std::string& start) {
  auto impl = std::make_shared<Impl>();
  for (const auto& [name, body] : rules) {
    if (name.empty()) throw std::invalid_argument("rule name is empty");
    if (!impl->index.emplace(name, impl->names.size()).second) {
      throw GrammarError(GrammarErrorKind::DuplicateRule, name, "rule '" + name + "' defined twice");
    }
    impl->names.push_back(name);
    impl->bodies.push_back(body);
  }
  for (std::size_t i = 0; i < impl->names.size(); ++i) {
    if (const std::string* u = find_undefined(impl->bodies[i], impl->index)) {
      throw GrammarError(GrammarErrorKind::UndefinedNonterminal, *u,
                         "'" + *u + "' referenced from rule '" + impl->names[i] +
                             "' is not defined");
    }
  }
  if (!impl->index.contains(start)) {
    throw GrammarError(GrammarErrorKind::UnknownStart, start,
                       "start symbol '" + start + "' is not a rule");
  }
  impl->start = start;
  impl->program = detail::compile(impl->names, impl->bodies);
  return Grammar{std::move(impl)};
}

Grammar Grammar::build(const std::vector<std::pair<std::string, Surface>>& rules,
                       const std::string& start) {
  std::vector<std::pair<std::string, Expr>> core;
  core.reserve(rules.size());
  for (const auto& [name, body] : rules) {
    try {
      core.emplace_back(name, desugar(body));
    } catch (const GrammarError& err) {
      if (!err.symbol().empty()) throw;
      throw GrammarError(err.kind(), name, std::string(err.what()) + " in rule '" + name + "'");
    }
  }
  return from_core(core, start);
}

const std::vector<std::string>& Grammar::nonterminals() const noexcept { return impl_->names; }

bool Grammar::has(std::string_view name) const noexcept {
  return impl_->index.contains(std::string(name));
}

std::size_t Grammar::rule_index(std::string_view name) const {
  auto it = impl_->index.find(std::string(name));
  if (it == impl_->index.end()) throw std::out_of_range("no rule named '" + std::string(name) + "'");
  return it->second;
}

const Expr& Grammar::production(std::string_view name) const {
  return impl_->bodies[rule_index(name)];
}

const std::string& Grammar::start() const noexcept { return impl_->start; }

const detail::Program& Grammar::program() const noexcept { return impl_->program; }

bool operator==(const Grammar& a, const Grammar& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->names == b.impl_->names && a.impl_->start == b.impl_->start &&
         a.impl_->bodies == b.impl_->bodies;
}

bool same_production_map(const Grammar& a, const Grammar& b) {
  if (a.size() != b.size() || a.start() != b.start()) return false;
  for (const std::string& name : a.nonterminals()) {
    if (!b.has(name) || !(a.production(name) == b.production(name))) return false;
  }
  return true;
}

namespace detail {

namespace {

struct Compiler {
  Program& prog;
  const std::unordered_map<std::string, std::uint32_t>& rule_of;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pending_refs;  // node, rule

  std::uint32_t emit(const Expr& e) {
    auto at = static_cast<std::uint32_t>(prog.code.size());
    prog.code.push_back(Instr{e.kind()});
    switch (e.kind()) {
      case ExprKind::Terminal:
      case ExprKind::Range:
        prog.code[at].lo = e.lo();
        prog.code[at].hi = e.hi();
        break;
      case ExprKind::NonTerminal:
        pending_refs.emplace_back(at, rule_of.at(e.name()));
        break;
      case ExprKind::Seq:
      case ExprKind::Choice: {
        std::uint32_t l = emit(e.left());
        std::uint32_t r = emit(e.right());
        prog.code[at].a = l;
        prog.code[at].b = r;
        break;
      }
      case ExprKind::Star:
      case ExprKind::Not:
        prog.code[at].a = emit(e.inner());
        break;
      case ExprKind::Action: {
        prog.code[at].action = static_cast<std::uint32_t>(prog.actions.size());
        prog.actions.push_back(e.action_ref());
        prog.code[at].a = emit(e.inner());
        break;
      }
      case ExprKind::Empty:
      case ExprKind::AnyChar:
        break;
    }
    return at;
  }
};

}  // namespace

Program compile(const std::vector<std::string>& names, const std::vector<Expr>& bodies) {
  Program prog;
  std::unordered_map<std::string, std::uint32_t> rule_of;
  for (std::uint32_t i = 0; i < names.size(); ++i) rule_of.emplace(names[i], i);
  Compiler c{prog, rule_of, {}};
  for (std::uint32_t i = 0; i < names.size(); ++i) {
    prog.rule_body.push_back(c.emit(bodies[i]));
  }
  for (std::uint32_t i = 0; i < names.size(); ++i) {
    prog.rule_entry.push_back(static_cast<std::uint32_t>(prog.code.size()));
    prog.code.push_back(Instr{ExprKind::NonTerminal});
    c.pending_refs.emplace_back(prog.rule_entry.back(), i);
  }
  for (auto [node, rule] : c.pending_refs) {
    prog.code[node].a = prog.rule_body[rule];
    prog.code[node].b = rule;
  }
  return prog;
}

}  // namespace detail

}  // namespace trx
