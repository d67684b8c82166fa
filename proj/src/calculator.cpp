#include "trx/calculator.hpp"

#include <stdexcept>

#include "trx/analysis.hpp"
#include "trx/interpreter.hpp"
#include "trx/surface.hpp"

namespace trx::calculator {

namespace {

using S = Surface;

// Item i (0-based) of a right-nested pair chain of the given arity.
const Value& project(const Value& v, std::size_t arity, std::size_t i) {
  const Value* cur = &v;
  for (std::size_t k = 0; k < i; ++k) cur = &cur->items().at(1);
  return i + 1 == arity ? *cur : cur->items().at(0);
}

ActionRef pick(std::size_t arity, std::size_t i) {
  return ActionRef{"x" + std::to_string(i + 1),
                   [arity, i](const Value& v, Span) { return project(v, arity, i); }};
}

ActionRef binary(const char* label, std::int64_t (*op)(std::int64_t, std::int64_t)) {
  return ActionRef{label, [op](const Value& v, Span) {
                     return Value::number(op(project(v, 3, 0).as_number(), project(v, 3, 2).as_number()));
                   }};
}

const ActionRef& dig_list_to_nat() {
  static const ActionRef a{"digListToNat", [](const Value& v, Span) {
                             std::int64_t n = 0;
                             for (const Value& d : v.items()) n = n * 10 + (d.as_char() - '0');
                             return Value::number(n);
                           }};
  return a;
}

std::vector<std::pair<std::string, Surface>> rules(bool with_actions) {
  auto act = [with_actions](S e, ActionRef a) { return with_actions ? S::action(std::move(e), std::move(a)) : e; };
  auto nt = [](const char* n) { return S::nonterminal(n); };
  S ws_body = S::star(S::choice(S::literal(" "), S::literal("\t")));
  return {
      {"ws", act(ws_body, builtin::drop())},
      {"number", act(S::plus(S::char_class({ClassItem::span('0', '9')})), dig_list_to_nat())},
      {"term", S::choice(act(S::seq({nt("ws"), nt("number"), nt("ws")}), pick(3, 1)),
                         act(S::seq({nt("ws"), S::literal("("), nt("expr"), S::literal(")"), nt("ws")}),
                             pick(5, 2)))},
      {"factor", S::choice(act(S::seq({nt("term"), S::literal("*"), nt("factor")}),
                               binary("x1*x3", [](std::int64_t a, std::int64_t b) { return a * b; })),
                           nt("term"))},
      {"expr", S::choice(act(S::seq({nt("factor"), S::literal("+"), nt("expr")}),
                             binary("x1+x3", [](std::int64_t a, std::int64_t b) { return a + b; })),
                         nt("factor"))},
  };
}

struct Calc {
  Grammar g;
  Certificate cert;
};

const Calc& calc() {
  static const Calc c = [] {
    Grammar g = Grammar::build(rules(true), "expr");
    auto report = check_well_formed(g);
    if (!report.certificate) throw std::logic_error("arithmetic grammar is not well-formed");
    return Calc{g, *report.certificate};
  }();
  return c;
}

}  // namespace

const Grammar& grammar() { return calc().g; }

const Grammar& plain_grammar() {
  static const Grammar g = Grammar::build(rules(false), "expr");
  return g;
}

std::optional<std::int64_t> evaluate(std::string_view input) {
  ParseOutcome out = parse(calc().g, calc().cert, input);
  if (!out.ok() || out.match->next_pos != input.size()) return std::nullopt;
  return out.match->value.as_number();
}

}  // namespace trx::calculator
