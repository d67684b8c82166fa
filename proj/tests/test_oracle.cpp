#include <gtest/gtest.h>

#include <set>

#include "trx/calculator.hpp"
#include "trx/interpreter.hpp"
#include "trx/meta_grammar.hpp"
#include "trx/oracle.hpp"

using namespace trx;

namespace {

Grammar trivial() { return Grammar::from_core({{"S", Expr::empty()}}, "S"); }

}  // namespace

TEST(Oracle, NullableStarExhaustsFuel) {
  auto r = oracle::eval(trivial(), Expr::star(Expr::empty()), "a", 0, 1000);
  EXPECT_TRUE(r.exhausted());
}

TEST(Oracle, TerminalNeedsOneUnitOfFuel) {
  auto r = oracle::eval(trivial(), Expr::terminal('a'), "a", 0, 1);
  ASSERT_FALSE(r.exhausted());
  EXPECT_EQ(*r.outcome, (ParseOutcome{Match{1, Value::character('a')}, 1}));
  EXPECT_TRUE(oracle::eval(trivial(), Expr::terminal('a'), "a", 0, 0).exhausted());
}

TEST(Oracle, MathAgreesWithInterpreter) {
  const Grammar& g = calculator::grammar();
  auto cert = *check_well_formed(g).certificate;
  for (std::string in : {"1+2", "2*(3+4)", "1+", "", "12*3+0"}) {
    ParseOutcome i = parse(g, cert, in);
    auto o = oracle::eval_start(g, in, 1'000'000);
    ASSERT_FALSE(o.exhausted()) << in;
    EXPECT_EQ(*o.outcome, i) << in;
  }
}

TEST(Oracle, FuelIsExactStepCount) {
  Grammar g = load_grammar_file(std::string(TRX_GRAMMAR_DIR) + "/math.peg").grammar;
  auto cert = *check_well_formed(g).certificate;
  ParseOutcome i = parse(g, cert, "1+2");
  EXPECT_EQ(oracle::eval_start(g, "1+2", i.steps), oracle::FueledOutcome{i});
  EXPECT_TRUE(oracle::eval_start(g, "1+2", i.steps - 1).exhausted());
  EXPECT_EQ(oracle::eval_start(g, "1+2", i.steps * 3), oracle::FueledOutcome{i});
}

TEST(Oracle, SmallCasesIncludeEdgeGrammars) {
  auto stream = oracle::enumerate_small_cases("a", 1, 1);
  Grammar eps = Grammar::from_core({{"S", Expr::empty()}}, "S");
  Grammar lit = Grammar::from_core({{"S", Expr::terminal('a')}}, "S");
  bool has_eps_a = false;
  bool has_lit_empty = false;
  while (auto c = stream.next()) {
    if (c->grammar == eps && c->input == "a") has_eps_a = true;
    if (c->grammar == lit && c->input.empty()) has_lit_empty = true;
  }
  EXPECT_TRUE(has_eps_a);
  EXPECT_TRUE(has_lit_empty);
}

TEST(Oracle, StreamIsReproducible) {
  oracle::CaseConfig cfg;
  cfg.exhaustive_size = 2;
  cfg.random_grammars = 30;
  cfg.max_input_len = 2;
  oracle::CaseStream a(cfg);
  oracle::CaseStream b(cfg);
  std::size_t n = 0;
  while (true) {
    auto x = a.next();
    auto y = b.next();
    ASSERT_EQ(x.has_value(), y.has_value());
    if (!x) break;
    ASSERT_EQ(x->grammar, y->grammar);
    ASSERT_EQ(x->input, y->input);
    ++n;
  }
  EXPECT_EQ(n, a.grammars_emitted() * oracle::all_inputs("ab", 2).size());
  for (std::size_t k : a.constructor_coverage()) EXPECT_GT(k, 0u);
}

TEST(Oracle, DifferentSeedsDiffer) {
  std::mt19937_64 r1(1);
  std::mt19937_64 r2(2);
  oracle::GrammarShape shape;
  std::set<std::string> a;
  std::set<std::string> b;
  for (int i = 0; i < 20; ++i) {
    a.insert(dump_grammar(oracle::random_grammar(r1, shape)));
    b.insert(dump_grammar(oracle::random_grammar(r2, shape)));
  }
  EXPECT_NE(a, b);
}

TEST(Oracle, AllInputsShortestFirst) {
  auto v = oracle::all_inputs("ab", 2);
  ASSERT_EQ(v.size(), 7u);
  EXPECT_EQ(v[0], "");
  EXPECT_EQ(v[1].size(), 1u);
  EXPECT_EQ(v[6].size(), 2u);
  EXPECT_EQ(oracle::all_inputs("ab", 6).size(), 127u);
}

TEST(Oracle, EnumeratedExpressionsAreBounded) {
  auto es = oracle::enumerate_exprs("ab", 2, "S");
  EXPECT_FALSE(es.empty());
  for (const Expr& e : es) EXPECT_LE(expr_size(e), 2u);
  std::set<std::string> texts;
  for (const Expr& e : es) texts.insert(to_text(e));
  EXPECT_TRUE(texts.count("S*"));
}

TEST(Oracle, FuelMonotone) {
  const Grammar& g = calculator::plain_grammar();
  for (std::uint64_t f = 0; f < 200; ++f) {
    auto lo = oracle::eval_start(g, "1*2", f);
    auto hi = oracle::eval_start(g, "1*2", f + 1);
    if (!lo.exhausted()) EXPECT_EQ(lo, hi);
  }
}

TEST(Oracle, TraceIsDeterministic) {
  const Grammar& g = calculator::plain_grammar();
  std::vector<std::string> t1;
  std::vector<std::string> t2;
  auto a = oracle::eval_start(g, "(1+2)*3", 100'000, &t1);
  auto b = oracle::eval_start(g, "(1+2)*3", 100'000, &t2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(t1, t2);
  EXPECT_FALSE(t1.empty());
  EXPECT_EQ(t1.back(), "nonterminal");
}
