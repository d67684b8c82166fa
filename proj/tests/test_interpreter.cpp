#include <gtest/gtest.h>

#include "trx/corpus.hpp"
#include "trx/interpreter.hpp"
#include "trx/meta_grammar.hpp"
#include "trx/oracle.hpp"
#include "trx/surface.hpp"

using namespace trx;

namespace {

Expr t(char c) { return Expr::terminal(static_cast<unsigned char>(c)); }
Value ch(char c) { return Value::character(static_cast<unsigned char>(c)); }

// Runs S <- e through the interpreter. The rule call itself adds one step
// to the expression's count.
ParseOutcome run(const Expr& e, std::string_view input, ParseMode mode = ParseMode::Plain) {
  Grammar g = Grammar::from_core({{"S", e}}, "S");
  WfReport r = check_well_formed(g);
  EXPECT_TRUE(r.certificate.has_value());
  return parse(g, *r.certificate, input, mode);
}

ParseOutcome ok(std::size_t next, Value v, std::uint64_t steps) {
  return ParseOutcome{Match{next, std::move(v)}, steps};
}

ParseOutcome fail(std::uint64_t steps) { return ParseOutcome{std::nullopt, steps}; }

}  // namespace

TEST(Interpreter, Terminal) {
  EXPECT_EQ(run(t('a'), "abc"), ok(1, ch('a'), 1 + 1));
  EXPECT_EQ(run(t('a'), "xbc"), fail(1 + 1));
  EXPECT_EQ(run(t('a'), ""), fail(1 + 1));
}

TEST(Interpreter, ChoiceFailsOver) { EXPECT_EQ(run(Expr::choice(t('a'), t('b')), "b"), ok(1, ch('b'), 3 + 1)); }

TEST(Interpreter, NotAtEndOfInput) { EXPECT_EQ(run(Expr::not_(Expr::any()), ""), ok(0, Value::unit(), 2 + 1)); }

TEST(Interpreter, StarCollectsList) {
  // Two inductive steps of (1 + 1) and the base case (1 + 1): 2 + 2 + 2.
  EXPECT_EQ(run(Expr::star(t('a')), "aa"), ok(2, Value::list({ch('a'), ch('a')}), 6 + 1));
  EXPECT_EQ(run(Expr::star(t('a')), "b"), ok(0, Value::list({}), 2 + 1));
}

TEST(Interpreter, Range) {
  EXPECT_EQ(run(Expr::range('0', '9'), "7x"), ok(1, ch('7'), 1 + 1));
  EXPECT_EQ(run(Expr::range('0', '9'), "x7"), fail(1 + 1));
}

TEST(Interpreter, EmptyRule) { EXPECT_EQ(run(Expr::empty(), "abc"), ok(0, Value::unit(), 2)); }

TEST(Interpreter, SequenceBuildsPairs) {
  EXPECT_EQ(run(Expr::seq(t('a'), t('b')), "ab"), ok(2, Value::pair(ch('a'), ch('b')), 3 + 1));
  // Early failure does not run the second part.
  EXPECT_EQ(run(Expr::seq(t('a'), t('b')), "xb"), fail(2 + 1));
  EXPECT_EQ(run(Expr::seq(t('a'), t('b')), "ax"), fail(3 + 1));
}

TEST(Interpreter, ActionsSeeMatchedSpan) {
  ActionRef span_len{"len", [](const Value&, Span s) { return Value::number(s.end - s.start); }};
  Grammar g = Grammar::from_core({{"S", Expr::seq(t('x'), Expr::nonterminal("N"))},
                                  {"N", Expr::action(Expr::star(t('a')), span_len)}},
                                 "S");
  auto cert = *check_well_formed(g).certificate;
  ParseOutcome o = parse(g, cert, "xaaa");
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.match->value.items().at(1).as_number(), 3);
}

TEST(Interpreter, ExpressionLevelCountsMatchOracle) {
  Grammar g = Grammar::from_core({{"S", Expr::empty()}}, "S");
  auto one = [&](const Expr& e, std::string_view s) { return *oracle::eval(g, e, s, 0, 1000).outcome; };
  EXPECT_EQ(one(t('a'), "abc"), ok(1, ch('a'), 1));
  EXPECT_EQ(one(Expr::choice(t('a'), t('b')), "b"), ok(1, ch('b'), 3));
  EXPECT_EQ(one(Expr::not_(Expr::any()), ""), ok(0, Value::unit(), 2));
  EXPECT_EQ(one(Expr::star(t('a')), "aa"), ok(2, Value::list({ch('a'), ch('a')}), 6));
  EXPECT_EQ(one(Expr::range('0', '9'), "7x"), ok(1, ch('7'), 1));
}

TEST(Interpreter, ParseRuleAtPosition) {
  Grammar g = Grammar::from_core({{"S", Expr::nonterminal("B")}, {"B", Expr::star(t('b'))}}, "S");
  auto cert = *check_well_formed(g).certificate;
  ParseOutcome o = parse_rule(g, cert, "B", "aabb", 2);
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.match->next_pos, 4u);
  EXPECT_THROW((void)parse_rule(g, cert, "B", "aabb", 5), std::out_of_range);
}

TEST(Interpreter, FarthestFailure) {
  Grammar g = Grammar::build({{"S", Surface::choice(Surface::literal("abc"), Surface::literal("ab"))}}, "S");
  auto cert = *check_well_formed(g).certificate;
  ParseStats stats;
  ParseOutcome o = parse(g, cert, "abx", ParseMode::Plain, &stats);
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.match->next_pos, 2u);
  EXPECT_EQ(stats.farthest_failure, 2u);
}

TEST(Interpreter, PackratAgreesAndHits) {
  Grammar g = load_grammar_file(std::string(TRX_GRAMMAR_DIR) + "/backtrack.peg").grammar;
  auto cert = *check_well_formed(g).certificate;
  std::string input = corpus::backtrack(21);
  ParseStats plain_stats;
  ParseStats memo_stats;
  ParseOutcome plain = parse(g, cert, input, ParseMode::Plain, &plain_stats);
  ParseOutcome memo = parse(g, cert, input, ParseMode::Packrat, &memo_stats);
  EXPECT_TRUE(plain.ok());
  EXPECT_EQ(plain, memo);
  EXPECT_GT(memo_stats.memo.hits, 0u);
  EXPECT_EQ(plain_stats.memo.entries, 0u);
}

TEST(Interpreter, DeepNestingUsesNoNativeStack) {
  // P <- '(' P ')' / 'a' on 50,000 nested parentheses.
  Grammar g = Grammar::build(
      {{"P", Surface::choice(Surface::seq({Surface::literal("("), Surface::nonterminal("P"), Surface::literal(")")}),
                             Surface::literal("a"))}},
      "P");
  auto cert = *check_well_formed(g).certificate;
  std::string input = corpus::backtrack(100'001);
  ParseStats stats;
  ParseOutcome o = parse(g, cert, input, ParseMode::Plain, &stats);
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.match->next_pos, input.size());
  EXPECT_GT(stats.max_depth, 50'000u);
}

TEST(Interpreter, ParseToTreeNeedsTreeShapedStart) {
  Grammar g = Grammar::from_core({{"S", t('a')}}, "S");
  auto cert = *check_well_formed(g).certificate;
  EXPECT_THROW((void)parse_to_tree(g, cert, "a"), std::invalid_argument);
  Grammar shaped = load_grammar("S <- 'a' T ; T <- [b-c]* ;");
  auto c2 = *check_well_formed(shaped).certificate;
  ParseOutcome o = parse_to_tree(shaped, c2, "abcb");
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.match->value.repr(), "S@0:4{leaf@0:1, T@1:4{leaf@1:4}}");
}
