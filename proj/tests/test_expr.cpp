#include <gtest/gtest.h>

#include "trx/errors.hpp"
#include "trx/expr.hpp"
#include "trx/surface.hpp"

using namespace trx;

namespace {
Expr t(char c) { return Expr::terminal(static_cast<unsigned char>(c)); }
}  // namespace

TEST(Expr, Factories) {
  EXPECT_EQ(Expr::empty().kind(), ExprKind::Empty);
  EXPECT_EQ(Expr::any().kind(), ExprKind::AnyChar);
  EXPECT_EQ(t('a').lo(), 'a');
  Expr r = Expr::range('0', '9');
  EXPECT_EQ(r.lo(), '0');
  EXPECT_EQ(r.hi(), '9');
  EXPECT_EQ(Expr::nonterminal("S").name(), "S");
  Expr s = Expr::seq(t('a'), t('b'));
  EXPECT_EQ(s.child_count(), 2u);
  EXPECT_EQ(s.left(), t('a'));
  EXPECT_EQ(s.right(), t('b'));
  EXPECT_EQ(Expr::star(t('a')).inner(), t('a'));
}

TEST(Expr, InvalidRange) {
  try {
    (void)Expr::range('z', 'a');
    FAIL();
  } catch (const GrammarError& e) {
    EXPECT_EQ(e.kind(), GrammarErrorKind::InvalidRange);
  }
  EXPECT_NO_THROW((void)Expr::range('a', 'a'));
}

TEST(Expr, StructuralEqualityAndHash) {
  Expr a = Expr::choice(Expr::seq(t('a'), Expr::star(Expr::nonterminal("S"))), Expr::not_(Expr::any()));
  Expr b = Expr::choice(Expr::seq(t('a'), Expr::star(Expr::nonterminal("S"))), Expr::not_(Expr::any()));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(a.identity(), b.identity());
  EXPECT_NE(Expr::seq(t('a'), t('b')), Expr::seq(t('b'), t('a')));
  EXPECT_NE(Expr::seq(t('a'), t('b')), Expr::choice(t('a'), t('b')));
  EXPECT_NE(t('a'), Expr::range('a', 'a'));
}

TEST(Expr, ActionsCompareByLabel) {
  ActionRef f{"f", [](const Value& v, Span) { return v; }};
  ActionRef f2{"f", [](const Value&, Span) { return Value::unit(); }};
  ActionRef g{"g", [](const Value& v, Span) { return v; }};
  EXPECT_EQ(Expr::action(t('a'), f), Expr::action(t('a'), f2));
  EXPECT_NE(Expr::action(t('a'), f), Expr::action(t('a'), g));
}

TEST(Expr, Size) {
  EXPECT_EQ(expr_size(Expr::empty()), 1u);
  EXPECT_EQ(expr_size(Expr::seq(t('a'), Expr::star(t('b')))), 4u);
}

TEST(Printer, Atoms) {
  EXPECT_EQ(to_text(Expr::empty()), "eps");
  EXPECT_EQ(to_text(Expr::any()), ".");
  EXPECT_EQ(to_text(t('a')), "[a]");
  EXPECT_EQ(to_text(Expr::range('0', '9')), "[0-9]");
  EXPECT_EQ(to_text(Expr::nonterminal("expr")), "expr");
}

TEST(Printer, Precedence) {
  Expr a = t('a');
  Expr b = t('b');
  Expr c = t('c');
  EXPECT_EQ(to_text(Expr::seq(Expr::seq(a, b), c)), "([a] [b]) [c]");
  EXPECT_EQ(to_text(Expr::seq(a, Expr::seq(b, c))), "[a] [b] [c]");
  EXPECT_EQ(to_text(Expr::choice(Expr::seq(a, b), c)), "[a] [b] / [c]");
  EXPECT_EQ(to_text(Expr::seq(Expr::choice(Expr::nonterminal("x"), b), c)), "(x / [b]) [c]");
  EXPECT_EQ(to_text(Expr::not_(Expr::star(a))), "![a]*");
  EXPECT_EQ(to_text(Expr::star(Expr::not_(a))), "(![a])*");
  EXPECT_EQ(to_text(Expr::star(Expr::star(a))), "([a]*)*");
  EXPECT_EQ(to_text(Expr::choice(Expr::choice(Expr::nonterminal("x"), Expr::nonterminal("y")), c)),
            "(x / y) / [c]");
}

TEST(Printer, ClassesAndEscapes) {
  EXPECT_EQ(to_text(Expr::choice(t('a'), Expr::choice(Expr::range('0', '9'), t('_')))), "[a0-9_]");
  EXPECT_EQ(to_text(t(']')), "[\\]]");
  EXPECT_EQ(to_text(t('-')), "[\\x2d]");
  EXPECT_EQ(to_text(t('\n')), "[\\n]");
  EXPECT_EQ(escape_char('\'', false), "\\'");
  EXPECT_EQ(escape_char('\'', true), "'");
  EXPECT_EQ(escape_char(0x01, false), "\\x01");
  EXPECT_EQ(escape_char(0xff, true), "\\xff");
}

TEST(Desugar, Literal) {
  Expr e = desugar(Surface::literal("if"));
  ASSERT_EQ(e.kind(), ExprKind::Action);
  EXPECT_EQ(e.action_ref().label(), builtin::kTuple2Str);
  EXPECT_EQ(e.inner(), Expr::seq(t('i'), t('f')));
  EXPECT_EQ(to_text(e), "'if'");
  EXPECT_EQ(to_text(desugar(Surface::literal("it's"))), "'it\\'s'");
}

TEST(Desugar, EmptyLiteralAndClass) {
  try {
    (void)desugar(Surface::literal(""));
    FAIL();
  } catch (const GrammarError& e) {
    EXPECT_EQ(e.kind(), GrammarErrorKind::EmptyLiteral);
  }
  try {
    (void)desugar(Surface::char_class({}));
    FAIL();
  } catch (const GrammarError& e) {
    EXPECT_EQ(e.kind(), GrammarErrorKind::EmptyClass);
  }
}

TEST(Desugar, DerivedOperators) {
  Surface a = Surface::terminal('a');
  Expr plus = desugar(Surface::plus(a));
  EXPECT_EQ(plus.action_ref().label(), builtin::kCons);
  EXPECT_EQ(plus.inner(), Expr::seq(t('a'), Expr::star(t('a'))));
  EXPECT_EQ(to_text(plus), "[a]+");

  Expr opt = desugar(Surface::optional(a));
  ASSERT_EQ(opt.kind(), ExprKind::Choice);
  EXPECT_EQ(opt.left().action_ref().label(), builtin::kSome);
  EXPECT_EQ(opt.right().inner(), Expr::empty());
  EXPECT_EQ(to_text(opt), "[a]?");

  EXPECT_EQ(desugar(Surface::and_(a)), Expr::not_(Expr::not_(t('a'))));
  EXPECT_EQ(to_text(desugar(Surface::and_(a))), "&[a]");

  Expr drop = desugar(Surface::drop(a));
  EXPECT_EQ(drop.action_ref().label(), builtin::kDrop);
  EXPECT_EQ(to_text(drop), "~[a]");
}

TEST(Desugar, ClassKeepsSourceOrder) {
  Expr e = desugar(Surface::char_class({ClassItem::one('x'), ClassItem::span('a', 'c'), ClassItem::one('_')}));
  EXPECT_EQ(e, Expr::choice(t('x'), Expr::choice(Expr::range('a', 'c'), t('_'))));
  EXPECT_EQ(desugar(Surface::char_class({ClassItem::one('x')})), t('x'));
  EXPECT_THROW((void)desugar(Surface::char_class({ClassItem::span('z', 'a')})), GrammarError);
}

TEST(Desugar, WithLeavesWrapsAtoms) {
  Surface s = Surface::seq(Surface::literal("ab"), Surface::nonterminal("X"));
  Expr e = desugar(with_leaves(s));
  ASSERT_EQ(e.kind(), ExprKind::Seq);
  EXPECT_EQ(e.left().action_ref().label(), builtin::kLeaf);
  EXPECT_EQ(e.right(), Expr::nonterminal("X"));
  // Leaf wrappers have no spelling.
  EXPECT_EQ(to_text(e), "'ab' X");
}
