#include <gtest/gtest.h>

#include "trx/surface.hpp"
#include "trx/value.hpp"

using namespace trx;

TEST(Value, DefaultIsUnit) {
  EXPECT_TRUE(Value{}.is(Value::Kind::Unit));
  EXPECT_EQ(Value{}, Value::unit());
}

TEST(Value, StructuralEquality) {
  Value a = Value::pair(Value::character('a'), Value::list({Value::string("x"), Value::none()}));
  Value b = Value::pair(Value::character('a'), Value::list({Value::string("x"), Value::none()}));
  Value c = Value::pair(Value::character('a'), Value::list({Value::string("y"), Value::none()}));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_NE(Value::tuple({}), Value::list({}));
  EXPECT_NE(Value::none(), Value::some(Value::unit()));
  EXPECT_EQ(Value::number(7), Value::number(7));
  EXPECT_NE(Value::number(7), Value::number(8));
}

TEST(Value, Repr) {
  EXPECT_EQ(Value::pair(Value::character('a'), Value::list({Value::character('b')})).repr(), "('a', ['b'])");
  EXPECT_EQ(Value::some(Value::string("hi")).repr(), "Some(\"hi\")");
  EXPECT_EQ(Value::tree("r", Span{0, 2}, {Value::leaf(Span{0, 2})}).repr(), "r@0:2{leaf@0:2}");
  EXPECT_EQ(Value::number(36).repr(), "36");
}

TEST(Value, AccessorsCheckKind) {
  EXPECT_THROW((void)Value::unit().as_char(), std::exception);
  EXPECT_THROW((void)Value::character('a').items(), std::exception);
  EXPECT_EQ(Value::leaf(Span{3, 5}).as_leaf(), (Span{3, 5}));
}

TEST(Value, DeepNestingIsSafe) {
  // Built and destroyed without recursion proportional to the depth.
  Value v = Value::unit();
  for (int i = 0; i < 1'000'000; ++i) v = Value::some(Value::pair(Value::character('x'), std::move(v)));
  Value w = Value::unit();
  for (int i = 0; i < 1'000'000; ++i) w = Value::some(Value::pair(Value::character('x'), std::move(w)));
  EXPECT_EQ(v, w);
  EXPECT_FALSE(v.repr().empty());
}

TEST(Value, DeepTreesAreSafe) {
  Value t = Value::leaf(Span{0, 0});
  for (int i = 0; i < 500'000; ++i) t = Value::tree("a", Span{0, 0}, {t});
  SUCCEED();
}

TEST(Builtin, FlattenMergesTouchingLeaves) {
  Value v = Value::pair(Value::leaf(Span{0, 1}),
                        Value::list({Value::leaf(Span{1, 3}), Value::unit(),
                                     Value::tree("n", Span{3, 4}, {}), Value::leaf(Span{5, 6})}));
  auto kids = builtin::flatten_children(v);
  ASSERT_EQ(kids.size(), 3u);
  EXPECT_EQ(kids[0].as_leaf(), (Span{0, 3}));
  EXPECT_EQ(kids[1].as_tree().rule, "n");
  EXPECT_EQ(kids[2].as_leaf(), (Span{5, 6}));
}

TEST(Builtin, Actions) {
  Span s{0, 2};
  EXPECT_EQ(builtin::tuple2str().apply(Value::pair(Value::character('h'), Value::character('i')), s),
            Value::string("hi"));
  EXPECT_EQ(builtin::cons().apply(Value::pair(Value::character('a'), Value::list({Value::character('b')})), s),
            Value::list({Value::character('a'), Value::character('b')}));
  EXPECT_EQ(builtin::some().apply(Value::character('a'), s), Value::some(Value::character('a')));
  EXPECT_EQ(builtin::none().apply(Value::unit(), s), Value::none());
  EXPECT_EQ(builtin::drop().apply(Value::character('a'), s), Value::unit());
  EXPECT_EQ(builtin::leaf().apply(Value::character('a'), s), Value::leaf(s));
  Value n = builtin::node("r").apply(Value::leaf(Span{0, 2}), s);
  EXPECT_EQ(n.as_tree().rule, "r");
  EXPECT_EQ(n.as_tree().span, s);
  EXPECT_TRUE(builtin::is_node_label("node:r"));
  EXPECT_EQ(builtin::node_rule("node:r"), "r");
}
