#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "trx/errors.hpp"
#include "trx/interpreter.hpp"
#include "trx/meta_grammar.hpp"
#include "trx/oracle.hpp"
#include "trx/tree_json.hpp"

using namespace trx;

namespace {

std::string grammar_path(const std::string& name) { return std::string(TRX_GRAMMAR_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) {
  std::string s = slurp(std::string(TRX_GOLDEN_DIR) + "/" + name);
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

GrammarError grammar_error(std::string_view text) {
  try {
    (void)load_grammar_source(text);
  } catch (const GrammarError& e) {
    return e;
  }
  ADD_FAILURE() << "no GrammarError for: " << text;
  return GrammarError(GrammarErrorKind::InvalidRange, "", "");
}

ParseOutcome tree_of(const Grammar& g, std::string_view input) {
  auto r = check_well_formed(g);
  EXPECT_TRUE(r.is_well_formed);
  return parse_to_tree(g, *r.certificate, input);
}

}  // namespace

TEST(MetaGrammar, LoadsMath) {
  GrammarSource src = load_grammar_file(grammar_path("math.peg"));
  EXPECT_EQ(src.grammar.size(), 5u);
  EXPECT_EQ(src.grammar.start(), "expr");
  EXPECT_TRUE(check_well_formed(src.grammar).is_well_formed);
  ASSERT_NE(src.find("term"), nullptr);
  EXPECT_EQ(src.find("term")->pos.line, 6u);
  ASSERT_TRUE(src.start_pragma.has_value());
  EXPECT_EQ(src.start_pragma->pos.line, 2u);
}

TEST(MetaGrammar, MetaGrammarIsWellFormed) {
  EXPECT_TRUE(meta_certificate().certifies(meta_grammar()));
  EXPECT_EQ(meta_grammar().size(), 21u);
}

TEST(MetaGrammar, BundledFileMatchesBuiltIn) {
  Grammar loaded = load_grammar_file(grammar_path("peg.peg")).grammar;
  EXPECT_EQ(loaded, meta_grammar());
}

TEST(MetaGrammar, Bootstrap) {
  std::string text = slurp(grammar_path("peg.peg"));
  Grammar first = load_grammar(text);
  auto cert = *check_well_formed(first).certificate;
  Grammar second = load_grammar_with(first, cert, text).grammar;
  EXPECT_EQ(second, meta_grammar());
  EXPECT_EQ(dump_grammar(second), dump_grammar(first));
}

TEST(MetaGrammar, SyntaxErrors) {
  EXPECT_THROW((void)load_grammar("A <- "), SyntaxError);
  EXPECT_THROW((void)load_grammar("A <- 'a'"), SyntaxError);
  EXPECT_THROW((void)load_grammar("A 'a' ;"), SyntaxError);
  EXPECT_THROW((void)load_grammar("A <- ( 'a' ;"), SyntaxError);
  EXPECT_THROW((void)load_grammar(""), SyntaxError);
  try {
    (void)load_grammar("A <- 'a' ;\nB <- 'b' | 'c' ;\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 10u);
    EXPECT_NE(e.context().find('^'), std::string::npos);
  }
}

TEST(MetaGrammar, Dump) {
  EXPECT_EQ(dump_grammar(Grammar::from_core({{"A", Expr::empty()}}, "A")), "A <- eps ;\n");
  Grammar g = Grammar::from_core({{"A", Expr::terminal('a')}, {"B", Expr::nonterminal("A")}}, "B");
  EXPECT_EQ(dump_grammar(g), "@start B ;\nA <- [a] ;\nB <- A ;\n");
}

TEST(MetaGrammar, BundledGrammarsRoundTrip) {
  for (const char* name : {"math.peg", "math-leftrec.peg", "peg.peg", "reserved.peg", "dangling.peg",
                           "xml-lite.peg", "backtrack.peg", "synthetic200.peg"}) {
    for (LoadMode mode : {LoadMode::Shaped, LoadMode::Raw}) {
      Grammar g = load_grammar_file(grammar_path(name), mode).grammar;
      EXPECT_EQ(load_grammar(dump_grammar(g), mode), g) << name;
    }
  }
}

TEST(MetaGrammar, RandomGrammarsRoundTripRaw) {
  std::mt19937_64 rng(7);
  oracle::GrammarShape shape{"ab\n'", 4, 9, false};
  for (int i = 0; i < 300; ++i) {
    Grammar g = oracle::random_grammar(rng, shape);
    std::string text = dump_grammar(g);
    EXPECT_EQ(load_grammar(text, LoadMode::Raw), g) << text;
  }
}

TEST(MetaGrammar, Precedence) {
  Grammar g = load_grammar("A <- !'a'* 'b' / 'c' ;", LoadMode::Raw);
  Surface body = Surface::choice(
      Surface::seq(Surface::not_(Surface::star(Surface::literal("a"))), Surface::literal("b")), Surface::literal("c"));
  EXPECT_EQ(g, Grammar::build({{"A", body}}, "A"));
}

TEST(MetaGrammar, Escapes) {
  Grammar g = load_grammar(R"(A <- '\n\t\\\'' [\]\x41-\x43] ;)", LoadMode::Raw);
  Surface body = Surface::seq(Surface::literal("\n\t\\'"),
                              Surface::char_class({ClassItem::one(']'), ClassItem::span('A', 'C')}));
  EXPECT_EQ(g, Grammar::build({{"A", body}}, "A"));
}

TEST(MetaGrammar, GrammarErrorsCarryLocations) {
  GrammarError dup = grammar_error("A <- 'a' ;\nA <- 'b' ;");
  EXPECT_EQ(dup.kind(), GrammarErrorKind::DuplicateRule);
  EXPECT_EQ(dup.line(), 2u);

  GrammarError undef = grammar_error("A <- 'a'\n  B ;");
  EXPECT_EQ(undef.kind(), GrammarErrorKind::UndefinedNonterminal);
  EXPECT_EQ(undef.symbol(), "B");
  EXPECT_EQ(undef.line(), 2u);
  EXPECT_EQ(undef.column(), 3u);

  EXPECT_EQ(grammar_error("@start A ;\n@start A ;\nA <- 'a' ;").kind(), GrammarErrorKind::DuplicateStart);
  EXPECT_EQ(grammar_error("@start Z ;\nA <- 'a' ;").kind(), GrammarErrorKind::UnknownStart);
  EXPECT_EQ(grammar_error("A <- '' ;").kind(), GrammarErrorKind::EmptyLiteral);
  EXPECT_EQ(grammar_error("A <- [] ;").kind(), GrammarErrorKind::EmptyClass);
  GrammarError range = grammar_error("A <- 'a' ;\nB <- [z-a] ;");
  EXPECT_EQ(range.kind(), GrammarErrorKind::InvalidRange);
  EXPECT_EQ(range.line(), 2u);
}

TEST(MetaGrammar, ReservedWords) {
  Grammar g = load_grammar_file(grammar_path("reserved.peg")).grammar;
  ParseOutcome ifs = tree_of(g, "ifs");
  ASSERT_TRUE(ifs.ok());
  EXPECT_EQ(ifs.match->next_pos, 3u);
  EXPECT_EQ(tree_json(ifs.match->value, "ifs"), golden("reserved-ifs.json"));
  EXPECT_FALSE(tree_of(g, "if").ok());
  EXPECT_FALSE(tree_of(g, "if x").ok());
}

TEST(MetaGrammar, DanglingElseBindsInnermost) {
  Grammar g = load_grammar_file(grammar_path("dangling.peg")).grammar;
  std::string input = "if (a) if (b) x; else y;";
  ParseOutcome o = tree_of(g, input);
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.match->next_pos, input.size());
  EXPECT_EQ(tree_json(o.match->value, input), golden("dangling.json"));
}

TEST(MetaGrammar, XmlTree) {
  Grammar g = load_grammar_file(grammar_path("xml-lite.peg")).grammar;
  std::string input = "<doc><a x=\"1\">hi &amp; bye</a><b/></doc>";
  ParseOutcome o = tree_of(g, input);
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(tree_json(o.match->value, input), golden("xml-small.json"));
  EXPECT_FALSE(tree_of(g, "<a></b>").ok());
}

TEST(MetaGrammar, CommentsAndLayout) {
  Grammar a = load_grammar("# c\nA<-'a'B;B<-'b'*;# end", LoadMode::Raw);
  Grammar b = load_grammar("A <- 'a' B ;\nB <- 'b'* ;", LoadMode::Raw);
  EXPECT_EQ(a, b);
}
