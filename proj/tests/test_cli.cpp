#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "trx/cli.hpp"

using namespace trx;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result trx_run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string g(const std::string& name) { return std::string(TRX_GRAMMAR_DIR) + "/" + name; }

std::string golden(const std::string& name) {
  std::ifstream f(std::string(TRX_GOLDEN_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / ("trx_cli_test_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p.string();
}

// Checks the node/leaf schema recursively; returns the covered span.
void check_tree(const json& t, std::size_t len) {
  ASSERT_TRUE(t.is_object());
  ASSERT_TRUE(t.contains("start") && t.contains("end"));
  std::size_t s = t["start"];
  std::size_t e = t["end"];
  EXPECT_LE(s, e);
  EXPECT_LE(e, len);
  if (t.contains("text")) {
    EXPECT_EQ(t.size(), 3u);
    EXPECT_EQ(t["text"].get<std::string>().size(), e - s);
    return;
  }
  ASSERT_TRUE(t["rule"].is_string());
  ASSERT_TRUE(t["children"].is_array());
  std::size_t at = s;
  for (const json& c : t["children"]) {
    check_tree(c, len);
    EXPECT_LE(at, c["start"].get<std::size_t>());
    at = c["end"];
  }
  EXPECT_LE(at, e);
}

}  // namespace

TEST(Cli, CheckWellFormed) {
  Result r = trx_run({"check", g("math.peg")});
  EXPECT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_TRUE(j["well_formed"].get<bool>());
  EXPECT_EQ(j["rules"], 5);
  EXPECT_EQ(j["start"], "expr");
  EXPECT_TRUE(j["offenders"].empty());
}

TEST(Cli, CheckLeftRecursive) {
  Result r = trx_run({"check", g("math-leftrec.peg")});
  EXPECT_EQ(r.code, 1);
  json j = json::parse(r.out);
  EXPECT_FALSE(j["well_formed"].get<bool>());
  ASSERT_FALSE(j["offenders"].empty());
  EXPECT_EQ(j["offenders"][0]["rule"], "expr");
  EXPECT_GT(j["offenders"][0]["line"].get<int>(), 0);
  Result text = trx_run({"check", g("math-leftrec.peg"), "--text"});
  EXPECT_EQ(text.code, 1);
  EXPECT_NE(text.out.find("expr"), std::string::npos);
}

TEST(Cli, CheckSimplifiedAnalysis) {
  Result r = trx_run({"check", g("math.peg"), "--analysis", "simplified"});
  json j = json::parse(r.out);
  EXPECT_EQ(j["analysis"], "simplified");
}

TEST(Cli, MissingFileAndUsage) {
  EXPECT_EQ(trx_run({"check", "/nonexistent/x.peg"}).code, 2);
  EXPECT_EQ(trx_run({}).code, 2);
  EXPECT_EQ(trx_run({"frobnicate"}).code, 2);
  EXPECT_EQ(trx_run({"parse", g("math.peg")}).code, 2);
  EXPECT_EQ(trx_run({"parse", g("math.peg"), "-", "--string", "1"}).code, 2);
  EXPECT_EQ(trx_run({"check", g("math.peg"), "--analysis", "fast"}).code, 2);
  EXPECT_EQ(trx_run({"--help"}).code, 0);
}

TEST(Cli, MalformedGrammarFile) {
  Result r = trx_run({"check", temp_file("bad.peg", "A <- 'a'\nB <- ;\n")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":2:"), std::string::npos);
  Result u = trx_run({"check", temp_file("undef.peg", "A <- B ;\n")});
  EXPECT_EQ(u.code, 2);
  EXPECT_NE(u.err.find("B"), std::string::npos);
}

TEST(Cli, ParseRefusesIllFormedGrammar) {
  Result r = trx_run({"parse", g("math-leftrec.peg"), "--string", "1+2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("expr"), std::string::npos);
}

TEST(Cli, Eval) {
  Result r = trx_run({"parse", g("math.peg"), "--string", "2*(3+4)*2+8", "--eval"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "36\n");
  EXPECT_EQ(trx_run({"parse", g("math.peg"), "--string", "2*", "--eval"}).code, 1);
  EXPECT_EQ(trx_run({"parse", g("reserved.peg"), "--string", "x", "--eval"}).code, 2);
}

TEST(Cli, ParseJsonTree) {
  std::string input = "<doc><a x=\"1\">hi &amp; bye</a><b/></doc>";
  Result r = trx_run({"parse", g("xml-lite.peg"), "--string", input, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["consumed"], input.size());
  EXPECT_EQ(j["length"], input.size());
  check_tree(j["tree"], input.size());
  EXPECT_EQ(j["tree"]["rule"], "document");
}

TEST(Cli, ParseFromStdinAndFile) {
  EXPECT_EQ(trx_run({"parse", g("math.peg"), "-"}, "1+2").code, 0);
  EXPECT_EQ(trx_run({"parse", g("math.peg"), temp_file("in.txt", "3*4")}).code, 0);
  EXPECT_EQ(trx_run({"parse", g("math.peg"), "/nonexistent/in.txt"}).code, 2);
}

TEST(Cli, XmlMismatchReportsPosition) {
  Result r = trx_run({"parse", g("xml-lite.peg"), "--string", "<a></b>", "--json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, golden("xml-reject.json"));
  json j = json::parse(r.out);
  EXPECT_EQ(j["farthest_failure"], 5);
  EXPECT_EQ(j["column"], 6);
}

TEST(Cli, PrefixMatch) {
  Result full = trx_run({"parse", g("math.peg"), "--string", "1+2)", "--json"});
  EXPECT_EQ(full.code, 1);
  EXPECT_EQ(json::parse(full.out)["consumed"], 3);
  Result pre = trx_run({"parse", g("math.peg"), "--string", "1+2)", "--json", "--prefix"});
  EXPECT_EQ(pre.code, 0);
  json j = json::parse(pre.out);
  EXPECT_EQ(j["consumed"], 3);
  EXPECT_EQ(j["length"], 4);
}

TEST(Cli, PackratModeGivesSameTree) {
  Result a = trx_run({"parse", g("dangling.peg"), "--string", "if (a) if (b) x; else y;", "--json"});
  Result b = trx_run(
      {"parse", g("dangling.peg"), "--string", "if (a) if (b) x; else y;", "--json", "--mode", "packrat"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, BenchSmall) {
  Result r = trx_run({"bench", g("xml-lite.peg"), "--sizes", "0,4K", "--runs", "1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][1]["bytes"].get<std::size_t>() >= 4096, true);
  EXPECT_TRUE(j["rows"][1]["matched"].get<bool>());
  Result t = trx_run({"bench", g("backtrack.peg"), "--gen", "backtrack", "--sizes", "1K", "--runs", "1",
                      "--mode", "packrat"});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("hits"), std::string::npos);
  EXPECT_EQ(trx_run({"bench", g("xml-lite.peg"), "--sizes", "x"}).code, 2);
  EXPECT_EQ(trx_run({"bench", g("xml-lite.peg"), "--gen", "/nonexistent"}).code, 2);
}

TEST(Cli, Color) {
  ::setenv("TRX_COLOR", "1", 1);
  Result r = trx_run({"parse", g("math.peg"), "--string", "1"});
  ::unsetenv("TRX_COLOR");
  EXPECT_NE(r.out.find("\x1b[32m"), std::string::npos);
  Result plain = trx_run({"parse", g("math.peg"), "--string", "1"});
  EXPECT_EQ(plain.out.find("\x1b["), std::string::npos);
}
