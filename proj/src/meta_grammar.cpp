#include "trx/meta_grammar.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "trx/errors.hpp"
#include "trx/interpreter.hpp"

namespace trx {

SourcePos position_of(std::string_view text, std::size_t offset) {
  SourcePos p;
  p.offset = offset;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

const RuleSource* GrammarSource::find(std::string_view rule) const {
  for (const RuleSource& r : rules) {
    if (r.name == rule) return &r;
  }
  return nullptr;
}

Grammar shape_grammar(const std::vector<std::pair<std::string, Surface>>& rules,
                      const std::string& start) {
  std::vector<std::pair<std::string, Surface>> shaped;
  shaped.reserve(rules.size());
  for (const auto& [name, body] : rules) {
    shaped.emplace_back(name, Surface::action(with_leaves(body), builtin::node(name)));
  }
  return Grammar::build(shaped, start);
}

namespace {

using S = Surface;

S nt(const char* name) { return S::nonterminal(name); }
S lit(const char* s) { return S::literal(s); }
S cls(std::vector<ClassItem> items) { return S::char_class(std::move(items)); }
ClassItem one(char c) { return ClassItem::one(static_cast<unsigned char>(c)); }
ClassItem span(char lo, char hi) {
  return ClassItem::span(static_cast<unsigned char>(lo), static_cast<unsigned char>(hi));
}

// Must stay in step with grammars/peg.peg.
std::vector<std::pair<std::string, Surface>> meta_rules() {
  S sp = S::drop(nt("spacing"));
  S idchar = cls({span('a', 'z'), span('A', 'Z'), span('0', '9'), one('_')});
  S hex = cls({span('0', '9'), span('a', 'f'), span('A', 'F')});
  auto quoted = [&](char q) {
    return S::seq({S::drop(cls({one(q)})), S::star(S::seq(S::not_(cls({one(q)})), nt("char"))),
                   S::drop(cls({one(q)})), sp});
  };
  return {
      {"grammar", S::seq({sp, S::plus(nt("definition")), S::not_(S::any())})},
      {"definition", S::choice(nt("pragma"), nt("rule"))},
      {"pragma", S::seq({S::drop(lit("@start")), sp, nt("identifier"), S::drop(lit(";")), sp})},
      {"rule", S::seq({nt("identifier"), S::drop(lit("<-")), sp, nt("expression"),
                       S::drop(lit(";")), sp})},
      {"expression",
       S::seq(nt("sequence"), S::star(S::seq({S::drop(lit("/")), sp, nt("sequence")})))},
      {"sequence", S::plus(nt("prefixed"))},
      {"prefixed", S::choice(S::seq(nt("prefixop"), nt("prefixed")), nt("postfixed"))},
      {"prefixop", S::seq(cls({one('!'), one('&'), one('~')}), sp)},
      {"postfixed", S::seq(nt("primary"), S::star(nt("postfixop")))},
      {"postfixop", S::seq(cls({one('*'), one('+'), one('?')}), sp)},
      {"primary",
       S::choice({nt("epsilon"), nt("identifier"),
                  S::seq({S::drop(lit("(")), sp, nt("expression"), S::drop(lit(")")), sp}),
                  nt("literal"), nt("class"), nt("dot")})},
      {"epsilon", S::seq({S::drop(lit("eps")), S::not_(idchar), sp})},
      {"identifier", S::seq({cls({span('a', 'z'), span('A', 'Z'), one('_')}), S::star(idchar), sp})},
      {"literal", S::choice(quoted('\''), quoted('"'))},
      {"class", S::seq({S::drop(lit("[")), S::star(S::seq(S::not_(lit("]")), nt("range"))),
                        S::drop(lit("]")), sp})},
      {"range", S::choice(S::seq({nt("cchar"), S::drop(lit("-")), nt("cchar")}), nt("cchar"))},
      {"char", S::choice(S::seq(lit("\\"), nt("escape")), S::seq(S::not_(cls({one('\\')})), S::any()))},
      {"cchar", S::choice(S::seq(lit("\\"), nt("escape")),
                          S::seq(S::not_(cls({one(']'), one('\\')})), S::any()))},
      {"escape", S::choice(cls({one('n'), one('r'), one('t'), one('\''), one('"'), one('\\'), one(']')}),
                           S::seq({lit("x"), hex, hex}))},
      {"dot", S::seq(S::drop(lit(".")), sp)},
      {"spacing",
       S::star(S::choice(cls({one(' '), one('\t'), one('\r'), one('\n')}),
                         S::seq(lit("#"), S::star(S::seq(S::not_(cls({one('\n')})), S::any())))))},
  };
}

struct Meta {
  Grammar grammar;
  Certificate cert;
};

const Meta& meta() {
  static const Meta m = [] {
    Grammar g = shape_grammar(meta_rules(), "grammar");
    WfReport report = check_well_formed(g);
    if (!report.certificate) throw std::logic_error("built-in meta-grammar is not well-formed");
    return Meta{g, *report.certificate};
  }();
  return m;
}

class Lowering {
 public:
  Lowering(std::string_view text, LoadMode mode) : text_(text), mode_(mode) {}

  GrammarSource run(const TreeNode& root, std::string path) {
    std::vector<RuleSource> sources;
    std::optional<RuleSource> pragma;
    std::vector<std::pair<std::string, Surface>> rules;
    for (const Value& def : root.children) {
      const TreeNode& item = only_child(def.as_tree());
      const TreeNode& ident = item.children.at(0).as_tree();
      RuleSource where{leaf_text(ident), position_of(text_, ident.span.start)};
      if (item.rule == "pragma") {
        if (pragma) {
          throw GrammarError(GrammarErrorKind::DuplicateStart, where.name,
                             "second @start pragma at " + std::to_string(where.pos.line) + ":" +
                                 std::to_string(where.pos.column));
        }
        pragma = where;
        continue;
      }
      sources.push_back(where);
      rules.emplace_back(where.name, expression(item.children.at(1).as_tree()));
    }
    if (rules.empty()) {
      throw GrammarError(GrammarErrorKind::UnknownStart, pragma ? pragma->name : "", "grammar has no rules");
    }
    std::string start = pragma ? pragma->name : rules.front().first;
    try {
      Grammar g = mode_ == LoadMode::Shaped ? shape_grammar(rules, start) : Grammar::build(rules, start);
      return GrammarSource{std::move(path), std::move(sources), std::move(pragma), std::move(g)};
    } catch (GrammarError& e) {
      if (auto p = locate(e, sources, pragma)) e.locate(p->line, p->column);
      throw;
    }
  }

 private:
  std::optional<SourcePos> locate(const GrammarError& e, const std::vector<RuleSource>& sources,
                                  const std::optional<RuleSource>& pragma) const {
    switch (e.kind()) {
      case GrammarErrorKind::UndefinedNonterminal:
        for (const RuleSource& r : refs_) {
          if (r.name == e.symbol()) return r.pos;
        }
        return std::nullopt;
      case GrammarErrorKind::UnknownStart:
        if (pragma) return pragma->pos;
        return std::nullopt;
      case GrammarErrorKind::DuplicateRule: {
        // The second definition is the offending one.
        bool seen = false;
        for (const RuleSource& r : sources) {
          if (r.name != e.symbol()) continue;
          if (seen) return r.pos;
          seen = true;
        }
        return std::nullopt;
      }
      default:
        for (const RuleSource& r : sources) {
          if (r.name == e.symbol()) return r.pos;
        }
        return std::nullopt;
    }
  }

  static const TreeNode& only_child(const TreeNode& n) { return n.children.at(0).as_tree(); }

  std::string_view span_text(Span s) const { return text_.substr(s.start, s.size()); }

  std::string leaf_text(const TreeNode& n) const {
    std::string out;
    for (const Value& c : n.children) {
      if (c.is(Value::Kind::Leaf)) out += span_text(c.as_leaf());
    }
    return out;
  }

  Surface expression(const TreeNode& n) const {
    std::vector<Surface> alts;
    for (const Value& c : n.children) alts.push_back(sequence(c.as_tree()));
    return Surface::choice(std::move(alts));
  }

  Surface sequence(const TreeNode& n) const {
    std::vector<Surface> items;
    for (const Value& c : n.children) items.push_back(prefixed(c.as_tree()));
    return Surface::seq(std::move(items));
  }

  Surface prefixed(const TreeNode& n) const {
    const TreeNode* cur = &n;
    std::string ops;
    while (cur->children.size() == 2) {
      ops += leaf_text(cur->children[0].as_tree());
      cur = &cur->children[1].as_tree();
    }
    Surface e = postfixed(only_child(*cur));
    for (std::size_t i = ops.size(); i-- > 0;) {
      switch (ops[i]) {
        case '!': e = Surface::not_(std::move(e)); break;
        case '&': e = Surface::and_(std::move(e)); break;
        default: e = Surface::drop(std::move(e)); break;
      }
    }
    return e;
  }

  Surface postfixed(const TreeNode& n) const {
    Surface e = primary(n.children.at(0).as_tree());
    for (std::size_t i = 1; i < n.children.size(); ++i) {
      switch (leaf_text(n.children[i].as_tree()).at(0)) {
        case '*': e = Surface::star(std::move(e)); break;
        case '+': e = Surface::plus(std::move(e)); break;
        default: e = Surface::optional(std::move(e)); break;
      }
    }
    return e;
  }

  Surface primary(const TreeNode& n) const {
    const TreeNode& c = only_child(n);
    if (c.rule == "epsilon") return Surface::empty();
    if (c.rule == "identifier") {
      std::string name = leaf_text(c);
      refs_.push_back({name, position_of(text_, c.span.start)});
      return Surface::nonterminal(std::move(name));
    }
    if (c.rule == "expression") return expression(c);
    if (c.rule == "dot") return Surface::any();
    if (c.rule == "literal") {
      std::string s;
      for (const Value& ch : c.children) s.push_back(static_cast<char>(decode(ch.as_tree())));
      return Surface::literal(std::move(s));
    }
    if (c.rule == "class") {
      std::vector<ClassItem> items;
      for (const Value& r : c.children) {
        const TreeNode& range = r.as_tree();
        unsigned char lo = decode(range.children.at(0).as_tree());
        if (range.children.size() == 1) {
          items.push_back(ClassItem::one(lo));
        } else {
          items.push_back(ClassItem::span(lo, decode(range.children.at(1).as_tree())));
        }
      }
      return Surface::char_class(std::move(items));
    }
    throw std::logic_error("unexpected node '" + c.rule + "' in grammar tree");
  }

  unsigned char decode(const TreeNode& ch) const {
    std::string_view t = span_text(ch.span);
    if (t.size() == 1) return static_cast<unsigned char>(t[0]);
    switch (t.at(1)) {
      case 'n': return '\n';
      case 't': return '\t';
      case 'r': return '\r';
      case 'x': return static_cast<unsigned char>(std::stoi(std::string(t.substr(2, 2)), nullptr, 16));
      default: return static_cast<unsigned char>(t[1]);
    }
  }

  std::string_view text_;
  LoadMode mode_;
  mutable std::vector<RuleSource> refs_;  // nonterminal references, in source order
};

std::string excerpt(std::string_view text, std::size_t offset) {
  if (offset >= text.size()) return "unexpected end of input";
  std::size_t nl = offset == 0 ? std::string_view::npos : text.rfind('\n', offset - 1);
  std::size_t line_start = nl == std::string_view::npos ? 0 : nl + 1;
  std::size_t line_end = text.find('\n', offset);
  if (line_end == std::string_view::npos) line_end = text.size();
  std::string line(text.substr(line_start, line_end - line_start));
  std::string caret(offset - line_start, ' ');
  for (std::size_t i = 0; i < caret.size(); ++i) {
    if (line[i] == '\t') caret[i] = '\t';
  }
  return "unexpected '" + escape_char(static_cast<unsigned char>(text[offset]), false) + "'\n  " +
         line + "\n  " + caret + "^";
}

}  // namespace

const Grammar& meta_grammar() { return meta().grammar; }
const Certificate& meta_certificate() { return meta().cert; }

GrammarSource load_grammar_with(const Grammar& parser, const Certificate& cert,
                                std::string_view text, LoadMode mode, std::string path) {
  ParseStats stats;
  ParseOutcome out = parse_to_tree(parser, cert, text, ParseMode::Plain, &stats);
  if (!out.ok() || out.match->next_pos != text.size()) {
    std::size_t at = stats.farthest_failure;
    if (out.ok()) at = std::max(at, out.match->next_pos);
    SourcePos p = position_of(text, at);
    throw SyntaxError(at, p.line, p.column, excerpt(text, at));
  }
  return Lowering(text, mode).run(out.match->value.as_tree(), std::move(path));
}

GrammarSource load_grammar_source(std::string_view text, LoadMode mode, std::string path) {
  return load_grammar_with(meta_grammar(), meta_certificate(), text, mode, std::move(path));
}

Grammar load_grammar(std::string_view text, LoadMode mode) {
  return load_grammar_source(text, mode).grammar;
}

GrammarSource load_grammar_file(const std::string& path, LoadMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_grammar_source(buf.str(), mode, path);
}

std::string dump_grammar(const Grammar& g) {
  std::string out;
  const auto& names = g.nonterminals();
  if (g.start() != names.front()) out += "@start " + g.start() + " ;\n";
  for (const std::string& name : names) {
    out += name + " <- " + to_text(g.production(name)) + " ;\n";
  }
  return out;
}

}  // namespace trx
