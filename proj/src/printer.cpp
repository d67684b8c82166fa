#include <cstdio>
#include <optional>
#include <string>

#include "trx/expr.hpp"
#include "trx/surface.hpp"

namespace trx {

std::string escape_char(unsigned char c, bool in_class) {
  switch (c) {
    case '\n': return "\\n";
    case '\t': return "\\t";
    case '\r': return "\\r";
    case '\\': return "\\\\";
    default: break;
  }
  if (!in_class && c == '\'') return "\\'";
  if (in_class && c == ']') return "\\]";
  if (in_class && c == '-') return "\\x2d";
  if (c < 0x20 || c >= 0x7f) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "\\x%02x", c);
    return buf;
  }
  return std::string(1, static_cast<char>(c));
}

namespace {

// Precedence levels of printed forms; a child printed below the level its
// parent position requires gets parentheses.
enum Level { kChoice = 0, kSeq = 1, kPrefix = 2, kPostfix = 3, kPrimary = 4 };

bool has_label(const Expr& e, const char* label) {
  return e.kind() == ExprKind::Action && e.action_ref().label() == label;
}

// Right-nested chain of Terminals, as produced for a literal.
std::optional<std::string> terminal_chain(const Expr& e) {
  std::string out;
  const Expr* cur = &e;
  while (cur->kind() == ExprKind::Seq) {
    if (cur->left().kind() != ExprKind::Terminal) return std::nullopt;
    out.push_back(static_cast<char>(cur->left().lo()));
    cur = &cur->right();
  }
  if (cur->kind() != ExprKind::Terminal) return std::nullopt;
  out.push_back(static_cast<char>(cur->lo()));
  return out;
}

bool is_class_item(const Expr& e) {
  return e.kind() == ExprKind::Terminal || e.kind() == ExprKind::Range;
}

// Right-nested choice of Terminal/Range, as produced for a character class.
bool is_class_chain(const Expr& e) {
  const Expr* cur = &e;
  while (cur->kind() == ExprKind::Choice) {
    if (!is_class_item(cur->left())) return false;
    cur = &cur->right();
  }
  return is_class_item(*cur);
}

void class_item_text(const Expr& e, std::string& out) {
  if (e.kind() == ExprKind::Terminal) {
    out += escape_char(e.lo(), true);
  } else {
    out += escape_char(e.lo(), true);
    out += '-';
    out += escape_char(e.hi(), true);
  }
}

std::string class_text(const Expr& e) {
  std::string out = "[";
  const Expr* cur = &e;
  while (cur->kind() == ExprKind::Choice) {
    class_item_text(cur->left(), out);
    cur = &cur->right();
  }
  class_item_text(*cur, out);
  out += ']';
  return out;
}

std::string literal_text(const std::string& s) {
  std::string out = "'";
  for (unsigned char c : s) out += escape_char(c, false);
  out += '\'';
  return out;
}

struct Printed {
  std::string text;
  Level level;
};

Printed print(const Expr& e);

std::string at_least(const Expr& e, Level needed) {
  Printed p = print(e);
  if (p.level < needed) return "(" + p.text + ")";
  return p.text;
}

Printed print(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Empty:
      return {"eps", kPrimary};
    case ExprKind::AnyChar:
      return {".", kPrimary};
    case ExprKind::Terminal:
    case ExprKind::Range:
      return {class_text(e), kPrimary};
    case ExprKind::NonTerminal:
      return {e.name(), kPrimary};
    case ExprKind::Seq:
      return {at_least(e.left(), kPrefix) + " " + at_least(e.right(), kSeq), kSeq};
    case ExprKind::Choice: {
      const Expr& l = e.left();
      const Expr& r = e.right();
      if (has_label(l, builtin::kSome) && has_label(r, builtin::kNone) &&
          r.inner().kind() == ExprKind::Empty) {
        return {at_least(l.inner(), kPrimary) + "?", kPostfix};
      }
      if (is_class_chain(e)) return {class_text(e), kPrimary};
      return {at_least(l, kSeq) + " / " + at_least(r, kChoice), kChoice};
    }
    case ExprKind::Star:
      return {at_least(e.inner(), kPrimary) + "*", kPostfix};
    case ExprKind::Not:
      if (e.inner().kind() == ExprKind::Not) {
        return {"&" + at_least(e.inner().inner(), kPrefix), kPrefix};
      }
      return {"!" + at_least(e.inner(), kPrefix), kPrefix};
    case ExprKind::Action: {
      const std::string& label = e.action_ref().label();
      const Expr& in = e.inner();
      if (label == builtin::kTuple2Str) {
        if (auto s = terminal_chain(in)) return {literal_text(*s), kPrimary};
      } else if (label == builtin::kCons) {
        if (in.kind() == ExprKind::Seq && in.right().kind() == ExprKind::Star &&
            in.left() == in.right().inner()) {
          return {at_least(in.left(), kPrimary) + "+", kPostfix};
        }
      } else if (label == builtin::kDrop) {
        return {"~" + at_least(in, kPrefix), kPrefix};
      }
      // Leaf and node wrappers, and embedder actions, have no spelling.
      return print(in);
    }
  }
  return {"?", kPrimary};
}

}  // namespace

std::string to_text(const Expr& e) { return print(e).text; }

}  // namespace trx
