#include "trx/tree_json.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace trx {

namespace {

// Length of the valid UTF-8 sequence starting at s[i], or 0.
std::size_t utf8_length(std::string_view s, std::size_t i) {
  auto b = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char c = b(i);
  std::size_t n;
  if (c >= 0xc2 && c <= 0xdf) {
    n = 2;
  } else if (c >= 0xe0 && c <= 0xef) {
    n = 3;
  } else if (c >= 0xf0 && c <= 0xf4) {
    n = 4;
  } else {
    return 0;
  }
  if (i + n > s.size()) return 0;
  for (std::size_t k = 1; k < n; ++k) {
    if ((b(i + k) & 0xc0) != 0x80) return 0;
  }
  unsigned char c1 = b(i + 1);
  if ((c == 0xe0 && c1 < 0xa0) || (c == 0xed && c1 > 0x9f) || (c == 0xf0 && c1 < 0x90) ||
      (c == 0xf4 && c1 > 0x8f)) {
    return 0;
  }
  return n;
}

void quote_into(std::string& out, std::string_view s) {
  out.push_back('"');
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c >= 0x80) {
      if (std::size_t n = utf8_length(s, i)) {
        out.append(s.substr(i, n));
        i += n;
        continue;
      }
    }
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20 || c >= 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
    ++i;
  }
  out.push_back('"');
}

struct Cursor {
  const TreeNode* node;
  std::size_t next = 0;
};

std::string_view text_of(std::string_view input, Span s) { return input.substr(s.start, s.size()); }

}  // namespace

std::string json_quote(std::string_view bytes) {
  std::string out;
  quote_into(out, bytes);
  return out;
}

void write_tree_json(std::ostream& out, const Value& tree, std::string_view input) {
  std::string buf;
  auto flush = [&] {
    if (buf.size() > (1u << 16)) {
      out << buf;
      buf.clear();
    }
  };
  auto leaf = [&](Span s) {
    buf += "{\"text\":";
    quote_into(buf, text_of(input, s));
    buf += ",\"start\":" + std::to_string(s.start) + ",\"end\":" + std::to_string(s.end) + "}";
  };
  auto open = [&](const TreeNode& n) {
    buf += "{\"rule\":";
    quote_into(buf, n.rule);
    buf += ",\"start\":" + std::to_string(n.span.start) + ",\"end\":" + std::to_string(n.span.end) +
           ",\"children\":[";
  };

  if (tree.is(Value::Kind::Leaf)) {
    leaf(tree.as_leaf());
    out << buf;
    return;
  }
  std::vector<Cursor> stack{{&tree.as_tree()}};
  open(tree.as_tree());
  while (!stack.empty()) {
    Cursor& top = stack.back();
    if (top.next == top.node->children.size()) {
      buf += "]}";
      stack.pop_back();
      continue;
    }
    if (top.next > 0) buf.push_back(',');
    const Value& child = top.node->children[top.next++];
    if (child.is(Value::Kind::Leaf)) {
      leaf(child.as_leaf());
    } else {
      open(child.as_tree());
      stack.push_back({&child.as_tree()});
    }
    flush();
  }
  out << buf;
}

std::string tree_json(const Value& tree, std::string_view input) {
  std::ostringstream os;
  write_tree_json(os, tree, input);
  return os.str();
}

void write_tree_outline(std::ostream& out, const Value& tree, std::string_view input) {
  auto line = [&](std::size_t depth, const Value& v) {
    std::string s(depth * 2, ' ');
    if (v.is(Value::Kind::Leaf)) {
      Span sp = v.as_leaf();
      quote_into(s, text_of(input, sp));
    } else {
      const TreeNode& n = v.as_tree();
      s += n.rule + " [" + std::to_string(n.span.start) + ", " + std::to_string(n.span.end) + ")";
    }
    out << s << '\n';
  };
  line(0, tree);
  if (!tree.is(Value::Kind::Tree)) return;
  std::vector<Cursor> stack{{&tree.as_tree()}};
  while (!stack.empty()) {
    Cursor& top = stack.back();
    if (top.next == top.node->children.size()) {
      stack.pop_back();
      continue;
    }
    const Value& child = top.node->children[top.next++];
    line(stack.size(), child);
    if (child.is(Value::Kind::Tree)) stack.push_back({&child.as_tree()});
  }
}

}  // namespace trx
