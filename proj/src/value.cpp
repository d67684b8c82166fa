#include "trx/value.hpp"

#include <sstream>
#include <stdexcept>

namespace trx {

namespace {

class NumberPayload final : public UserPayload {
 public:
  explicit NumberPayload(std::int64_t n) : n_(n) {}
  std::int64_t value() const noexcept { return n_; }

  bool equals(const UserPayload& other) const override {
    auto* o = dynamic_cast<const NumberPayload*>(&other);
    return o != nullptr && o->n_ == n_;
  }
  std::string repr() const override { return std::to_string(n_); }

 private:
  std::int64_t n_;
};

// Aggregates can nest as deep as the input does (one level per recursive
// rule application), so releasing them must not recurse on the C++ stack.
// The deleter moves an aggregate's children onto a per-thread list and the
// outermost release drains it.
struct Reclaimer {
  bool draining = false;
  std::vector<Value> pending;
};

thread_local Reclaimer reclaimer;

template <class T, class Steal>
void reclaim(const T* p, Steal steal) {
  T* owned = const_cast<T*>(p);
  steal(*owned, reclaimer.pending);
  delete owned;
  if (reclaimer.draining) return;
  reclaimer.draining = true;
  while (!reclaimer.pending.empty()) {
    Value v = std::move(reclaimer.pending.back());
    reclaimer.pending.pop_back();
  }
  reclaimer.draining = false;
}

void steal_items(std::vector<Value>& items, std::vector<Value>& out) {
  for (Value& v : items) out.push_back(std::move(v));
  items.clear();
}

std::shared_ptr<const std::vector<Value>> share_items(std::vector<Value> items) {
  return std::shared_ptr<const std::vector<Value>>(
      new std::vector<Value>(std::move(items)), [](const std::vector<Value>* p) {
        reclaim(p, [](std::vector<Value>& v, std::vector<Value>& out) { steal_items(v, out); });
      });
}

[[noreturn]] void wrong_kind(const char* wanted, Value::Kind got) {
  throw std::logic_error(std::string("value is ") + to_string(got) + ", expected " + wanted);
}

// Iterative as well: a work item is either a value or punctuation.
struct RenderItem {
  const Value* value;
  const char* text;
};

void render(const Value& root, std::ostringstream& out) {
  std::vector<RenderItem> work{{&root, nullptr}};
  auto push_items = [&work](const std::vector<Value>& items, const char* close) {
    work.push_back({nullptr, close});
    for (std::size_t i = items.size(); i-- > 0;) {
      work.push_back({&items[i], nullptr});
      if (i != 0) work.push_back({nullptr, ", "});
    }
  };
  while (!work.empty()) {
    RenderItem item = work.back();
    work.pop_back();
    if (item.value == nullptr) {
      out << item.text;
      continue;
    }
    const Value& v = *item.value;
    switch (v.kind()) {
      case Value::Kind::Unit:
        out << "I";
        break;
      case Value::Kind::Char: {
        unsigned char c = v.as_char();
        if (c >= 0x20 && c < 0x7f && c != '\'' && c != '\\') {
          out << '\'' << static_cast<char>(c) << '\'';
        } else {
          out << "'\\x" << std::hex << static_cast<int>(c) << std::dec << '\'';
        }
        break;
      }
      case Value::Kind::Str:
        out << '"' << v.as_string() << '"';
        break;
      case Value::Kind::Tuple:
        out << '(';
        push_items(v.items(), ")");
        break;
      case Value::Kind::List:
        out << '[';
        push_items(v.items(), "]");
        break;
      case Value::Kind::Opt:
        if (const Value* inner = v.as_opt()) {
          out << "Some(";
          work.push_back({nullptr, ")"});
          work.push_back({inner, nullptr});
        } else {
          out << "None";
        }
        break;
      case Value::Kind::Tree: {
        const TreeNode& t = v.as_tree();
        out << t.rule << '@' << t.span.start << ':' << t.span.end << '{';
        push_items(t.children, "}");
        break;
      }
      case Value::Kind::Leaf: {
        Span sp = v.as_leaf();
        out << "leaf@" << sp.start << ':' << sp.end;
        break;
      }
      case Value::Kind::User:
        out << v.as_user().repr();
        break;
    }
  }
}

}  // namespace

const char* to_string(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::Unit: return "Unit";
    case Value::Kind::Char: return "Char";
    case Value::Kind::Str: return "Str";
    case Value::Kind::Tuple: return "Tuple";
    case Value::Kind::List: return "List";
    case Value::Kind::Opt: return "Opt";
    case Value::Kind::Tree: return "Tree";
    case Value::Kind::Leaf: return "Leaf";
    case Value::Kind::User: return "User";
  }
  return "?";
}

Value Value::character(unsigned char c) { return Value{Data{c}}; }

Value Value::string(std::string s) {
  return Value{Data{std::make_shared<const std::string>(std::move(s))}};
}

Value Value::tuple(std::vector<Value> items) {
  return Value{Data{TupleBox{share_items(std::move(items))}}};
}

Value Value::pair(Value first, Value second) {
  std::vector<Value> items;
  items.reserve(2);
  items.push_back(std::move(first));
  items.push_back(std::move(second));
  return tuple(std::move(items));
}

Value Value::list(std::vector<Value> items) {
  return Value{Data{ListBox{share_items(std::move(items))}}};
}

Value Value::none() { return Value{Data{OptBox{}}}; }

Value Value::some(Value inner) {
  std::shared_ptr<const Value> box(new Value(std::move(inner)), [](const Value* p) {
    reclaim(p, [](Value& v, std::vector<Value>& out) { out.push_back(std::move(v)); });
  });
  return Value{Data{OptBox{std::move(box)}}};
}

Value Value::tree(std::string rule, Span span, std::vector<Value> children) {
  std::shared_ptr<const TreeNode> node(
      new TreeNode{std::move(rule), span, std::move(children)}, [](const TreeNode* p) {
        reclaim(p, [](TreeNode& t, std::vector<Value>& out) { steal_items(t.children, out); });
      });
  return Value{Data{std::move(node)}};
}

Value Value::leaf(Span span) { return Value{Data{span}}; }

Value Value::user(std::shared_ptr<const UserPayload> payload) {
  if (!payload) throw std::invalid_argument("null user payload");
  return Value{Data{std::move(payload)}};
}

Value Value::number(std::int64_t n) { return user(std::make_shared<const NumberPayload>(n)); }

unsigned char Value::as_char() const {
  if (auto* c = std::get_if<unsigned char>(&data_)) return *c;
  wrong_kind("Char", kind());
}

const std::string& Value::as_string() const {
  if (auto* s = std::get_if<std::shared_ptr<const std::string>>(&data_)) return **s;
  wrong_kind("Str", kind());
}

const std::vector<Value>& Value::items() const {
  if (auto* t = std::get_if<TupleBox>(&data_)) return *t->items;
  if (auto* l = std::get_if<ListBox>(&data_)) return *l->items;
  wrong_kind("Tuple or List", kind());
}

const Value* Value::as_opt() const {
  if (auto* o = std::get_if<OptBox>(&data_)) return o->inner.get();
  wrong_kind("Opt", kind());
}

const TreeNode& Value::as_tree() const {
  if (auto* t = std::get_if<std::shared_ptr<const TreeNode>>(&data_)) return **t;
  wrong_kind("Tree", kind());
}

Span Value::as_leaf() const {
  if (auto* s = std::get_if<Span>(&data_)) return *s;
  wrong_kind("Leaf", kind());
}

const UserPayload& Value::as_user() const {
  if (auto* u = std::get_if<std::shared_ptr<const UserPayload>>(&data_)) return **u;
  wrong_kind("User", kind());
}

std::int64_t Value::as_number() const {
  auto* n = dynamic_cast<const NumberPayload*>(&as_user());
  if (n == nullptr) throw std::logic_error("user payload is not a number");
  return n->value();
}

bool operator==(const Value& a, const Value& b) {
  // Explicit work list: values can be nested as deep as the input.
  std::vector<std::pair<const Value*, const Value*>> work{{&a, &b}};
  auto push_items = [&work](const std::vector<Value>& x, const std::vector<Value>& y) {
    if (x.size() != y.size()) return false;
    if (&x == &y) return true;
    for (std::size_t i = 0; i < x.size(); ++i) work.emplace_back(&x[i], &y[i]);
    return true;
  };
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case Value::Kind::Unit:
        break;
      case Value::Kind::Char:
        if (x->as_char() != y->as_char()) return false;
        break;
      case Value::Kind::Str:
        if (x->as_string() != y->as_string()) return false;
        break;
      case Value::Kind::Tuple:
      case Value::Kind::List:
        if (!push_items(x->items(), y->items())) return false;
        break;
      case Value::Kind::Opt: {
        const Value* p = x->as_opt();
        const Value* q = y->as_opt();
        if (p == nullptr || q == nullptr) {
          if (p != q) return false;
        } else {
          work.emplace_back(p, q);
        }
        break;
      }
      case Value::Kind::Tree: {
        const TreeNode& p = x->as_tree();
        const TreeNode& q = y->as_tree();
        if (&p == &q) break;
        if (p.rule != q.rule || !(p.span == q.span)) return false;
        if (!push_items(p.children, q.children)) return false;
        break;
      }
      case Value::Kind::Leaf:
        if (!(x->as_leaf() == y->as_leaf())) return false;
        break;
      case Value::Kind::User:
        if (!x->as_user().equals(y->as_user())) return false;
        break;
    }
  }
  return true;
}

std::string Value::repr() const {
  std::ostringstream out;
  render(*this, out);
  return out.str();
}

}  // namespace trx
