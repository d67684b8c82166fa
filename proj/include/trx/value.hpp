#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trx {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - start; }
  friend bool operator==(const Span&, const Span&) = default;
};

/// Payload of a value produced by an embedder-supplied action.
class UserPayload {
 public:
  virtual ~UserPayload() = default;
  virtual bool equals(const UserPayload& other) const = 0;
  virtual std::string repr() const = 0;
};

class Value;

struct TreeNode;

/// Universal semantic-value domain. Values are immutable; aggregates share
/// their storage, so copying a Value is cheap.
class Value {
 public:
  enum class Kind : std::uint8_t { Unit, Char, Str, Tuple, List, Opt, Tree, Leaf, User };

  Value() = default;  // Unit

  static Value unit() { return Value{}; }
  static Value character(unsigned char c);
  static Value string(std::string s);
  static Value tuple(std::vector<Value> items);
  static Value pair(Value first, Value second);
  static Value list(std::vector<Value> items);
  static Value none();
  static Value some(Value inner);
  static Value tree(std::string rule, Span span, std::vector<Value> children);
  static Value leaf(Span span);
  static Value user(std::shared_ptr<const UserPayload> payload);
  /// Convenience user payload holding a signed integer.
  static Value number(std::int64_t n);

  Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
  bool is(Kind k) const noexcept { return kind() == k; }

  unsigned char as_char() const;
  const std::string& as_string() const;
  /// Items of a Tuple or List.
  const std::vector<Value>& items() const;
  /// Opt: nullptr for None.
  const Value* as_opt() const;
  const TreeNode& as_tree() const;
  Span as_leaf() const;
  const UserPayload& as_user() const;
  /// Integer carried by a number() payload.
  std::int64_t as_number() const;

  friend bool operator==(const Value& a, const Value& b);

  /// Debug rendering, stable across runs.
  std::string repr() const;

 private:
  struct UnitTag {};
  struct TupleBox {
    std::shared_ptr<const std::vector<Value>> items;
  };
  struct ListBox {
    std::shared_ptr<const std::vector<Value>> items;
  };
  struct OptBox {
    std::shared_ptr<const Value> inner;  // null = None
  };

  using Data = std::variant<UnitTag, unsigned char, std::shared_ptr<const std::string>,
                            TupleBox, ListBox, OptBox, std::shared_ptr<const TreeNode>,
                            Span, std::shared_ptr<const UserPayload>>;

  explicit Value(Data d) : data_(std::move(d)) {}

  Data data_;
};

struct TreeNode {
  std::string rule;
  Span span;
  std::vector<Value> children;  // Tree or Leaf values, in input order
};

const char* to_string(Value::Kind kind);

}  // namespace trx
