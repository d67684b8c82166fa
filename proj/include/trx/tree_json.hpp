#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "trx/value.hpp"

namespace trx {

/// Writes a parse tree as JSON:
///   node {"rule": str, "start": int, "end": int, "children": [node|leaf]}
///   leaf {"text": str, "start": int, "end": int}
/// Offsets are bytes into `input`. Iterative, so any nesting depth works.
/// Bytes that are not part of valid UTF-8 are written as \u00XX.
void write_tree_json(std::ostream& out, const Value& tree, std::string_view input);
std::string tree_json(const Value& tree, std::string_view input);

/// Indented outline, one node or leaf per line.
void write_tree_outline(std::ostream& out, const Value& tree, std::string_view input);

/// JSON string literal for arbitrary bytes, with the same UTF-8 rule.
std::string json_quote(std::string_view bytes);

}  // namespace trx
