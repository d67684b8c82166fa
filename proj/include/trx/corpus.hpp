#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace trx::corpus {

/// Deterministic document in the xml-lite dialect of roughly `bytes` bytes
/// (at most one section over): nested elements, attributes, entities,
/// comments and self-closing tags. Empty when bytes == 0.
std::string xmark_lite(std::size_t bytes, std::uint64_t seed);

/// "((...(a)...))" of the given length (rounded down to odd), the
/// adversarial input for backtrack.peg.
std::string backtrack(std::size_t bytes);

/// `depth` nested <a> elements.
std::string nested_elements(std::size_t depth);

}  // namespace trx::corpus
