#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "trx/grammar.hpp"

namespace trx::calculator {

/// The bundled arithmetic grammar with evaluating actions attached:
/// number -> its decimal value, term -> x2 / x3, factor -> x1 * x3,
/// expr -> x1 + x3, ws -> unit.
const Grammar& grammar();

/// The same rules without actions, as load_grammar(..., LoadMode::Raw)
/// produces them from math.peg.
const Grammar& plain_grammar();

/// Value of the whole input, or nullopt when it is not an expression.
std::optional<std::int64_t> evaluate(std::string_view input);

}  // namespace trx::calculator
