#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trx/analysis.hpp"
#include "trx/interpreter.hpp"

namespace trx::bench {

struct Row {
  std::string label;
  std::size_t bytes = 0;
  std::vector<double> runs;  // seconds
  double median = 0;
  /// median / previous row's median; 0 for the first row.
  double ratio = 0;
  bool matched = false;      // the whole input was accepted
  MemoStats memo;
};

/// Parses each input `runs` times, in rounds over all inputs; every round
/// begins with an untimed parse of the first input.
std::vector<Row> run(const Grammar& g, const Certificate& cert,
                     const std::vector<std::pair<std::string, std::string>>& inputs, ParseMode mode,
                     std::size_t runs);

double median(std::vector<double> xs);

/// "1M,2M,4M" -> bytes; suffixes K and M are powers of 1024. Throws
/// std::invalid_argument on malformed lists.
std::vector<std::size_t> parse_sizes(std::string_view list);

std::string size_label(std::size_t bytes);

}  // namespace trx::bench
