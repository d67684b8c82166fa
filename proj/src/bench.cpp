#include "trx/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <stdexcept>

namespace trx::bench {

double median(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

std::vector<Row> run(const Grammar& g, const Certificate& cert,
                     const std::vector<std::pair<std::string, std::string>>& inputs, ParseMode mode,
                     std::size_t runs) {
  std::vector<Row> rows(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    rows[i].label = inputs[i].first;
    rows[i].bytes = inputs[i].second.size();
  }
  // Rounds visit every input once, so slow drift in machine load hits all
  // sizes alike. Each round starts with an untimed parse, so the first timed
  // parse does not inherit the heap left behind by the largest one.
  for (std::size_t k = 0; k < runs; ++k) {
    if (!inputs.empty()) (void)parse(g, cert, inputs.front().second, mode);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const std::string& input = inputs[i].second;
      ParseStats stats;
      auto t0 = std::chrono::steady_clock::now();
      ParseOutcome out = parse(g, cert, input, mode, &stats);
      auto t1 = std::chrono::steady_clock::now();
      rows[i].runs.push_back(std::chrono::duration<double>(t1 - t0).count());
      rows[i].matched = out.ok() && out.match->next_pos == input.size();
      rows[i].memo = stats.memo;
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].median = median(rows[i].runs);
    if (i > 0 && rows[i - 1].median > 0) rows[i].ratio = rows[i].median / rows[i - 1].median;
  }
  return rows;
}

std::vector<std::size_t> parse_sizes(std::string_view list) {
  std::vector<std::size_t> out;
  while (!list.empty()) {
    std::size_t comma = list.find(',');
    std::string_view item = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    std::size_t scale = 1;
    if (!item.empty() && (item.back() == 'K' || item.back() == 'k')) {
      scale = 1u << 10;
      item.remove_suffix(1);
    } else if (!item.empty() && (item.back() == 'M' || item.back() == 'm')) {
      scale = 1u << 20;
      item.remove_suffix(1);
    }
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw std::invalid_argument("bad size '" + std::string(item) + "'");
    }
    out.push_back(n * scale);
  }
  if (out.empty()) throw std::invalid_argument("empty size list");
  return out;
}

std::string size_label(std::size_t bytes) {
  if (bytes != 0 && bytes % (1u << 20) == 0) return std::to_string(bytes >> 20) + "M";
  if (bytes != 0 && bytes % (1u << 10) == 0) return std::to_string(bytes >> 10) + "K";
  return std::to_string(bytes);
}

}  // namespace trx::bench
