#include "trx/corpus.hpp"

#include <array>
#include <random>

namespace trx::corpus {

namespace {

constexpr std::array kWords{"lorem", "ipsum", "dolor", "sit", "amet", "auction", "bid", "seller",
                            "price", "region", "europe", "asia", "quantity", "shipping", "reserve"};
constexpr std::array kEntities{"&amp;", "&lt;", "&gt;", "&#38;", "&#x3c;", "&quot;"};

class Writer {
 public:
  Writer(std::string& out, std::uint64_t seed) : out_(out), rng_(seed) {}

  void section(int depth) {
    out_ += "<section id=\"s" + std::to_string(counter_++) + "\">\n";
    int parts = uniform(2, 5);
    for (int i = 0; i < parts; ++i) {
      switch (uniform(0, depth < 3 ? 5 : 4)) {
        case 0: person(); break;
        case 1: list(); break;
        case 2: title(); break;
        case 3: out_ += "<!-- note " + std::to_string(counter_++) + " -->\n"; break;
        case 4: out_ += "<a href='#s" + std::to_string(uniform(0, 999)) + "'/>\n"; break;
        default: section(depth + 1); break;
      }
    }
    out_ += "</section>\n";
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  void text(int words) {
    for (int i = 0; i < words; ++i) {
      if (i > 0) out_ += ' ';
      if (uniform(0, 9) == 0) {
        out_ += kEntities[uniform(0, kEntities.size() - 1)];
      } else {
        out_ += kWords[uniform(0, kWords.size() - 1)];
      }
    }
  }

  void inline_text() {
    int runs = uniform(1, 4);
    for (int i = 0; i < runs; ++i) {
      switch (uniform(0, 3)) {
        case 0: out_ += "<bold>"; text(uniform(1, 3)); out_ += "</bold>"; break;
        case 1: out_ += "<emph>"; text(uniform(1, 3)); out_ += "</emph>"; break;
        default: text(uniform(2, 8)); break;
      }
      out_ += ' ';
    }
  }

  void person() {
    out_ += "<person id=\"p" + std::to_string(counter_++) + "\">";
    out_ += "<name>";
    text(2);
    out_ += "</name>";
    if (uniform(0, 1) == 0) out_ += "<email>mailto:" + std::string(kWords[uniform(0, kWords.size() - 1)]) + "@example.org</email>";
    out_ += "</person>\n";
  }

  void list() {
    out_ += "<list>\n";
    int items = uniform(1, 4);
    for (int i = 0; i < items; ++i) {
      out_ += "  <item n='" + std::to_string(i) + "'>";
      inline_text();
      out_ += "</item>\n";
    }
    out_ += "</list>\n";
  }

  void title() {
    out_ += "<title>";
    inline_text();
    out_ += "</title>\n";
  }

  std::string& out_;
  std::mt19937_64 rng_;
  std::size_t counter_ = 0;
};

}  // namespace

std::string xmark_lite(std::size_t bytes, std::uint64_t seed) {
  if (bytes == 0) return {};
  const std::string close = "</doc>\n";
  std::string out = "<?xml version=\"1.0\"?>\n<!-- generated -->\n<doc>\n";
  out.reserve(bytes + 4096);
  Writer w(out, seed);
  while (out.size() + close.size() < bytes) w.section(0);
  out += close;
  return out;
}

std::string backtrack(std::size_t bytes) {
  if (bytes == 0) return {};
  std::size_t depth = (bytes - 1) / 2;
  return std::string(depth, '(') + "a" + std::string(depth, ')');
}

std::string nested_elements(std::size_t depth) {
  std::string out;
  out.reserve(depth * 7);
  for (std::size_t i = 0; i < depth; ++i) out += "<a>";
  for (std::size_t i = 0; i < depth; ++i) out += "</a>";
  return out;
}

}  // namespace trx::corpus
