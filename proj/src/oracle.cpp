#include "trx/oracle.hpp"

#include <functional>

#include "trx/surface.hpp"

namespace trx::oracle {

namespace {

struct Ok {
  std::size_t next;
  Value value;
};

// One derivation: result (nullopt = fail) and its step index.
struct Derivation {
  std::optional<Ok> ok;
  std::uint64_t steps;
};

class Judge {
 public:
  Judge(const Grammar& g, std::string_view input, std::vector<std::string>* trace)
      : g_(g), s_(input), trace_(trace) {}

  // nullopt: no derivation with index <= fuel.
  std::optional<Derivation> run(const Expr& e, std::size_t pos, std::uint64_t fuel) {
    if (fuel == 0) return std::nullopt;
    switch (e.kind()) {
      case ExprKind::Empty:
        return rule("empty", {Ok{pos, Value::unit()}, 1});

      case ExprKind::AnyChar:
        if (pos < s_.size()) return rule("any", {Ok{pos + 1, chr(pos)}, 1});
        return rule("any-eof", {std::nullopt, 1});

      case ExprKind::Terminal:
        if (pos >= s_.size()) return rule("terminal-eof", {std::nullopt, 1});
        if (byte(pos) == e.lo()) return rule("terminal", {Ok{pos + 1, chr(pos)}, 1});
        return rule("terminal-mismatch", {std::nullopt, 1});

      case ExprKind::Range:
        if (pos >= s_.size()) return rule("range-eof", {std::nullopt, 1});
        if (e.lo() <= byte(pos) && byte(pos) <= e.hi()) return rule("range", {Ok{pos + 1, chr(pos)}, 1});
        return rule("range-mismatch", {std::nullopt, 1});

      case ExprKind::NonTerminal: {
        auto body = run(g_.production(e.name()), pos, fuel - 1);
        if (!body) return std::nullopt;
        return rule("nonterminal", {std::move(body->ok), body->steps + 1});
      }

      case ExprKind::Seq: {
        auto first = run(e.left(), pos, fuel - 1);
        if (!first) return std::nullopt;
        if (!first->ok) return rule("seq-fail-first", {std::nullopt, first->steps + 1});
        auto second = run(e.right(), first->ok->next, fuel - 1 - first->steps);
        if (!second) return std::nullopt;
        std::uint64_t steps = first->steps + second->steps + 1;
        if (!second->ok) return rule("seq-fail-second", {std::nullopt, steps});
        return rule("seq", {Ok{second->ok->next, Value::pair(first->ok->value, second->ok->value)},
                            steps});
      }

      case ExprKind::Choice: {
        auto first = run(e.left(), pos, fuel - 1);
        if (!first) return std::nullopt;
        if (first->ok) return rule("choice-first", {std::move(first->ok), first->steps + 1});
        auto second = run(e.right(), pos, fuel - 1 - first->steps);
        if (!second) return std::nullopt;
        return rule("choice-second", {std::move(second->ok), first->steps + second->steps + 1});
      }

      case ExprKind::Star: {
        auto head = run(e.inner(), pos, fuel - 1);
        if (!head) return std::nullopt;
        if (!head->ok) return rule("star-base", {Ok{pos, Value::list({})}, head->steps + 1});
        auto rest = run(e, head->ok->next, fuel - 1 - head->steps);
        if (!rest) return std::nullopt;
        std::vector<Value> items{head->ok->value};
        const auto& tail = rest->ok->value.items();
        items.insert(items.end(), tail.begin(), tail.end());
        return rule("star-step", {Ok{rest->ok->next, Value::list(std::move(items))},
                                  head->steps + rest->steps + 1});
      }

      case ExprKind::Not: {
        auto inner = run(e.inner(), pos, fuel - 1);
        if (!inner) return std::nullopt;
        if (inner->ok) return rule("not-fail", {std::nullopt, inner->steps + 1});
        return rule("not", {Ok{pos, Value::unit()}, inner->steps + 1});
      }

      case ExprKind::Action: {
        auto inner = run(e.inner(), pos, fuel - 1);
        if (!inner) return std::nullopt;
        if (!inner->ok) return rule("action-fail", {std::nullopt, inner->steps + 1});
        Value v = e.action_ref().apply(inner->ok->value, Span{pos, inner->ok->next});
        return rule("action", {Ok{inner->ok->next, std::move(v)}, inner->steps + 1});
      }
    }
    return std::nullopt;
  }

 private:
  unsigned char byte(std::size_t pos) const { return static_cast<unsigned char>(s_[pos]); }
  Value chr(std::size_t pos) const { return Value::character(byte(pos)); }

  std::optional<Derivation> rule(const char* name, Derivation d) {
    if (trace_ != nullptr) trace_->emplace_back(name);
    return d;
  }

  const Grammar& g_;
  std::string_view s_;
  std::vector<std::string>* trace_;
};

}  // namespace

FueledOutcome eval(const Grammar& g, const Expr& e, std::string_view input, std::size_t pos,
                   std::uint64_t fuel, std::vector<std::string>* trace) {
  Judge judge(g, input, trace);
  auto d = judge.run(e, pos, fuel);
  if (!d) return FueledOutcome{};
  ParseOutcome out;
  out.steps = d->steps;
  if (d->ok) out.match = Match{d->ok->next, std::move(d->ok->value)};
  return FueledOutcome{std::move(out)};
}

FueledOutcome eval_start(const Grammar& g, std::string_view input, std::uint64_t fuel,
                         std::vector<std::string>* trace) {
  return eval(g, Expr::nonterminal(g.start()), input, 0, fuel, trace);
}

const std::vector<ActionRef>& generator_actions() {
  static const std::vector<ActionRef> actions{
      builtin::drop(),
      builtin::leaf(),
      ActionRef{"wrap", [](const Value& v, Span) { return Value::tuple({v}); }},
  };
  return actions;
}

namespace {

std::string rule_name(std::size_t i) {
  return i == 0 ? std::string("S") : std::string(1, static_cast<char>('A' + i - 1));
}

struct Sampler {
  std::mt19937_64& rng;
  const GrammarShape& shape;
  std::size_t rules;

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  unsigned char letter() {
    return static_cast<unsigned char>(shape.alphabet[uniform(0, shape.alphabet.size() - 1)]);
  }

  Expr sample(std::size_t budget) {
    // Order matches ExprKind.
    std::array<unsigned, 10> weights{1, 1, 4, 1, 3, 4, 4, 2, 2, shape.with_actions ? 1u : 0u};
    if (budget < 3) weights[5] = weights[6] = 0;
    if (budget < 2) weights[7] = weights[8] = weights[9] = 0;
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    switch (static_cast<ExprKind>(pick(rng))) {
      case ExprKind::Empty: return Expr::empty();
      case ExprKind::AnyChar: return Expr::any();
      case ExprKind::Terminal: return Expr::terminal(letter());
      case ExprKind::Range: {
        unsigned char a = letter();
        unsigned char b = letter();
        return Expr::range(std::min(a, b), std::max(a, b));
      }
      case ExprKind::NonTerminal: return Expr::nonterminal(rule_name(uniform(0, rules - 1)));
      case ExprKind::Seq:
      case ExprKind::Choice: {
        bool is_seq = budget >= 3 && uniform(0, 1) == 0;
        std::size_t split = uniform(1, budget - 2);
        Expr l = sample(split);
        Expr r = sample(budget - 1 - split);
        return is_seq ? Expr::seq(std::move(l), std::move(r)) : Expr::choice(std::move(l), std::move(r));
      }
      case ExprKind::Star: return Expr::star(sample(budget - 1));
      case ExprKind::Not: return Expr::not_(sample(budget - 1));
      case ExprKind::Action: {
        const auto& acts = generator_actions();
        return Expr::action(sample(budget - 1), acts[uniform(0, acts.size() - 1)]);
      }
    }
    return Expr::empty();
  }
};

void mark_coverage(const Expr& e, std::array<bool, 10>& seen) {
  seen[static_cast<std::size_t>(e.kind())] = true;
  for (std::size_t i = 0; i < e.child_count(); ++i) mark_coverage(e.child(i), seen);
}

}  // namespace

Grammar random_grammar(std::mt19937_64& rng, const GrammarShape& shape) {
  Sampler s{rng, shape, 0};
  s.rules = s.uniform(1, std::max<std::size_t>(1, shape.max_productions));
  std::vector<std::pair<std::string, Expr>> rules;
  for (std::size_t i = 0; i < s.rules; ++i) {
    rules.emplace_back(rule_name(i), s.sample(s.uniform(1, shape.max_body_size)));
  }
  return Grammar::from_core(rules, "S");
}

std::vector<Expr> enumerate_exprs(std::string_view alphabet, std::size_t max_size,
                                  const std::string& self) {
  // by_size[k] holds every expression with exactly k nodes.
  std::vector<std::vector<Expr>> by_size(max_size + 1);
  if (max_size >= 1) {
    auto& atoms = by_size[1];
    atoms.push_back(Expr::empty());
    atoms.push_back(Expr::any());
    for (char c : alphabet) atoms.push_back(Expr::terminal(static_cast<unsigned char>(c)));
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      for (std::size_t j = i + 1; j < alphabet.size(); ++j) {
        auto a = static_cast<unsigned char>(alphabet[i]);
        auto b = static_cast<unsigned char>(alphabet[j]);
        atoms.push_back(Expr::range(std::min(a, b), std::max(a, b)));
      }
    }
    atoms.push_back(Expr::nonterminal(self));
  }
  for (std::size_t k = 2; k <= max_size; ++k) {
    for (const Expr& e : by_size[k - 1]) {
      by_size[k].push_back(Expr::star(e));
      by_size[k].push_back(Expr::not_(e));
      for (const ActionRef& a : generator_actions()) by_size[k].push_back(Expr::action(e, a));
    }
    for (std::size_t l = 1; l + 1 < k; ++l) {
      for (const Expr& x : by_size[l]) {
        for (const Expr& y : by_size[k - 1 - l]) {
          by_size[k].push_back(Expr::seq(x, y));
          by_size[k].push_back(Expr::choice(x, y));
        }
      }
    }
  }
  std::vector<Expr> out;
  for (auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::vector<std::string> all_inputs(std::string_view alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (char c : alphabet) out.push_back(out[i] + c);
    }
    level_begin = level_end;
  }
  return out;
}

CaseStream::CaseStream(CaseConfig config)
    : config_(std::move(config)),
      rng_(config_.seed),
      inputs_(all_inputs(config_.alphabet, config_.max_input_len)) {
  exhaustive_ = enumerate_exprs(config_.alphabet, config_.exhaustive_size, "S");
  if (!config_.with_actions) {
    std::erase_if(exhaustive_, [](const Expr& e) {
      std::array<bool, 10> seen{};
      mark_coverage(e, seen);
      return seen[static_cast<std::size_t>(ExprKind::Action)];
    });
  }
}

bool CaseStream::advance_grammar() {
  if (exhaustive_pos_ < exhaustive_.size()) {
    current_ = Grammar::from_core({{"S", exhaustive_[exhaustive_pos_++]}}, "S");
  } else if (random_done_ < config_.random_grammars) {
    ++random_done_;
    GrammarShape shape{config_.alphabet, config_.max_productions, config_.max_body_size,
                       config_.with_actions};
    current_ = random_grammar(rng_, shape);
  } else {
    current_.reset();
    return false;
  }
  ++grammar_count_;
  std::array<bool, 10> seen{};
  for (const std::string& name : current_->nonterminals()) mark_coverage(current_->production(name), seen);
  for (std::size_t k = 0; k < seen.size(); ++k) coverage_[k] += seen[k] ? 1 : 0;
  input_pos_ = 0;
  return true;
}

std::optional<SmallCase> CaseStream::next() {
  if (!current_ || input_pos_ >= inputs_.size()) {
    if (!advance_grammar()) return std::nullopt;
  }
  return SmallCase{*current_, inputs_[input_pos_++], grammar_count_ - 1};
}

CaseStream enumerate_small_cases(std::string_view alphabet, std::size_t max_grammar_size,
                                 std::size_t max_input_len, std::uint64_t seed) {
  CaseConfig config;
  config.alphabet = std::string(alphabet);
  config.max_productions = max_grammar_size;
  config.max_input_len = max_input_len;
  config.seed = seed;
  return CaseStream(std::move(config));
}

}  // namespace trx::oracle
