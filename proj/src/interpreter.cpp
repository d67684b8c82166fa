#include "trx/interpreter.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "trx/detail/program.hpp"
#include "trx/errors.hpp"
#include "trx/surface.hpp"

namespace trx {

namespace {

using detail::Instr;
using detail::Program;

// The evaluator keeps its own stack instead of recursing, so nesting depth of
// the input is bounded by memory rather than by the thread's stack size.
struct Frame {
  std::uint32_t node;
  std::uint32_t stage = 0;
  std::size_t start;
  std::size_t cur;
  std::uint64_t acc = 0;
  std::size_t base = 0;  // Star: where its items start on the value stack
};

struct MemoEntry {
  bool ok;
  std::size_t next;
  Value value;
  std::uint64_t steps;
};

class Evaluator {
 public:
  Evaluator(const Program& prog, std::string_view input, ParseMode mode)
      : code_(prog.code), actions_(prog.actions), input_(input), packrat_(mode == ParseMode::Packrat) {}

  ParseOutcome run(std::uint32_t root, std::size_t pos, ParseStats* stats) {
    stack_.clear();
    values_.clear();
    push(root, pos);
    while (!stack_.empty()) step();
    if (stats != nullptr) {
      stats->farthest_failure = farthest_;
      stats->memo = MemoStats{memo_.size(), hits_, misses_};
      stats->max_depth = max_depth_;
    }
    ParseOutcome out;
    out.steps = steps_;
    if (ok_) out.match = Match{next_, std::move(value_)};
    return out;
  }

 private:
  void push(std::uint32_t node, std::size_t pos) {
    Frame& f = stack_.emplace_back();
    f.node = node;
    f.start = f.cur = pos;
    max_depth_ = std::max(max_depth_, stack_.size());
  }

  void succeed(std::size_t next, Value v, std::uint64_t steps) {
    ok_ = true;
    next_ = next;
    value_ = std::move(v);
    steps_ = steps;
  }

  void fail(std::uint64_t steps) {
    ok_ = false;
    value_ = Value{};
    steps_ = steps;
  }

  void char_test(bool matched, std::size_t pos) {
    if (matched) {
      succeed(pos + 1, Value::character(static_cast<unsigned char>(input_[pos])), 1);
    } else {
      farthest_ = std::max(farthest_, pos);
      fail(1);
    }
  }

  // Pops the current frame, checking the suffix property of its result.
  void finish() {
    const Frame& f = stack_.back();
    if (ok_ && (next_ < f.start || next_ > input_.size())) {
      throw InvariantViolation("result position " + std::to_string(next_) +
                               " outside [" + std::to_string(f.start) + ", " +
                               std::to_string(input_.size()) + "]");
    }
    stack_.pop_back();
  }

  std::uint64_t memo_key(std::uint32_t rule, std::size_t pos) const {
    return static_cast<std::uint64_t>(rule) * (input_.size() + 1) + pos;
  }

  void step() {
    const std::size_t top = stack_.size() - 1;
    Frame& f = stack_[top];
    const Instr& in = code_[f.node];
    const std::size_t pos = f.cur;
    const std::size_t n = input_.size();

    switch (in.kind) {
      case ExprKind::Empty:
        succeed(pos, Value{}, 1);
        finish();
        return;

      case ExprKind::AnyChar:
        char_test(pos < n, pos);
        finish();
        return;

      case ExprKind::Terminal:
        char_test(pos < n && static_cast<unsigned char>(input_[pos]) == in.lo, pos);
        finish();
        return;

      case ExprKind::Range: {
        bool in_range = false;
        if (pos < n) {
          auto c = static_cast<unsigned char>(input_[pos]);
          in_range = in.lo <= c && c <= in.hi;
        }
        char_test(in_range, pos);
        finish();
        return;
      }

      case ExprKind::NonTerminal:
        if (f.stage == 0) {
          if (packrat_) {
            auto it = memo_.find(memo_key(in.b, pos));
            if (it != memo_.end()) {
              ++hits_;
              const MemoEntry& e = it->second;
              if (e.ok) {
                succeed(e.next, e.value, e.steps);
              } else {
                fail(e.steps);
              }
              finish();
              return;
            }
            ++misses_;
          }
          f.stage = 1;
          push(in.a, pos);
          return;
        }
        steps_ += 1;
        if (packrat_) {
          auto [it, fresh] = memo_.try_emplace(memo_key(in.b, pos), MemoEntry{ok_, next_, value_, steps_});
          if (!fresh && (it->second.ok != ok_ || it->second.steps != steps_)) {
            throw InvariantViolation("memo entry contradicted");
          }
        }
        finish();
        return;

      case ExprKind::Seq:
        switch (f.stage) {
          case 0:
            f.stage = 1;
            push(in.a, pos);
            return;
          case 1:
            if (!ok_) {
              steps_ += 1;
              finish();
              return;
            }
            values_.push_back(std::move(value_));
            f.acc = steps_;
            f.stage = 2;
            push(in.b, next_);
            return;
          default:
            steps_ += f.acc + 1;
            if (ok_) value_ = Value::pair(std::move(values_.back()), std::move(value_));
            values_.pop_back();
            finish();
            return;
        }

      case ExprKind::Choice:
        switch (f.stage) {
          case 0:
            f.stage = 1;
            push(in.a, pos);
            return;
          case 1:
            if (ok_) {
              steps_ += 1;
              finish();
              return;
            }
            f.acc = steps_;
            f.stage = 2;
            push(in.b, pos);
            return;
          default:
#ifdef TRX_MUTANT
            steps_ += f.acc + 2;  // deliberately wrong; used to check the self-test catches it
#else
            steps_ += f.acc + 1;
#endif
            finish();
            return;
        }

      case ExprKind::Star:
        if (f.stage == 0) {
          f.stage = 1;
          f.base = values_.size();
          push(in.a, pos);
          return;
        }
        if (ok_) {
          if (next_ == f.cur) {
            throw InvariantViolation("repetition body succeeded without consuming input at " +
                                     std::to_string(f.cur));
          }
          f.acc += steps_ + 1;
          values_.push_back(std::move(value_));
          f.cur = next_;
          push(in.a, next_);
          return;
        }
        {
          std::uint64_t total = f.acc + steps_ + 1;
          auto first = values_.begin() + static_cast<std::ptrdiff_t>(f.base);
          std::vector<Value> items(std::make_move_iterator(first), std::make_move_iterator(values_.end()));
          values_.erase(first, values_.end());
          succeed(f.cur, Value::list(std::move(items)), total);
        }
        finish();
        return;

      case ExprKind::Not:
        if (f.stage == 0) {
          f.stage = 1;
          push(in.a, pos);
          return;
        }
        if (ok_) {
          fail(steps_ + 1);
        } else {
          succeed(f.start, Value{}, steps_ + 1);
        }
        finish();
        return;

      case ExprKind::Action:
        if (f.stage == 0) {
          f.stage = 1;
          push(in.a, pos);
          return;
        }
        steps_ += 1;
        if (ok_) value_ = actions_[in.action].apply(value_, Span{f.start, next_});
        finish();
        return;
    }
  }

  const std::vector<Instr>& code_;
  const std::vector<ActionRef>& actions_;
  std::string_view input_;
  bool packrat_;

  std::vector<Frame> stack_;
  // Seq first-part values and Star items, in evaluation order.
  std::vector<Value> values_;
  bool ok_ = false;
  std::size_t next_ = 0;
  Value value_;
  std::uint64_t steps_ = 0;

  std::size_t farthest_ = 0;
  std::size_t max_depth_ = 0;
  std::unordered_map<std::uint64_t, MemoEntry> memo_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

void require_certificate(const Grammar& g, const Certificate& cert) {
  if (!cert.certifies(g)) throw std::invalid_argument("certificate does not belong to this grammar");
}

}  // namespace

ParseOutcome parse_rule(const Grammar& g, const Certificate& cert, std::string_view rule,
                        std::string_view input, std::size_t pos, ParseMode mode,
                        ParseStats* stats) {
  require_certificate(g, cert);
  if (pos > input.size()) throw std::out_of_range("start position past end of input");
  const Program& prog = g.program();
  Evaluator ev(prog, input, mode);
  return ev.run(prog.rule_entry[g.rule_index(rule)], pos, stats);
}

ParseOutcome parse(const Grammar& g, const Certificate& cert, std::string_view input,
                   ParseMode mode, ParseStats* stats) {
  return parse_rule(g, cert, g.start(), input, 0, mode, stats);
}

ParseOutcome parse_to_tree(const Grammar& g, const Certificate& cert, std::string_view input,
                           ParseMode mode, ParseStats* stats) {
  const Expr& body = g.production(g.start());
  if (body.kind() != ExprKind::Action || !builtin::is_node_label(body.action_ref().label())) {
    throw std::invalid_argument("start rule '" + g.start() + "' does not build a tree");
  }
  return parse(g, cert, input, mode, stats);
}

}  // namespace trx
