#include "trx/analysis.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "trx/errors.hpp"

namespace trx {

std::optional<std::size_t> ExprSet::index_of(const Expr& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool ExprSet::insert(const Expr& e) {
  if (!index_.emplace(e, members_.size()).second) return false;
  members_.push_back(e);
  return true;
}

bool ExprSet::is_subset_of(const ExprSet& other) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](const Expr& e) { return other.contains(e); });
}

namespace {

void collect(const Expr& e, ExprSet& out) {
  if (!out.insert(e)) return;  // children of an equal expression are already in
  for (std::size_t i = 0; i < e.child_count(); ++i) collect(e.child(i), out);
}

// E(G) with child links resolved to indices.
struct Indexed {
  ExprSet set;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;

  explicit Indexed(const Grammar& g) : set(expression_set(g)) {
    left.assign(set.size(), 0);
    right.assign(set.size(), 0);
    for (std::size_t i = 0; i < set.size(); ++i) {
      const Expr& e = set[i];
      if (e.kind() == ExprKind::NonTerminal) {
        left[i] = *set.index_of(g.production(e.name()));
      } else if (e.child_count() >= 1) {
        left[i] = *set.index_of(e.left());
        if (e.child_count() == 2) right[i] = *set.index_of(e.right());
      }
    }
  }
};

Properties derive_full(const Indexed& ix, const std::vector<Properties>& p, std::size_t i) {
  const Expr& e = ix.set[i];
  Properties out;
  switch (e.kind()) {
    case ExprKind::Empty:
      out.empty_success = true;
      break;
    case ExprKind::AnyChar:
    case ExprKind::Terminal:
    case ExprKind::Range:
      out.consuming_success = true;
      out.can_fail = true;
      break;
    case ExprKind::NonTerminal:
    case ExprKind::Action:
      out = p[ix.left[i]];
      break;
    case ExprKind::Seq: {
      const Properties& a = p[ix.left[i]];
      const Properties& b = p[ix.right[i]];
      out.empty_success = a.empty_success && b.empty_success;
      out.consuming_success =
          (a.consuming_success && b.can_succeed()) || (a.can_succeed() && b.consuming_success);
      out.can_fail = a.can_fail || (a.can_succeed() && b.can_fail);
      break;
    }
    case ExprKind::Choice: {
      const Properties& a = p[ix.left[i]];
      const Properties& b = p[ix.right[i]];
      out.empty_success = a.empty_success || (a.can_fail && b.empty_success);
      out.consuming_success = a.consuming_success || (a.can_fail && b.consuming_success);
      out.can_fail = a.can_fail && b.can_fail;
      break;
    }
    case ExprKind::Star: {
      const Properties& a = p[ix.left[i]];
      out.empty_success = a.can_fail;
      out.consuming_success = a.consuming_success;
      break;
    }
    case ExprKind::Not: {
      const Properties& a = p[ix.left[i]];
      out.empty_success = a.can_fail;
      out.can_fail = a.can_succeed();
      break;
    }
  }
  return out;
}

Properties derive_simplified(const Indexed& ix, const std::vector<Properties>& p, std::size_t i) {
  const Expr& e = ix.set[i];
  Properties out{false, true, true};
  switch (e.kind()) {
    case ExprKind::Empty:
    case ExprKind::Star:
    case ExprKind::Not:
      out.empty_success = true;
      break;
    case ExprKind::AnyChar:
    case ExprKind::Terminal:
    case ExprKind::Range:
      break;
    case ExprKind::NonTerminal:
    case ExprKind::Action:
      out.empty_success = p[ix.left[i]].empty_success;
      break;
    case ExprKind::Seq:
      out.empty_success = p[ix.left[i]].empty_success && p[ix.right[i]].empty_success;
      break;
    case ExprKind::Choice:
      out.empty_success = p[ix.left[i]].empty_success || p[ix.right[i]].empty_success;
      break;
  }
  return out;
}

bool implies(const Properties& from, const Properties& to) {
  return (!from.empty_success || to.empty_success) &&
         (!from.consuming_success || to.consuming_success) && (!from.can_fail || to.can_fail);
}

// One Gauss-Seidel sweep; returns whether any flag changed.
bool sweep_properties(const Indexed& ix, std::vector<Properties>& p, AnalysisMode mode) {
  bool changed = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Properties d = mode == AnalysisMode::Full ? derive_full(ix, p, i) : derive_simplified(ix, p, i);
    Properties next{p[i].empty_success || d.empty_success,
                    p[i].consuming_success || d.consuming_success, p[i].can_fail || d.can_fail};
    if (!implies(p[i], next)) throw InvariantViolation("property flag reverted to false");
    if (!(next == p[i])) {
      p[i] = next;
      changed = true;
    }
  }
  return changed;
}

bool wf_rule(const Indexed& ix, const PropertyTable& props, const std::vector<bool>& wf,
             std::size_t i) {
  const Expr& e = ix.set[i];
  switch (e.kind()) {
    case ExprKind::Empty:
    case ExprKind::AnyChar:
    case ExprKind::Terminal:
    case ExprKind::Range:
      return true;
    case ExprKind::NonTerminal:
    case ExprKind::Not:
    case ExprKind::Action:
      return wf[ix.left[i]];
    case ExprKind::Seq:
      return wf[ix.left[i]] && (!props[ix.left[i]].empty_success || wf[ix.right[i]]);
    case ExprKind::Choice:
      return wf[ix.left[i]] && wf[ix.right[i]];
    case ExprKind::Star:
      return wf[ix.left[i]] && !props[ix.left[i]].empty_success;
  }
  return false;
}

// Ill-formed expressions whose status blocks expression i (empty for a
// nullable star over a well-formed body: that one is a root cause).
std::vector<std::size_t> blockers(const Indexed& ix, const PropertyTable& props,
                                  const std::vector<bool>& wf, std::size_t i) {
  const Expr& e = ix.set[i];
  std::vector<std::size_t> out;
  switch (e.kind()) {
    case ExprKind::NonTerminal:
    case ExprKind::Not:
    case ExprKind::Action:
    case ExprKind::Star:
      if (!wf[ix.left[i]]) out.push_back(ix.left[i]);
      break;
    case ExprKind::Seq:
      if (!wf[ix.left[i]]) {
        out.push_back(ix.left[i]);
      } else if (props[ix.left[i]].empty_success && !wf[ix.right[i]]) {
        out.push_back(ix.right[i]);
      }
      break;
    case ExprKind::Choice:
      if (!wf[ix.left[i]]) out.push_back(ix.left[i]);
      if (!wf[ix.right[i]]) out.push_back(ix.right[i]);
      break;
    default:
      break;
  }
  return out;
}

// Marks nodes that lie on a cycle of the blocked-by graph (Tarjan SCC).
std::vector<bool> on_cycle(const std::vector<std::vector<std::size_t>>& edges) {
  const std::size_t n = edges.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false), cyclic(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : edges[v]) {
      if (order[w] == kUnvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] != order[v]) return;
    std::vector<std::size_t> component;
    std::size_t w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      component.push_back(w);
    } while (w != v);
    bool self_loop = std::find(edges[v].begin(), edges[v].end(), v) != edges[v].end();
    if (component.size() > 1 || self_loop) {
      for (std::size_t c : component) cyclic[c] = true;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (order[v] == kUnvisited) visit(v);
  }
  return cyclic;
}

std::vector<Offender> diagnose(const Grammar& g, const Indexed& ix, const PropertyTable& props,
                               const std::vector<bool>& wf) {
  std::vector<std::vector<std::size_t>> edges(ix.set.size());
  for (std::size_t i = 0; i < ix.set.size(); ++i) {
    if (!wf[i]) edges[i] = blockers(ix, props, wf, i);
  }
  std::vector<bool> cyclic = on_cycle(edges);

  auto nullable_star = [&](std::size_t i) {
    return ix.set[i].kind() == ExprKind::Star && edges[i].empty();
  };

  std::vector<Offender> out;
  for (const std::string& name : g.nonterminals()) {
    std::size_t body = *ix.set.index_of(g.production(name));
    if (wf[body]) continue;
    // Follow blockers inside the body until leaving it through a nonterminal
    // or reaching a nullable star.
    std::size_t cur = body;
    while (!nullable_star(cur) && ix.set[cur].kind() != ExprKind::NonTerminal) {
      cur = edges[cur].front();
    }
    OffenseReason reason = nullable_star(cur)        ? OffenseReason::NullableStar
                           : cyclic[body]            ? OffenseReason::LeftRecursionSuspected
                                                     : OffenseReason::DependsOnIllFormed;
    out.push_back(Offender{name, ix.set[cur], reason});
  }
  return out;
}

}  // namespace

ExprSet expression_set(const Grammar& g) {
  ExprSet out;
  for (const std::string& name : g.nonterminals()) collect(g.production(name), out);
  return out;
}

const char* to_string(OffenseReason r) {
  switch (r) {
    case OffenseReason::LeftRecursionSuspected: return "LeftRecursionSuspected";
    case OffenseReason::NullableStar: return "NullableStar";
    case OffenseReason::DependsOnIllFormed: return "DependsOnIllFormed";
  }
  return "?";
}

const Properties& PropertyTable::at(const Expr& e) const {
  auto i = domain_.index_of(e);
  if (!i) throw std::out_of_range("expression not in E(G): " + to_text(e));
  return flags_[*i];
}

PropertyTable infer_properties(const Grammar& g, AnalysisMode mode) {
  Indexed ix(g);
  std::vector<Properties> flags(ix.set.size());
  std::size_t sweeps = 0;
  const std::size_t bound = 3 * ix.set.size() + 1;
  bool changed = true;
  while (changed) {
    changed = sweep_properties(ix, flags, mode);
    if (++sweeps > bound) throw InvariantViolation("property inference exceeded its sweep bound");
  }
  PropertyTable table;
  table.domain_ = std::move(ix.set);
  table.flags_ = std::move(flags);
  table.mode_ = mode;
  table.sweeps_ = sweeps;
  return table;
}

WfReport check_well_formed(const Grammar& g, const PropertyTable& props) {
  Indexed ix(g);
  if (ix.set.size() != props.domain().size()) {
    throw std::invalid_argument("property table was computed for a different grammar");
  }
  const std::size_t n = ix.set.size();
  std::vector<bool> wf(n, false);
  std::size_t count = 0;

  WfReport report;
  report.mode = props.mode();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<bool> before = wf;
    for (std::size_t i = 0; i < n; ++i) {
      if (!wf[i] && wf_rule(ix, props, wf, i)) {
        wf[i] = true;
        ++count;
        changed = true;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (before[i] && !wf[i]) throw InvariantViolation("well-formed set shrank");
    }
    ++report.passes;
    report.measure_trace.push_back(n - count);
    if (report.passes > n + 1) throw InvariantViolation("well-formedness exceeded its pass bound");
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (wf[i]) report.well_formed.insert(ix.set[i]);
  }
  report.is_well_formed = count == n;
  if (!report.is_well_formed) report.offenders = diagnose(g, ix, props, wf);
  report.expressions = std::move(ix.set);
  if (report.is_well_formed && props.mode() == AnalysisMode::Full) {
    report.certificate = Certificate{g};
  }
  return report;
}

WfReport check_well_formed(const Grammar& g, AnalysisMode mode) {
  return check_well_formed(g, infer_properties(g, mode));
}

std::size_t wf_measure(const ExprSet& current, const Grammar& g) {
  ExprSet all = expression_set(g);
  if (!current.is_subset_of(all)) throw std::invalid_argument("set is not a subset of E(G)");
  return all.size() - current.size();
}

}  // namespace trx
