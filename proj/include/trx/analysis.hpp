#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "trx/expr.hpp"
#include "trx/grammar.hpp"

namespace trx {

/// Finite set of expressions keyed by structural equality, with a stable
/// insertion order.
class ExprSet {
 public:
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(const Expr& e) const { return index_.contains(e); }
  std::optional<std::size_t> index_of(const Expr& e) const;
  const Expr& operator[](std::size_t i) const { return members_[i]; }

  /// Returns false when an equal expression is already present.
  bool insert(const Expr& e);
  bool is_subset_of(const ExprSet& other) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

 private:
  std::vector<Expr> members_;
  std::unordered_map<Expr, std::size_t, ExprHash> index_;
};

/// E(G): every sub-expression of every production body. Order: rules in
/// definition order, each body walked pre-order left to right; the first
/// occurrence of a structurally repeated expression fixes its position.
ExprSet expression_set(const Grammar& g);

enum class AnalysisMode {
  Full,
  /// Only the "0" flag is inferred; ">0" and "fail" are assumed everywhere.
  /// Rejects strictly more grammars and never issues certificates.
  Simplified,
};

struct Properties {
  bool empty_success = false;      // "0": can succeed consuming nothing
  bool consuming_success = false;  // ">0": can succeed consuming input
  bool can_fail = false;           // can fail

  bool can_succeed() const noexcept { return empty_success || consuming_success; }
  friend bool operator==(const Properties&, const Properties&) = default;
};

class PropertyTable {
 public:
  const ExprSet& domain() const noexcept { return domain_; }
  const Properties& operator[](std::size_t i) const { return flags_[i]; }
  /// Throws std::out_of_range when e is not in the domain.
  const Properties& at(const Expr& e) const;
  AnalysisMode mode() const noexcept { return mode_; }
  /// Sweeps over the domain until nothing changed (the last one is idle).
  std::size_t sweeps() const noexcept { return sweeps_; }

 private:
  friend PropertyTable infer_properties(const Grammar& g, AnalysisMode mode);

  ExprSet domain_;
  std::vector<Properties> flags_;
  AnalysisMode mode_ = AnalysisMode::Full;
  std::size_t sweeps_ = 0;
};

/// Least fixpoint of the property rules over E(G), starting from all-false.
PropertyTable infer_properties(const Grammar& g, AnalysisMode mode = AnalysisMode::Full);

enum class OffenseReason { LeftRecursionSuspected, NullableStar, DependsOnIllFormed };

const char* to_string(OffenseReason r);

struct Offender {
  std::string production;
  Expr expression;  // sub-expression of the production body blocking it
  OffenseReason reason;
};

struct WfReport;

/// Proof that a specific grammar passed the full well-formedness analysis.
/// Only check_well_formed creates one.
class Certificate {
 public:
  bool certifies(const Grammar& g) const noexcept { return grammar_.identity() == g.identity(); }

 private:
  friend WfReport check_well_formed(const Grammar& g, const PropertyTable& props);
  explicit Certificate(Grammar g) : grammar_(std::move(g)) {}

  Grammar grammar_;
};

struct WfReport {
  ExprSet expressions;   // E(G)
  ExprSet well_formed;   // WF fixpoint, a subset of E(G)
  bool is_well_formed = false;
  std::vector<Offender> offenders;
  AnalysisMode mode = AnalysisMode::Full;
  std::size_t passes = 0;
  /// wf_measure after each derivation pass.
  std::vector<std::size_t> measure_trace;
  std::optional<Certificate> certificate;
};

WfReport check_well_formed(const Grammar& g, const PropertyTable& props);
WfReport check_well_formed(const Grammar& g, AnalysisMode mode = AnalysisMode::Full);

/// |E(G)| - |current|. Throws std::invalid_argument unless current is a
/// subset of E(G).
std::size_t wf_measure(const ExprSet& current, const Grammar& g);

}  // namespace trx
