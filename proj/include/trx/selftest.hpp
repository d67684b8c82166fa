#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "trx/interpreter.hpp"
#include "trx/oracle.hpp"

namespace trx::selftest {

class Deadline {
 public:
  static Deadline after(double seconds);
  static Deadline never();
  bool passed() const;

 private:
  std::chrono::steady_clock::time_point at_;
  bool unlimited_ = false;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> samples;  // first few failures, human-readable
  double seconds = 0;
  bool truncated = false;            // stopped by the deadline
  std::string note;

  bool ok() const noexcept { return failures == 0; }
};

std::string describe(const ParseOutcome& o);

/// Oracle vs interpreter on every certified case of the stream: equal
/// outcomes, the oracle exhausts at exactly steps - 1 fuel and agrees at
/// larger fuel, and packrat agrees with plain. `note` reports grammar counts.
SuiteResult differential(const oracle::CaseConfig& cfg, Deadline deadline);

/// Every behavior the oracle shows for an expression of E(G) (empty success,
/// consuming success, failure) has its flag set in the property table.
SuiteResult property_soundness(const oracle::CaseConfig& cfg, Deadline deadline);

/// Two traced oracle runs of the same certified case apply the same rules,
/// checked on every `stride`-th case.
SuiteResult unambiguity(const oracle::CaseConfig& cfg, Deadline deadline, std::size_t stride = 7);

/// Same seed gives the same stream; every constructor is covered.
SuiteResult stream_checks(const oracle::CaseConfig& cfg);

struct RandomConfig {
  std::uint64_t seed = 1;
  std::size_t grammars = 50;
  std::size_t inputs_per_grammar = 1000;
  std::size_t max_input_len = 256;
  double case_ceiling_seconds = 10;
  oracle::GrammarShape shape{"abc", 4, 8, true};
};

/// Random certified grammars on random inputs in packrat mode: every run
/// returns an outcome, fires no invariant check and stays under the ceiling.
SuiteResult completeness(const RandomConfig& cfg, Deadline deadline);

/// Plain and packrat outcomes (value and steps included) agree on `cases`
/// random certified (grammar, input) pairs with inputs of length <= max_len.
SuiteResult mode_agreement(std::uint64_t seed, std::size_t cases, std::size_t max_len, Deadline deadline);

struct Config {
  std::uint64_t seed = 1;
  double budget_seconds = 600;
};

/// All suites; writes one line per suite to `log`. True iff none failed.
bool run_all(const Config& cfg, std::ostream& log, std::vector<SuiteResult>* results = nullptr);

}  // namespace trx::selftest
