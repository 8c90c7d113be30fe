#pragma once

// Property suites that check the neighbourhood rules against the brute-force
// Hasse diagram and the transition-count propositions, one arity at a time.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "monoreg/neighborhood.hpp"

namespace monoreg {

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  /// First few counterexamples.
  std::vector<std::string> counterexamples;
  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  int arity = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::vector<SuiteResult> suites;
  bool passed() const;
};

using ParentsFn = std::function<std::vector<NeighborStep>(const FunctionShape&)>;

struct VerifyOptions {
  /// Rule implementation under test; defaults to parents().
  ParentsFn parents_fn;
  std::size_t max_counterexamples = 5;
};

/// Throws ArityTooLarge above kHasseOracleLimit.
VerifyReport verify_arity(int p, const VerifyOptions& options = {});

/// parents() with every rule-3 step dropped, for checking that the suites
/// catch a broken rule.
std::vector<NeighborStep> parents_without_rule3(const FunctionShape& s);

}  // namespace monoreg
