#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "monoreg/shape.hpp"

namespace testing_support {

using monoreg::FunctionShape;
using monoreg::Mask;
using monoreg::RegulatorContext;
using monoreg::Sign;

inline FunctionShape S(const std::vector<std::vector<int>>& clauses, int p) {
  return monoreg::make_shape(clauses, p);
}

inline RegulatorContext signs(const std::string& pattern, std::optional<int> self = std::nullopt) {
  std::vector<Sign> out;
  for (char c : pattern) out.push_back(c == '-' ? Sign::Negative : Sign::Positive);
  return RegulatorContext(out, self);
}

// Independent of the library's clause machinery: walks index lists and
// literal signs directly.
inline bool brute_eval(const FunctionShape& f, const std::vector<Sign>& sg, unsigned x) {
  for (const auto& c : f.clauses()) {
    bool all = true;
    for (int k : c.indices()) {
      const bool v = (x >> (k - 1)) & 1u;
      all = all && (sg[k - 1] == Sign::Positive ? v : !v);
    }
    if (all) return true;
  }
  return false;
}

inline std::vector<unsigned> brute_true(const FunctionShape& f, const std::vector<Sign>& sg) {
  std::vector<unsigned> out;
  for (unsigned x = 0; x < (1u << f.arity()); ++x) {
    if (brute_eval(f, sg, x)) out.push_back(x);
  }
  return out;
}

inline std::vector<Sign> sign_pattern(int p, unsigned neg) {
  std::vector<Sign> out;
  for (int k = 0; k < p; ++k) out.push_back((neg >> k) & 1u ? Sign::Negative : Sign::Positive);
  return out;
}

template <class Range>
std::set<FunctionShape> as_set(const Range& r) {
  return std::set<FunctionShape>(r.begin(), r.end());
}

}  // namespace testing_support
