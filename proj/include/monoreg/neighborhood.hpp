#pragma once

// Local navigation of the Hasse diagram of consistent functions of a fixed
// arity, ordered by inclusion of true states.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "monoreg/shape.hpp"

namespace monoreg {

enum class StepKind : std::uint8_t { ParentR1, ParentR2, ParentR3, Child };

std::string_view to_string(StepKind kind);

struct NeighborStep {
  FunctionShape target;
  StepKind kind;
  /// Number of true states gained (parent) or lost (child) along the edge.
  int delta_true_states;
  /// For children: the parent rule that relates target to the centre.
  StepKind relating_rule;
};

struct HasseSlice {
  FunctionShape center;
  std::vector<NeighborStep> parents;
  std::vector<NeighborStep> children;
  std::vector<FunctionShape> siblings;
};

/// sigma is incomparable with every clause of s.
bool independent(Clause sigma, const FunctionShape& s);

std::vector<NeighborStep> parents(const FunctionShape& s);
std::vector<NeighborStep> children(const FunctionShape& s);
enum class SiblingScope : std::uint8_t {
  SharedParent,
  /// Also counts the other parents of each child.
  SharedParentOrChild,
};

std::vector<FunctionShape> siblings(const FunctionShape& s, SiblingScope scope = SiblingScope::SharedParent);
HasseSlice hasse_slice(const FunctionShape& s, SiblingScope scope = SiblingScope::SharedParent);

/// |T(parent) \ T(s)|, read off the rule that generates the edge. Throws
/// NotAParent when `parent` is not a Hasse parent of `s`.
int true_state_delta(const FunctionShape& s, const FunctionShape& parent);

/// Ascending maximal chain from inf to sup, picking uniformly among parents.
std::vector<FunctionShape> random_path(int p, std::uint64_t seed);

inline constexpr int kDefaultEnumerationLimit = 6;

/// Streams every antichain cover of {1..p} exactly once in a fixed order.
void for_each_shape(int p, const std::function<void(const FunctionShape&)>& visit,
                    int limit = kDefaultEnumerationLimit);
std::vector<FunctionShape> enumerate_all(int p, int limit = kDefaultEnumerationLimit);
std::uint64_t count_by_enumeration(int p, int limit = kDefaultEnumerationLimit);

using BigCount = unsigned __int128;
std::string to_string(BigCount value);

/// Dedekind numbers M(1..8).
BigCount dedekind(int p);
/// N(p) from the Dedekind recursion; throws DedekindUnknown for p > 8.
BigCount count_consistent(int p);

/// Ground-truth Hasse diagram computed from the order definition alone.
struct HasseDiagram {
  int arity = 0;
  std::vector<FunctionShape> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (lower, upper)
  std::vector<std::vector<std::size_t>> up;                // covers above each node
  std::vector<std::vector<std::size_t>> down;              // covers below each node
  std::size_t index_of(const FunctionShape& s) const;
};

inline constexpr int kHasseOracleLimit = 5;
HasseDiagram build_hasse(int p);

}  // namespace monoreg
