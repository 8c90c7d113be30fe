#pragma once

// Boolean network dynamics over B^n: asynchronous and synchronous state
// transition graphs, fixed points, attractors, and per-component transition
// counts.
//
// State bit i holds component i (declaration order). Printed states list
// component 1 first, so "010" means only the second component is active.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monoreg/shape.hpp"

namespace monoreg {

using StateBits = std::uint32_t;

inline constexpr int kMaxComponents = 30;
inline constexpr int kDefaultStateSpaceLimit = 25;

struct Component {
  std::string name;
  /// Component indices (0-based) of the regulators; regulator k of the
  /// function is regulators[k-1].
  std::vector<int> regulators;
  std::optional<RegulatorContext> context;
  std::optional<FunctionShape> shape;
  /// Constant value of an input component (no regulators, no shape).
  bool input_value = false;

  bool is_input() const { return !shape.has_value(); }

  static Component input(std::string name, bool value = false);
  /// Derives the autoregulation index from `self`, the component's own index.
  static Component regulated(std::string name, int self, std::vector<int> regulators,
                             std::vector<Sign> signs, FunctionShape shape);
};

class BooleanNetwork {
 public:
  explicit BooleanNetwork(std::vector<Component> components);

  int size() const { return static_cast<int>(components_.size()); }
  const Component& component(int i) const { return components_.at(i); }
  const std::vector<Component>& components() const { return components_; }
  std::optional<int> find(std::string_view name) const;
  int index_of(std::string_view name) const;  // throws UnknownVariable

  /// Regulator input of component i in state s (bit k-1 = regulator k).
  Mask local_input(int i, StateBits s) const;
  bool target(int i, StateBits s) const;
  /// Bits of the components called to change in s.
  StateBits update_mask(StateBits s) const;

  BooleanNetwork with_shape(int i, FunctionShape shape) const;

  std::string format_state(StateBits s) const;
  StateBits parse_state(std::string_view text) const;

  bool operator==(const BooleanNetwork& other) const { return components_ == other.components_; }

 private:
  std::vector<Component> components_;
  std::vector<std::vector<bool>> truth_;
};

bool operator==(const Component& a, const Component& b);

std::string format_state(StateBits s, int n);

enum class UpdateMode : std::uint8_t { Asynchronous, Synchronous };

/// Implicit STG: each state stores the mask of components whose target
/// differs from their value. Async successors flip one such bit, the sync
/// successor flips all of them. Self-loops are never edges.
class StateGraph {
 public:
  StateGraph(int n, UpdateMode mode, std::vector<StateBits> update_masks);

  int dimension() const { return n_; }
  UpdateMode mode() const { return mode_; }
  std::uint64_t state_count() const { return update_.size(); }
  StateBits update_mask(StateBits s) const { return update_[s]; }
  bool is_stable(StateBits s) const { return update_[s] == 0; }
  std::vector<StateBits> successors(StateBits s) const;
  std::uint64_t edge_count() const;

 private:
  int n_;
  UpdateMode mode_;
  std::vector<StateBits> update_;
};

StateGraph stg_async(const BooleanNetwork& bn, int limit = kDefaultStateSpaceLimit);
StateGraph stg_sync(const BooleanNetwork& bn, int limit = kDefaultStateSpaceLimit);

StateSet stable_states(const BooleanNetwork& bn, int limit = kDefaultStateSpaceLimit);
StateSet stable_states(const StateGraph& graph);

/// Terminal strongly connected components, each sorted, ordered by their
/// smallest state.
std::vector<std::vector<StateBits>> attractors(const StateGraph& graph);

struct TransitionSet {
  int component = 0;
  std::vector<std::pair<StateBits, StateBits>> increasing;
  std::vector<std::pair<StateBits, StateBits>> decreasing;
};

TransitionSet component_transitions(const BooleanNetwork& bn, int i,
                                    int limit = kDefaultStateSpaceLimit);

struct TransitionCounts {
  std::uint64_t increasing = 0;
  std::uint64_t decreasing = 0;
  std::uint64_t total() const { return increasing + decreasing; }
  bool operator==(const TransitionCounts&) const = default;
};

/// Smallest state space holding the regulators and the target: p when the
/// target regulates itself, p + 1 otherwise.
int minimal_dimension(const RegulatorContext& ctx);

/// Transitions of the component governed by (shape, ctx) in B^n, counted in
/// B^{minimal_dimension} and scaled by the free extra components.
TransitionCounts count_component_transitions(const FunctionShape& shape, const RegulatorContext& ctx,
                                             int n);

enum class AutoregCase : std::uint8_t { NotAutoregulated, Positive, Negative };
std::string_view to_string(AutoregCase c);
AutoregCase autoreg_case(const RegulatorContext& ctx);

struct BoundsReport {
  AutoregCase kind = AutoregCase::NotAutoregulated;
  std::uint64_t total_lower = 0;
  std::uint64_t total_upper = 0;
  /// Bounds on each of |T+| and |T-|.
  std::uint64_t incr_upper = 0;
  std::uint64_t incr_lower = 0;
  std::optional<TransitionCounts> observed;

  bool within_bounds() const;
};

BoundsReport transition_bounds(const RegulatorContext& ctx, int n);
BoundsReport check_bounds(const FunctionShape& shape, const RegulatorContext& ctx, int n);

/// Maximally functional autoregulation: the self literal conjoined with each
/// other regulator literal.
FunctionShape f_star(const RegulatorContext& ctx);

struct TraceRow {
  FunctionShape shape;
  Level level;
  TransitionCounts counts;
};

/// Counts along an ascending Hasse chain; throws NotAChain unless each entry
/// is a parent of its predecessor.
std::vector<TraceRow> path_trace(const RegulatorContext& ctx, int n,
                                 const std::vector<FunctionShape>& path);

/// Context for a component with p regulators besides itself; the
/// autoregulated cases add the component as regulator p + 1.
RegulatorContext walk_context(int p, AutoregCase autoreg);

/// path_trace over random_path(seed) in the minimal dimension.
std::vector<TraceRow> walk_trace(int p, AutoregCase autoreg, std::uint64_t seed);

}  // namespace monoreg
