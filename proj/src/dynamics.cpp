#include "monoreg/dynamics.hpp"

#include <algorithm>
#include <bit>

#include "monoreg/neighborhood.hpp"

namespace monoreg {

Component Component::input(std::string name, bool value) {
  Component c;
  c.name = std::move(name);
  c.input_value = value;
  return c;
}

Component Component::regulated(std::string name, int self, std::vector<int> regulators,
                               std::vector<Sign> signs, FunctionShape shape) {
  std::optional<int> self_index;
  for (std::size_t k = 0; k < regulators.size(); ++k) {
    if (regulators[k] == self) self_index = static_cast<int>(k) + 1;
  }
  Component c;
  c.name = std::move(name);
  c.regulators = std::move(regulators);
  c.context.emplace(std::move(signs), self_index);
  c.shape.emplace(std::move(shape));
  return c;
}

bool operator==(const Component& a, const Component& b) {
  return a.name == b.name && a.regulators == b.regulators && a.context == b.context &&
         a.shape == b.shape && (a.shape || a.input_value == b.input_value);
}

BooleanNetwork::BooleanNetwork(std::vector<Component> components) : components_(std::move(components)) {
  if (size() > kMaxComponents) {
    throw Error(ErrorCode::StateSpaceTooLarge, std::to_string(size()) + " components exceed " +
                                                   std::to_string(kMaxComponents));
  }
  truth_.resize(components_.size());
  for (int i = 0; i < size(); ++i) {
    const Component& c = components_[i];
    for (int j = 0; j < i; ++j) {
      if (components_[j].name == c.name) throw Error(ErrorCode::DuplicateComponent, c.name);
    }
    if (c.is_input()) {
      if (!c.regulators.empty() || c.context) {
        throw Error(ErrorCode::InvalidArgument, c.name + ": an input has no regulators");
      }
      continue;
    }
    if (!c.context || c.context->arity() != static_cast<int>(c.regulators.size()) ||
        c.shape->arity() != c.context->arity()) {
      throw Error(ErrorCode::ArityMismatch, c.name + ": regulators, signs and function disagree");
    }
    std::optional<int> self;
    for (std::size_t k = 0; k < c.regulators.size(); ++k) {
      const int r = c.regulators[k];
      if (r < 0 || r >= static_cast<int>(components_.size())) {
        throw Error(ErrorCode::IndexOutOfRange, c.name + ": regulator index " + std::to_string(r));
      }
      if (std::count(c.regulators.begin(), c.regulators.end(), r) != 1) {
        throw Error(ErrorCode::DualRegulation, c.name + " lists regulator " + components_[r].name + " twice");
      }
      if (r == i) self = static_cast<int>(k) + 1;
    }
    if (self != c.context->self_index()) {
      throw Error(ErrorCode::InvalidArgument, c.name + ": autoregulation index does not match regulators");
    }
    auto& table = truth_[i];
    table.resize(std::size_t{1} << c.context->arity());
    for (Mask x = 0; x < table.size(); ++x) table[x] = evaluate(*c.shape, *c.context, x);
  }
}

std::optional<int> BooleanNetwork::find(std::string_view name) const {
  for (int i = 0; i < size(); ++i) {
    if (components_[i].name == name) return i;
  }
  return std::nullopt;
}

int BooleanNetwork::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::UnknownVariable, std::string(name));
}

Mask BooleanNetwork::local_input(int i, StateBits s) const {
  const auto& regs = components_[i].regulators;
  Mask x = 0;
  for (std::size_t k = 0; k < regs.size(); ++k) x |= ((s >> regs[k]) & 1u) << k;
  return x;
}

bool BooleanNetwork::target(int i, StateBits s) const {
  const Component& c = components_[i];
  if (c.is_input()) return c.input_value;
  return truth_[i][local_input(i, s)];
}

StateBits BooleanNetwork::update_mask(StateBits s) const {
  StateBits m = 0;
  for (int i = 0; i < size(); ++i) {
    if (target(i, s) != static_cast<bool>((s >> i) & 1u)) m |= StateBits{1} << i;
  }
  return m;
}

BooleanNetwork BooleanNetwork::with_shape(int i, FunctionShape shape) const {
  std::vector<Component> comps = components_;
  comps.at(i).shape = std::move(shape);
  return BooleanNetwork(std::move(comps));
}

std::string format_state(StateBits s, int n) {
  std::string out(n, '0');
  for (int i = 0; i < n; ++i) {
    if ((s >> i) & 1u) out[i] = '1';
  }
  return out;
}

std::string BooleanNetwork::format_state(StateBits s) const { return monoreg::format_state(s, size()); }

StateBits BooleanNetwork::parse_state(std::string_view text) const {
  if (static_cast<int>(text.size()) != size()) {
    throw Error(ErrorCode::InvalidArgument, "state '" + std::string(text) + "' needs " +
                                                std::to_string(size()) + " digits");
  }
  StateBits s = 0;
  for (int i = 0; i < size(); ++i) {
    if (text[i] == '1') {
      s |= StateBits{1} << i;
    } else if (text[i] != '0') {
      throw Error(ErrorCode::SyntaxError, "state digits must be 0 or 1");
    }
  }
  return s;
}

StateGraph::StateGraph(int n, UpdateMode mode, std::vector<StateBits> update_masks)
    : n_(n), mode_(mode), update_(std::move(update_masks)) {
  if (update_.size() != (std::size_t{1} << n_)) {
    throw Error(ErrorCode::InvalidArgument, "update table size must be 2^n");
  }
}

std::vector<StateBits> StateGraph::successors(StateBits s) const {
  const StateBits m = update_[s];
  if (m == 0) return {};
  if (mode_ == UpdateMode::Synchronous) return {s ^ m};
  std::vector<StateBits> out;
  for (StateBits r = m; r; r &= r - 1) out.push_back(s ^ (r & (~r + 1)));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t StateGraph::edge_count() const {
  std::uint64_t e = 0;
  for (StateBits m : update_) {
    if (m) e += mode_ == UpdateMode::Synchronous ? 1 : std::popcount(m);
  }
  return e;
}

namespace {

void check_state_space(const BooleanNetwork& bn, int limit) {
  if (bn.size() > limit) {
    throw Error(ErrorCode::StateSpaceTooLarge, std::to_string(bn.size()) + " components exceed the limit of " +
                                                   std::to_string(limit));
  }
}

std::vector<StateBits> update_table(const BooleanNetwork& bn, int limit) {
  check_state_space(bn, limit);
  std::vector<StateBits> table(std::size_t{1} << bn.size());
  for (std::size_t s = 0; s < table.size(); ++s) table[s] = bn.update_mask(static_cast<StateBits>(s));
  return table;
}

}  // namespace

StateGraph stg_async(const BooleanNetwork& bn, int limit) {
  return StateGraph(bn.size(), UpdateMode::Asynchronous, update_table(bn, limit));
}

StateGraph stg_sync(const BooleanNetwork& bn, int limit) {
  return StateGraph(bn.size(), UpdateMode::Synchronous, update_table(bn, limit));
}

StateSet stable_states(const StateGraph& graph) {
  StateSet out(graph.dimension());
  for (std::uint64_t s = 0; s < graph.state_count(); ++s) {
    if (graph.is_stable(static_cast<StateBits>(s))) out.insert(s);
  }
  return out;
}

StateSet stable_states(const BooleanNetwork& bn, int limit) {
  check_state_space(bn, limit);
  StateSet out(bn.size());
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << bn.size()); ++s) {
    if (bn.update_mask(static_cast<StateBits>(s)) == 0) out.insert(s);
  }
  return out;
}

std::vector<std::vector<StateBits>> attractors(const StateGraph& graph) {
  // Iterative Tarjan over the implicit graph.
  const std::uint64_t count = graph.state_count();
  constexpr std::uint32_t kUnvisited = ~std::uint32_t{0};
  std::vector<std::uint32_t> index(count, kUnvisited);
  std::vector<std::uint32_t> low(count, 0);
  std::vector<std::uint32_t> scc(count, kUnvisited);
  std::vector<StateBits> stack;
  struct Frame {
    StateBits state;
    StateBits pending;  // successor flips still to explore
  };
  std::vector<Frame> frames;
  std::uint32_t next_index = 0;
  std::uint32_t next_scc = 0;

  auto pending_of = [&](StateBits s) -> StateBits {
    const StateBits m = graph.update_mask(s);
    // One pseudo-flip holds the single sync successor.
    return graph.mode() == UpdateMode::Synchronous ? (m ? 1u : 0u) : m;
  };
  auto take_successor = [&](Frame& f) -> StateBits {
    if (graph.mode() == UpdateMode::Synchronous) {
      f.pending = 0;
      return f.state ^ graph.update_mask(f.state);
    }
    const StateBits bit = f.pending & (~f.pending + 1);
    f.pending &= f.pending - 1;
    return f.state ^ bit;
  };

  for (std::uint64_t root = 0; root < count; ++root) {
    if (index[root] != kUnvisited) continue;
    const auto r = static_cast<StateBits>(root);
    index[r] = low[r] = next_index++;
    stack.push_back(r);
    frames.push_back({r, pending_of(r)});
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.pending) {
        const StateBits t = take_successor(f);
        if (index[t] == kUnvisited) {
          index[t] = low[t] = next_index++;
          stack.push_back(t);
          frames.push_back({t, pending_of(t)});
        } else if (scc[t] == kUnvisited) {
          low[f.state] = std::min(low[f.state], index[t]);
        }
        continue;
      }
      const StateBits v = f.state;
      frames.pop_back();
      if (!frames.empty()) {
        const StateBits parent = frames.back().state;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == index[v]) {
        StateBits w;
        do {
          w = stack.back();
          stack.pop_back();
          scc[w] = next_scc;
        } while (w != v);
        ++next_scc;
      }
    }
  }

  std::vector<bool> terminal(next_scc, true);
  for (std::uint64_t s = 0; s < count; ++s) {
    for (StateBits t : graph.successors(static_cast<StateBits>(s))) {
      if (scc[t] != scc[s]) terminal[scc[s]] = false;
    }
  }
  std::vector<std::vector<StateBits>> members(next_scc);
  for (std::uint64_t s = 0; s < count; ++s) {
    if (terminal[scc[s]]) members[scc[s]].push_back(static_cast<StateBits>(s));
  }
  std::vector<std::vector<StateBits>> out;
  for (auto& m : members) {
    if (!m.empty()) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

TransitionSet component_transitions(const BooleanNetwork& bn, int i, int limit) {
  check_state_space(bn, limit);
  if (i < 0 || i >= bn.size()) throw Error(ErrorCode::IndexOutOfRange, "component " + std::to_string(i));
  TransitionSet out;
  out.component = i;
  const StateBits bit = StateBits{1} << i;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << bn.size()); ++x) {
    const auto s = static_cast<StateBits>(x);
    const bool value = s & bit;
    if (bn.target(i, s) == value) continue;
    (value ? out.decreasing : out.increasing).emplace_back(s, s ^ bit);
  }
  return out;
}

int minimal_dimension(const RegulatorContext& ctx) {
  return ctx.self_index() ? ctx.arity() : ctx.arity() + 1;
}

TransitionCounts count_component_transitions(const FunctionShape& shape, const RegulatorContext& ctx, int n) {
  if (shape.arity() != ctx.arity()) throw Error(ErrorCode::ArityMismatch, "shape and context arity differ");
  const int base = minimal_dimension(ctx);
  if (n < base || n > 62) {
    throw Error(ErrorCode::InvalidArgument, "state space dimension " + std::to_string(n) +
                                                " cannot hold " + std::to_string(base) + " components");
  }
  TransitionCounts c;
  const Mask top = full_mask(ctx.arity());
  if (auto self = ctx.self_index()) {
    const Mask own = bit_of(*self);
    for (Mask x = 0; x <= top; ++x) {
      const bool target = evaluate(shape, ctx, x);
      const bool value = x & own;
      if (target && !value) ++c.increasing;
      if (!target && value) ++c.decreasing;
    }
  } else {
    // The target's own value is free: each regulator input contributes one
    // transition, whose direction is the function value.
    for (Mask x = 0; x <= top; ++x) {
      if (evaluate(shape, ctx, x)) {
        ++c.increasing;
      } else {
        ++c.decreasing;
      }
    }
  }
  const int extra = n - base;
  c.increasing <<= extra;
  c.decreasing <<= extra;
  return c;
}

std::string_view to_string(AutoregCase c) {
  switch (c) {
    case AutoregCase::NotAutoregulated: return "not_autoregulated";
    case AutoregCase::Positive: return "positive_autoreg";
    case AutoregCase::Negative: return "negative_autoreg";
  }
  return "?";
}

AutoregCase autoreg_case(const RegulatorContext& ctx) {
  if (auto s = ctx.self_sign()) return *s == Sign::Positive ? AutoregCase::Positive : AutoregCase::Negative;
  return AutoregCase::NotAutoregulated;
}

bool BoundsReport::within_bounds() const {
  if (!observed) return true;
  const auto in = [](std::uint64_t v, std::uint64_t lo, std::uint64_t hi) { return lo <= v && v <= hi; };
  return in(observed->total(), total_lower, total_upper) &&
         in(observed->increasing, incr_lower, incr_upper) && in(observed->decreasing, incr_lower, incr_upper);
}

BoundsReport transition_bounds(const RegulatorContext& ctx, int n) {
  if (n < 1 || n > 62) throw Error(ErrorCode::InvalidArgument, "n must be in [1, 62]");
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  BoundsReport r;
  r.kind = autoreg_case(ctx);
  switch (r.kind) {
    case AutoregCase::NotAutoregulated:
      r.total_lower = r.total_upper = half;
      r.incr_upper = half - 1;
      r.incr_lower = 1;
      break;
    case AutoregCase::Positive:
      r.total_lower = 0;
      r.total_upper = half - 1;
      r.incr_upper = half - 1;
      r.incr_lower = 0;
      break;
    case AutoregCase::Negative:
      r.total_lower = half + 1;
      r.total_upper = 2 * half;
      r.incr_upper = half;
      r.incr_lower = 1;
      break;
  }
  return r;
}

BoundsReport check_bounds(const FunctionShape& shape, const RegulatorContext& ctx, int n) {
  BoundsReport r = transition_bounds(ctx, n);
  r.observed = count_component_transitions(shape, ctx, n);
  return r;
}

FunctionShape f_star(const RegulatorContext& ctx) {
  const auto self = ctx.self_index();
  if (!self) throw Error(ErrorCode::NotAutoregulated, "f* needs an autoregulated component");
  if (ctx.arity() < 2) throw Error(ErrorCode::SingleRegulator, "f* needs a regulator besides the component itself");
  std::vector<Clause> clauses;
  for (int k = 1; k <= ctx.arity(); ++k) {
    if (k != *self) clauses.emplace_back(bit_of(*self) | bit_of(k));
  }
  return FunctionShape(ctx.arity(), std::move(clauses));
}

std::vector<TraceRow> path_trace(const RegulatorContext& ctx, int n, const std::vector<FunctionShape>& path) {
  std::vector<TraceRow> rows;
  rows.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i].arity() != ctx.arity()) throw Error(ErrorCode::ArityMismatch, "path shape arity differs from context");
    if (i > 0) {
      const auto up = parents(path[i - 1]);
      const bool linked = std::any_of(up.begin(), up.end(), [&](const NeighborStep& s) { return s.target == path[i]; });
      if (!linked) {
        throw Error(ErrorCode::NotAChain, path[i].to_string() + " is not a parent of " + path[i - 1].to_string());
      }
    }
    rows.push_back({path[i], level(path[i]), count_component_transitions(path[i], ctx, n)});
  }
  return rows;
}

RegulatorContext walk_context(int p, AutoregCase autoreg) {
  if (autoreg == AutoregCase::NotAutoregulated) return RegulatorContext::all_positive(p);
  std::vector<Sign> signs(p + 1, Sign::Positive);
  if (autoreg == AutoregCase::Negative) signs.back() = Sign::Negative;
  return RegulatorContext(std::move(signs), p + 1);
}

std::vector<TraceRow> walk_trace(int p, AutoregCase autoreg, std::uint64_t seed) {
  const RegulatorContext ctx = walk_context(p, autoreg);
  return path_trace(ctx, minimal_dimension(ctx), random_path(ctx.arity(), seed));
}

}  // namespace monoreg
