#include "monoreg/neighborhood.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "monoreg/random.hpp"

namespace monoreg {

namespace {

// Upset of the Boolean lattice 2^{1..p} generated by a shape's clauses: the
// sign-free true states. Parents add one or two points to it, children
// remove one or two.
class Upset {
 public:
  explicit Upset(int p) : p_(p), words_(((std::size_t{1} << p) + 63) / 64, 0) {}

  static Upset of(const FunctionShape& s) {
    Upset u(s.arity());
    for (Mask x = 0; x <= full_mask(s.arity()); ++x) {
      if (s.accepts(x)) u.set(x);
    }
    return u;
  }

  bool has(Mask x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set(Mask x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void reset(Mask x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  /// Non-members all of whose covers are members: the points that can be
  /// added while staying an upset.
  std::vector<Mask> addable() const {
    std::vector<Mask> out;
    const Mask top = full_mask(p_);
    for (Mask x = 0; x <= top; ++x) {
      if (has(x)) continue;
      bool ok = true;
      for (Mask rest = top & ~x; rest && ok; rest &= rest - 1) {
        ok = has(x | (rest & (~rest + 1)));
      }
      if (ok) out.push_back(x);
    }
    return out;
  }

  std::vector<Clause> minimal_elements() const {
    std::vector<Clause> out;
    for (Mask x = 0; x <= full_mask(p_); ++x) {
      if (!has(x)) continue;
      bool is_min = true;
      for (Mask m = x; m && is_min; m &= m - 1) is_min = !has(x & ~(m & (~m + 1)));
      if (is_min) out.emplace_back(x);
    }
    return out;
  }

 private:
  int p_;
  std::vector<std::uint64_t> words_;
};

std::optional<FunctionShape> as_cover(int p, std::vector<Clause> clauses) {
  if (clauses.empty()) return std::nullopt;
  Mask cover = 0;
  for (Clause c : clauses) {
    if (c.empty()) return std::nullopt;
    cover |= c.mask();
  }
  if (cover != full_mask(p)) return std::nullopt;
  return FunctionShape(p, std::move(clauses));
}

std::optional<FunctionShape> with_added(const FunctionShape& s, std::initializer_list<Mask> extra) {
  std::vector<Clause> all = s.clauses();
  for (Mask x : extra) all.emplace_back(x);
  return as_cover(s.arity(), minimize(std::span<const Clause>(all)));
}

void sort_steps(std::vector<NeighborStep>& steps) {
  std::sort(steps.begin(), steps.end(),
            [](const NeighborStep& a, const NeighborStep& b) { return a.target < b.target; });
}

}  // namespace

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::ParentR1: return "R1";
    case StepKind::ParentR2: return "R2";
    case StepKind::ParentR3: return "R3";
    case StepKind::Child: return "child";
  }
  return "?";
}

bool independent(Clause sigma, const FunctionShape& s) {
  return std::none_of(s.clauses().begin(), s.clauses().end(),
                      [&](Clause c) { return c.comparable(sigma); });
}

std::vector<NeighborStep> parents(const FunctionShape& s) {
  const int p = s.arity();
  const Upset up = Upset::of(s);
  std::vector<NeighborStep> out;

  // Single-point extensions. A maximal independent point keeps every clause
  // (rule 1); a point below an existing clause absorbs it (rule 2). Points
  // whose extension loses the cover are kept for pairing.
  std::vector<Mask> lone;
  for (Mask x : up.addable()) {
    if (auto t = with_added(s, {x})) {
      const StepKind kind = independent(Clause(x), s) ? StepKind::ParentR1 : StepKind::ParentR2;
      out.push_back({std::move(*t), kind, 1, kind});
    } else {
      lone.push_back(x);
    }
  }

  // Two-point extensions (rule 3): neither point alone yields a cover.
  // Either both are addable now, or the second becomes addable only once the
  // first (one of its covers) is in.
  std::vector<std::pair<Mask, Mask>> pairs;
  for (std::size_t i = 0; i < lone.size(); ++i) {
    for (std::size_t j = i + 1; j < lone.size(); ++j) pairs.emplace_back(lone[i], lone[j]);
    const Mask a = lone[i];
    for (Mask m = a; m; m &= m - 1) {
      const Mask b = a & ~(m & (~m + 1));
      if (up.has(b)) continue;
      bool ok = true;
      for (Mask rest = full_mask(p) & ~b; rest && ok; rest &= rest - 1) {
        const Mask cover = b | (rest & (~rest + 1));
        ok = cover == a || up.has(cover);
      }
      if (ok) pairs.emplace_back(a, b);
    }
  }
  for (auto [a, b] : pairs) {
    if (auto t = with_added(s, {a, b})) out.push_back({std::move(*t), StepKind::ParentR3, 2, StepKind::ParentR3});
  }
  sort_steps(out);
  return out;
}

std::vector<NeighborStep> children(const FunctionShape& s) {
  const int p = s.arity();
  const Upset up = Upset::of(s);

  auto without = [&](std::initializer_list<Mask> removed) -> std::optional<FunctionShape> {
    Upset smaller = up;
    for (Mask x : removed) smaller.reset(x);
    return as_cover(p, smaller.minimal_elements());
  };

  // Candidates mirror the parent moves: drop one minimal point, or two when
  // dropping either alone loses the cover.
  std::vector<FunctionShape> candidates;
  std::vector<Mask> lone;
  for (Clause c : s.clauses()) {
    if (auto t = without({c.mask()})) {
      candidates.push_back(std::move(*t));
    } else {
      lone.push_back(c.mask());
    }
  }
  for (std::size_t i = 0; i < lone.size(); ++i) {
    for (std::size_t j = i + 1; j < lone.size(); ++j) {
      if (auto t = without({lone[i], lone[j]})) candidates.push_back(std::move(*t));
    }
    const Mask a = lone[i];
    for (Mask rest = full_mask(p) & ~a; rest; rest &= rest - 1) {
      const Mask b = a | (rest & (~rest + 1));
      // b must be minimal once a is gone: no other clause below it.
      const bool minimal_after = std::none_of(s.clauses().begin(), s.clauses().end(), [&](Clause c) {
        return c.mask() != a && c.subset_of(Clause(b));
      });
      if (!minimal_after) continue;
      if (auto t = without({a, b})) candidates.push_back(std::move(*t));
    }
  }

  // A candidate is a child exactly when s is one of its parents.
  std::vector<NeighborStep> out;
  for (auto& t : candidates) {
    for (const NeighborStep& step : parents(t)) {
      if (step.target == s) {
        out.push_back({t, StepKind::Child, step.delta_true_states, step.kind});
        break;
      }
    }
  }
  sort_steps(out);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const NeighborStep& a, const NeighborStep& b) { return a.target == b.target; }),
            out.end());
  return out;
}

std::vector<FunctionShape> siblings(const FunctionShape& s, SiblingScope scope) {
  std::vector<FunctionShape> out;
  for (const NeighborStep& parent : parents(s)) {
    for (NeighborStep& child : children(parent.target)) {
      if (child.target != s) out.push_back(std::move(child.target));
    }
  }
  if (scope == SiblingScope::SharedParentOrChild) {
    for (const NeighborStep& child : children(s)) {
      for (NeighborStep& parent : parents(child.target)) {
        if (parent.target != s) out.push_back(std::move(parent.target));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HasseSlice hasse_slice(const FunctionShape& s, SiblingScope scope) {
  return {s, parents(s), children(s), siblings(s, scope)};
}

int true_state_delta(const FunctionShape& s, const FunctionShape& parent) {
  for (const NeighborStep& step : parents(s)) {
    if (step.target == parent) return step.delta_true_states;
  }
  throw Error(ErrorCode::NotAParent, parent.to_string() + " is not a parent of " + s.to_string());
}

std::vector<FunctionShape> random_path(int p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FunctionShape> path{inf_shape(p)};
  while (true) {
    auto up = parents(path.back());
    if (up.empty()) break;
    path.push_back(std::move(up[rng.below(up.size())].target));
  }
  return path;
}

namespace {

struct AntichainWalker {
  int p;
  Mask top;
  std::array<std::uint64_t, 64> comparable{};
  std::vector<Clause> chosen;
  const std::function<void(const std::vector<Clause>&)>* visit;

  explicit AntichainWalker(int arity) : p(arity), top(full_mask(arity)) {
    for (Mask x = 1; x <= top; ++x) {
      for (Mask y = 1; y <= top; ++y) {
        if (Clause(x).comparable(Clause(y))) comparable[x] |= std::uint64_t{1} << y;
      }
    }
  }

  // Every antichain is reached once, as the increasing sequence of its
  // members; `forbidden` holds points comparable to something chosen.
  template <class Emit>
  void extend(std::uint64_t forbidden, Mask next, Mask cover, Emit& emit) {
    if (cover == top) emit(chosen);
    const std::uint64_t range = (top == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (top + 1)) - 1);
    if (next >= 64) return;
    std::uint64_t allowed = ~forbidden & range & (~std::uint64_t{0} << next);
    while (allowed) {
      const Mask x = static_cast<Mask>(std::countr_zero(allowed));
      allowed &= allowed - 1;
      chosen.emplace_back(x);
      extend(forbidden | comparable[x], x + 1, cover | x, emit);
      chosen.pop_back();
    }
  }
};

void check_enumeration_arity(int p, int limit) {
  if (p < 1 || p > limit || p > 6) {
    throw Error(ErrorCode::ArityTooLarge,
                "enumeration supports 1 <= p <= " + std::to_string(std::min(limit, 6)) + ", got " +
                    std::to_string(p));
  }
}

}  // namespace

void for_each_shape(int p, const std::function<void(const FunctionShape&)>& visit, int limit) {
  check_enumeration_arity(p, limit);
  AntichainWalker walker(p);
  auto emit = [&](const std::vector<Clause>& clauses) { visit(FunctionShape(p, clauses)); };
  walker.extend(1, 1, 0, emit);
}

std::vector<FunctionShape> enumerate_all(int p, int limit) {
  std::vector<FunctionShape> out;
  for_each_shape(p, [&](const FunctionShape& s) { out.push_back(s); }, limit);
  return out;
}

std::uint64_t count_by_enumeration(int p, int limit) {
  check_enumeration_arity(p, limit);
  AntichainWalker walker(p);
  std::uint64_t n = 0;
  auto emit = [&](const std::vector<Clause>&) { ++n; };
  walker.extend(1, 1, 0, emit);
  return n;
}

std::string to_string(BigCount value) {
  if (value == 0) return "0";
  std::string out;
  while (value) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

BigCount dedekind(int p) {
  constexpr std::uint64_t small[] = {0, 3, 6, 20, 168, 7581, 7828354, 2414682040998ull};
  if (p >= 1 && p <= 7) return small[p];
  if (p == 8) {
    // 56130437228687557907788
    return static_cast<BigCount>(5613043722868ull) * 10000000000ull + 7557907788ull;
  }
  throw Error(ErrorCode::DedekindUnknown, "M(" + std::to_string(p) + ") is not tabulated");
}

BigCount count_consistent(int p) {
  if (p < 1 || p > 8) {
    throw Error(ErrorCode::DedekindUnknown, "N(p) needs M(p), known for 1 <= p <= 8");
  }
  // Every monotone function is a constant or nondegenerate on exactly one
  // non-empty subset of its variables.
  BigCount n = dedekind(p) - 2;
  BigCount binom = 1;
  for (int k = 1; k < p; ++k) {
    binom = binom * (p - k + 1) / k;
    n -= binom * count_consistent(k);
  }
  return n;
}

std::size_t HasseDiagram::index_of(const FunctionShape& s) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), s);
  if (it == nodes.end() || *it != s) throw Error(ErrorCode::InvalidArgument, s.to_string() + " not in diagram");
  return static_cast<std::size_t>(it - nodes.begin());
}

HasseDiagram build_hasse(int p) {
  if (p < 1 || p > kHasseOracleLimit) {
    throw Error(ErrorCode::ArityTooLarge, "Hasse oracle supports 1 <= p <= 5");
  }
  HasseDiagram hd;
  hd.arity = p;
  hd.nodes = enumerate_all(p);
  std::sort(hd.nodes.begin(), hd.nodes.end());
  const std::size_t n = hd.nodes.size();

  // True-state sets straight from the clauses, one bit per point of 2^{1..p}.
  std::vector<std::uint32_t> truth(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (Mask x = 0; x <= full_mask(p); ++x) {
      if (hd.nodes[i].accepts(x)) truth[i] |= std::uint32_t{1} << x;
    }
  }
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> strictly_above(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && (truth[i] & ~truth[j]) == 0) {
        strictly_above[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
  }
  std::vector<std::size_t> by_size(n);
  for (std::size_t i = 0; i < n; ++i) by_size[i] = i;
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(truth[a]) < std::popcount(truth[b]);
  });

  // Scanning upper elements by increasing size, an element is a cover iff no
  // cover found so far lies below it.
  hd.up.assign(n, {});
  hd.down.assign(n, {});
  std::vector<std::uint64_t> dominated(words);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(dominated.begin(), dominated.end(), 0);
    const std::uint64_t* above = &strictly_above[i * words];
    for (std::size_t j : by_size) {
      if (!((above[j / 64] >> (j % 64)) & 1u)) continue;
      if ((dominated[j / 64] >> (j % 64)) & 1u) continue;
      hd.up[i].push_back(j);
      hd.down[j].push_back(i);
      hd.edges.emplace_back(i, j);
      const std::uint64_t* above_j = &strictly_above[j * words];
      for (std::size_t w = 0; w < words; ++w) dominated[w] |= above_j[w];
    }
  }
  for (auto& v : hd.up) std::sort(v.begin(), v.end());
  for (auto& v : hd.down) std::sort(v.begin(), v.end());
  std::sort(hd.edges.begin(), hd.edges.end());
  return hd;
}

}  // namespace monoreg
