#include "monoreg/verify.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "monoreg/dynamics.hpp"
#include "monoreg/error.hpp"

namespace monoreg {

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

std::vector<NeighborStep> parents_without_rule3(const FunctionShape& s) {
  auto steps = parents(s);
  std::erase_if(steps, [](const NeighborStep& st) { return st.kind == StepKind::ParentR3; });
  return steps;
}

namespace {

class Suite {
 public:
  Suite(std::string name, std::size_t limit) : limit_(limit) { result_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++result_.checks;
    if (ok) return;
    ++result_.failures;
    if (result_.counterexamples.size() < limit_) result_.counterexamples.push_back(describe());
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
  std::size_t limit_;
};

std::uint64_t count_true(const FunctionShape& f, const RegulatorContext& ctx) {
  std::uint64_t c = 0;
  for (Mask x = 0; x <= full_mask(f.arity()); ++x) c += evaluate(f, ctx, x);
  return c;
}

std::string names_of(const std::set<FunctionShape>& shapes) {
  std::string out = "[";
  for (const auto& s : shapes) out += (out.size() > 1 ? " " : "") + s.to_string();
  return out + "]";
}

RegulatorContext context_for(int p, Mask negative, int self) {
  std::vector<Sign> signs;
  for (int k = 0; k < p; ++k) signs.push_back((negative >> k) & 1u ? Sign::Negative : Sign::Positive);
  return RegulatorContext(std::move(signs), self ? std::optional<int>(self) : std::nullopt);
}

}  // namespace

VerifyReport verify_arity(int p, const VerifyOptions& options) {
  if (p < 1 || p > kHasseOracleLimit) {
    throw Error(ErrorCode::ArityTooLarge, "verification needs 1 <= p <= " + std::to_string(kHasseOracleLimit));
  }
  const ParentsFn up_rule = options.parents_fn ? options.parents_fn : ParentsFn(parents);
  const HasseDiagram hd = build_hasse(p);
  VerifyReport report;
  report.arity = p;
  report.nodes = hd.nodes.size();
  report.edges = hd.edges.size();
  const std::size_t limit = options.max_counterexamples;
  const RegulatorContext plain = RegulatorContext::all_positive(p);

  std::vector<std::vector<NeighborStep>> rule_up(hd.nodes.size());
  for (std::size_t i = 0; i < hd.nodes.size(); ++i) rule_up[i] = up_rule(hd.nodes[i]);

  {
    Suite suite("oracle", limit);
    // Children by duality over the rule under test.
    std::vector<std::set<FunctionShape>> dual_down(hd.nodes.size());
    for (std::size_t i = 0; i < hd.nodes.size(); ++i) {
      for (const auto& st : rule_up[i]) {
        const std::size_t j = hd.index_of(st.target);
        if (j < hd.nodes.size()) dual_down[j].insert(hd.nodes[i]);
      }
    }
    for (std::size_t i = 0; i < hd.nodes.size(); ++i) {
      std::set<FunctionShape> want_up, want_down, got_up;
      for (auto j : hd.up[i]) want_up.insert(hd.nodes[j]);
      for (auto j : hd.down[i]) want_down.insert(hd.nodes[j]);
      for (const auto& st : rule_up[i]) got_up.insert(st.target);
      const auto& node = hd.nodes[i];
      suite.check(got_up == want_up, [&] {
        return "parents of " + node.to_string() + ": rules " + names_of(got_up) + ", oracle " + names_of(want_up);
      });
      suite.check(dual_down[i] == want_down, [&] {
        return "children of " + node.to_string() + ": duality " + names_of(dual_down[i]) + ", oracle " +
               names_of(want_down);
      });
      std::set<FunctionShape> lib_down;
      for (const auto& st : children(node)) lib_down.insert(st.target);
      suite.check(lib_down == want_down, [&] {
        return "children() of " + node.to_string() + ": " + names_of(lib_down) + ", oracle " + names_of(want_down);
      });
    }
    report.suites.push_back(suite.take());
  }

  {
    Suite suite("true-state deltas", limit);
    for (std::size_t i = 0; i < hd.nodes.size(); ++i) {
      const std::uint64_t base = count_true(hd.nodes[i], plain);
      for (const auto& st : rule_up[i]) {
        const std::uint64_t gained = count_true(st.target, plain) - base;
        const int tagged = st.kind == StepKind::ParentR3 ? 2 : 1;
        suite.check((gained == 1 || gained == 2) && gained == static_cast<std::uint64_t>(st.delta_true_states) &&
                        st.delta_true_states == tagged,
                    [&] {
                      return hd.nodes[i].to_string() + " -> " + st.target.to_string() + " (" +
                             std::string(to_string(st.kind)) + ") gains " + std::to_string(gained) + " states";
                    });
      }
    }
    report.suites.push_back(suite.take());
  }

  {
    Suite suite("levels", limit);
    for (const auto& [lo, hi] : hd.edges) {
      suite.check(level_leq(level(hd.nodes[lo]), level(hd.nodes[hi])), [&] {
        return level(hd.nodes[lo]).to_string() + " of " + hd.nodes[lo].to_string() + " exceeds " +
               level(hd.nodes[hi]).to_string() + " of " + hd.nodes[hi].to_string();
      });
    }
    report.suites.push_back(suite.take());
  }

  {
    Suite extremes("extreme states", limit);
    Suite bounds("transition bounds", limit);
    Suite noauto("non-autoregulated counts", limit);
    for (Mask neg = 0; neg <= full_mask(p); ++neg) {
      const Mask all_operative = full_mask(p) ^ neg;
      for (const auto& f : hd.nodes) {
        const RegulatorContext ctx = context_for(p, neg, 0);
        extremes.check(evaluate(f, ctx, all_operative) && !evaluate(f, ctx, neg), [&] {
          return f.to_string() + " with negative mask " + std::to_string(neg);
        });
        for (int self = 0; self <= p; ++self) {
          const RegulatorContext c = context_for(p, neg, self);
          const BoundsReport r = check_bounds(f, c, minimal_dimension(c));
          bounds.check(r.within_bounds(), [&] {
            return f.to_string() + " " + std::string(to_string(r.kind)) + " self=" + std::to_string(self) +
                   " T+=" + std::to_string(r.observed->increasing) + " T-=" + std::to_string(r.observed->decreasing);
          });
        }
        // T+ = |T(f)|, T- = 2^p - |T(f)|; balanced functions split evenly.
        const auto counts = count_component_transitions(f, ctx, p + 1);
        const std::uint64_t t = count_true(f, ctx);
        const std::uint64_t space = std::uint64_t{1} << p;
        noauto.check(counts.increasing == t && counts.decreasing == space - t && counts.total() == space, [&] {
          return f.to_string() + " T+=" + std::to_string(counts.increasing) + " |T(f)|=" + std::to_string(t);
        });
      }
      // Along every edge T+ grows and T- shrinks, which gives the balanced
      // comparisons by transitivity.
      const RegulatorContext ctx = context_for(p, neg, 0);
      for (const auto& [lo, hi] : hd.edges) {
        const auto a = count_component_transitions(hd.nodes[lo], ctx, p + 1);
        const auto b = count_component_transitions(hd.nodes[hi], ctx, p + 1);
        noauto.check(a.increasing < b.increasing && a.decreasing > b.decreasing, [&] {
          return hd.nodes[lo].to_string() + " -> " + hd.nodes[hi].to_string() + " does not shift transitions up";
        });
      }
      if (p <= 4) {
        const std::uint64_t half = std::uint64_t{1} << (p - 1);
        for (const auto& f : hd.nodes) {
          if (count_true(f, ctx) != half) continue;
          for (const auto& g : hd.nodes) {
            const auto c = count_component_transitions(g, ctx, p + 1);
            if (shape_leq(g, f)) noauto.check(c.decreasing >= c.increasing, [&] { return g.to_string() + " below balanced " + f.to_string(); });
            if (shape_leq(f, g)) noauto.check(c.decreasing <= c.increasing, [&] { return g.to_string() + " above balanced " + f.to_string(); });
          }
        }
      }
    }
    report.suites.push_back(extremes.take());
    report.suites.push_back(bounds.take());
    report.suites.push_back(noauto.take());
  }

  if (p >= 2) {
    Suite suite("maximal autoregulation", limit);
    const int n = p;
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    for (Mask neg = 0; neg <= full_mask(p); ++neg) {
      for (int self = 1; self <= p; ++self) {
        const RegulatorContext ctx = context_for(p, neg, self);
        const FunctionShape star = f_star(ctx);
        const auto c = count_component_transitions(star, ctx, n);
        const bool negative = *ctx.self_sign() == Sign::Negative;
        if (negative) {
          suite.check(c.decreasing == half && c.increasing == half - 1, [&] { return "f* " + star.to_string(); });
        } else {
          suite.check(c.total() == 1 && c.decreasing == 1, [&] { return "f* " + star.to_string(); });
        }
        for (const auto& f : hd.nodes) {
          const auto k = count_component_transitions(f, ctx, n);
          const auto what = [&] {
            return f.to_string() + " vs f* " + star.to_string() + " T+=" + std::to_string(k.increasing) +
                   " T-=" + std::to_string(k.decreasing);
          };
          if (shape_leq(f, star)) {
            suite.check(negative ? (k.decreasing == half && k.increasing <= half - 1)
                                 : (k.decreasing >= 1 && k.increasing == 0),
                        what);
          }
          if (shape_leq(star, f)) {
            suite.check(negative ? (k.decreasing <= half && k.increasing >= half - 1) : k.decreasing <= 1, what);
          }
        }
      }
    }
    report.suites.push_back(suite.take());
  }

  return report;
}

}  // namespace monoreg
