#include <doctest.h>

#include "monoreg/dynamics.hpp"
#include "monoreg/error.hpp"
#include "monoreg/neighborhood.hpp"
#include "support.hpp"

using namespace monoreg;
using namespace testing_support;

namespace {

BooleanNetwork toy(std::optional<FunctionShape> f1 = std::nullopt) {
  using enum Sign;
  return BooleanNetwork({
      Component::regulated("s1", 0, {0, 1, 2}, {Positive, Positive, Negative}, f1.value_or(S({{1}, {2, 3}}, 3))),
      Component::regulated("s2", 1, {2}, {Negative}, S({{1}}, 1)),
      Component::regulated("s3", 2, {1}, {Negative}, S({{1}}, 1)),
  });
}

std::vector<std::string> names(const BooleanNetwork& bn, const std::vector<StateBits>& states) {
  std::vector<std::string> out;
  for (auto s : states) out.push_back(bn.format_state(s));
  return out;
}

std::vector<std::string> names(const BooleanNetwork& bn, const StateSet& set) {
  std::vector<std::string> out;
  for (auto s : set.members()) out.push_back(bn.format_state(static_cast<StateBits>(s)));
  std::sort(out.begin(), out.end());
  return out;
}

// Brute-force count in the full space: flip component 0 whenever its
// target differs. Component 0 is the target; components 1..p-ish hold the
// regulators (or component 0 itself when self-regulated).
TransitionCounts brute_counts(const FunctionShape& f, const RegulatorContext& ctx, int n) {
  TransitionCounts c;
  // Regulator k lives at component k-1 when self-regulated at index 1,
  // otherwise at component k.
  const bool self = ctx.self_index().has_value();
  for (unsigned s = 0; s < (1u << n); ++s) {
    Mask x = 0;
    for (int k = 1; k <= ctx.arity(); ++k) {
      int comp;
      if (self) {
        comp = k == *ctx.self_index() ? 0 : (k < *ctx.self_index() ? k : k - 1);
      } else {
        comp = k;
      }
      x |= ((s >> comp) & 1u) << (k - 1);
    }
    const bool target = brute_eval(f, ctx.signs(), x);
    const bool value = s & 1u;
    if (target && !value) ++c.increasing;
    if (!target && value) ++c.decreasing;
  }
  return c;
}

}  // namespace

TEST_CASE("toy network asynchronous graph") {
  const auto bn = toy();
  const auto g = stg_async(bn);
  CHECK(names(bn, g.successors(bn.parse_state("000"))) == std::vector<std::string>{"010", "001"});
  CHECK(g.successors(bn.parse_state("110")).empty());
  // 000 and 011, 100 and 111 each have two out-edges, 010 has one.
  CHECK(g.edge_count() == 9);
  for (StateBits s = 0; s < 8; ++s) {
    for (auto t : g.successors(s)) CHECK(std::popcount(s ^ t) == 1);
  }
  CHECK(names(bn, stable_states(bn)) == std::vector<std::string>{"001", "101", "110"});
  CHECK(names(bn, stable_states(g)) == names(bn, stable_states(stg_sync(bn))));
  const auto att = attractors(g);
  REQUIRE(att.size() == 3);
  for (const auto& a : att) CHECK(a.size() == 1);
}

TEST_CASE("toy network synchronous graph") {
  const auto bn = toy();
  const auto g = stg_sync(bn);
  auto succ = [&](const char* s) { return names(bn, g.successors(bn.parse_state(s))); };
  CHECK(succ("000") == std::vector<std::string>{"011"});
  CHECK(succ("011") == std::vector<std::string>{"000"});
  CHECK(succ("100") == std::vector<std::string>{"111"});
  CHECK(succ("111") == std::vector<std::string>{"100"});
  CHECK(succ("110").empty());
  std::vector<std::vector<std::string>> att;
  for (const auto& a : attractors(g)) att.push_back(names(bn, a));
  std::sort(att.begin(), att.end());
  CHECK(att == std::vector<std::vector<std::string>>{{"000", "011"}, {"001"}, {"100", "111"}, {"101"}, {"110"}});
}

TEST_CASE("sync successor flips exactly the async out-edge bits") {
  const auto bn = toy();
  const auto a = stg_async(bn);
  const auto s = stg_sync(bn);
  for (StateBits x = 0; x < 8; ++x) {
    StateBits flips = 0;
    for (auto t : a.successors(x)) flips |= x ^ t;
    const auto next = s.successors(x);
    if (flips == 0) {
      CHECK(next.empty());
    } else {
      REQUIRE(next.size() == 1);
      CHECK((next[0] ^ x) == flips);
    }
  }
}

TEST_CASE("trivial networks") {
  using enum Sign;
  const BooleanNetwork ident({Component::regulated("a", 0, {0}, {Positive}, S({{1}}, 1)),
                              Component::regulated("b", 1, {1}, {Positive}, S({{1}}, 1))});
  CHECK(stable_states(ident).count() == 4);
  const auto att = attractors(stg_async(ident));
  CHECK(att.size() == 4);
  const BooleanNetwork neg({Component::regulated("a", 0, {0}, {Negative}, S({{1}}, 1))});
  CHECK(stable_states(neg).count() == 0);
  CHECK(attractors(stg_async(neg)) == std::vector<std::vector<StateBits>>{{0, 1}});
  // An explicit graph without edges.
  const StateGraph empty(3, UpdateMode::Asynchronous, std::vector<StateBits>(8, 0));
  CHECK(attractors(empty).size() == 8);
  CHECK(empty.edge_count() == 0);
}

TEST_CASE("network validation and limits") {
  using enum Sign;
  CHECK_THROWS_AS(BooleanNetwork({Component::input("a"), Component::input("a")}), Error);
  std::vector<Component> many;
  for (int i = 0; i < 26; ++i) many.push_back(Component::input("x" + std::to_string(i)));
  const BooleanNetwork big(many);
  try {
    stg_async(big);
    FAIL("expected StateSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateSpaceTooLarge);
  }
  CHECK_THROWS_AS(
      BooleanNetwork({Component::regulated("a", 0, {0, 1}, {Positive}, S({{1}}, 1)), Component::input("b")}), Error);
}

TEST_CASE("component transitions in the toy network") {
  const auto bn = toy();
  const auto t = component_transitions(bn, 0);
  REQUIRE(t.increasing.size() == 1);
  CHECK(bn.format_state(t.increasing[0].first) == "010");
  CHECK(bn.format_state(t.increasing[0].second) == "110");
  CHECK(t.decreasing.empty());

  const auto up = component_transitions(toy(sup_shape(3)), 0);
  CHECK(up.increasing.size() == 3);
  CHECK(up.decreasing.empty());
  const auto down = component_transitions(toy(inf_shape(3)), 0);
  CHECK(down.increasing.empty());
  CHECK(down.decreasing.size() == 3);

  // Reduced-space counts agree with the full graph.
  const auto ctx = *bn.component(0).context;
  CHECK(count_component_transitions(S({{1}, {2, 3}}, 3), ctx, 3) == TransitionCounts{1, 0});
}

TEST_CASE("transition bounds table") {
  const auto none = transition_bounds(signs("++"), 3);
  CHECK(none.kind == AutoregCase::NotAutoregulated);
  CHECK(none.total_lower == 4);
  CHECK(none.total_upper == 4);
  CHECK(none.incr_upper == 3);
  CHECK(none.incr_lower == 1);
  const auto pos = transition_bounds(signs("+++", 1), 3);
  CHECK(pos.total_lower == 0);
  CHECK(pos.total_upper == 3);
  CHECK(pos.incr_upper == 3);
  CHECK(pos.incr_lower == 0);
  const auto neg = transition_bounds(signs("-++", 1), 3);
  CHECK(neg.total_lower == 5);
  CHECK(neg.total_upper == 8);
  CHECK(neg.incr_upper == 4);
  CHECK(neg.incr_lower == 1);
}

TEST_CASE("reduced-space counts match brute force and respect the bounds") {
  for (int p = 1; p <= 4; ++p) {
    for (const auto& f : enumerate_all(p)) {
      for (unsigned neg = 0; neg < (1u << p); ++neg) {
        const auto sg = sign_pattern(p, neg);
        for (int self = 0; self <= p; ++self) {
          const RegulatorContext ctx(sg, self ? std::optional<int>(self) : std::nullopt);
          const int n = minimal_dimension(ctx);
          for (int extra = 0; extra <= 1; ++extra) {
            auto brute = brute_counts(f, ctx, n);
            brute.increasing <<= extra;
            brute.decreasing <<= extra;
            REQUIRE(count_component_transitions(f, ctx, n + extra) == brute);
          }
          const auto report = check_bounds(f, ctx, n);
          REQUIRE(report.within_bounds());
          if (!self) {
            // Total is constant; T+ is the true-state count over the regulators.
            const auto truth = brute_true(f, sg).size();
            REQUIRE(report.observed->total() == (std::uint64_t{1} << p));
            REQUIRE(report.observed->increasing == truth);
            REQUIRE(report.observed->decreasing == (std::uint64_t{1} << p) - truth);
          }
        }
      }
    }
  }
}

TEST_CASE("f star") {
  const auto ctx = signs("++-", 1);
  CHECK(f_star(ctx) == S({{1, 2}, {1, 3}}, 3));
  CHECK_THROWS_AS(f_star(signs("++")), Error);
  CHECK_THROWS_AS(f_star(signs("+", 1)), Error);
  for (int n = 2; n <= 5; ++n) {
    for (unsigned neg = 0; neg < (1u << n); ++neg) {
      const RegulatorContext c(sign_pattern(n, neg), 1);
      const auto counts = count_component_transitions(f_star(c), c, n);
      const std::uint64_t half = std::uint64_t{1} << (n - 1);
      if (neg & 1u) {
        CHECK(counts.decreasing == half);
        CHECK(counts.increasing == half - 1);
      } else {
        CHECK(counts.total() == 1);
        CHECK(counts.decreasing == 1);
      }
    }
  }
}

TEST_CASE("path traces") {
  const auto ctx = signs("++++");
  const auto path = random_path(4, 11);
  const auto rows = path_trace(ctx, 5, path);
  REQUIRE(rows.size() == path.size());
  CHECK(rows.front().counts.increasing == 1);
  CHECK(rows.back().counts.increasing == 15);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].counts.total() == 16);
    CHECK(rows[i].counts.increasing >= rows[i - 1].counts.increasing);
    CHECK(rows[i].counts.decreasing <= rows[i - 1].counts.decreasing);
  }
  try {
    path_trace(ctx, 5, {inf_shape(4), sup_shape(4)});
    FAIL("expected NotAChain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAChain);
  }
}
