#include <doctest.h>

#include "monoreg/dynamics.hpp"
#include "monoreg/error.hpp"
#include "monoreg/verify.hpp"

using namespace monoreg;

TEST_CASE("property suites pass up to p=4") {
  for (int p = 1; p <= 4; ++p) {
    const auto r = verify_arity(p);
    CAPTURE(p);
    CHECK(r.passed());
    for (const auto& s : r.suites) {
      CAPTURE(s.name);
      CHECK(s.counterexamples.empty());
    }
  }
  const auto r3 = verify_arity(3);
  CHECK(r3.nodes == 9);
  CHECK(r3.edges == 12);
}

TEST_CASE("a broken rule is caught with a counterexample") {
  VerifyOptions o;
  o.parents_fn = parents_without_rule3;
  o.max_counterexamples = 2;
  const auto r = verify_arity(3, o);
  CHECK_FALSE(r.passed());
  const auto& oracle = r.suites.front();
  CHECK(oracle.name == "oracle");
  CHECK(oracle.failures > 0);
  CHECK(oracle.counterexamples.size() == 2);
  // p=1 has no rule-3 edge to lose.
  CHECK(verify_arity(1, o).passed());
}

TEST_CASE("verification arity limits") {
  CHECK_THROWS_AS(verify_arity(0), Error);
  CHECK_THROWS_AS(verify_arity(kHasseOracleLimit + 1), Error);
}

TEST_CASE("walk traces") {
  for (auto kind : {AutoregCase::NotAutoregulated, AutoregCase::Positive, AutoregCase::Negative}) {
    const auto ctx = walk_context(4, kind);
    CHECK(autoreg_case(ctx) == kind);
    CHECK(minimal_dimension(ctx) == 5);
    const auto a = walk_trace(4, kind, 7);
    const auto b = walk_trace(4, kind, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].shape == b[i].shape);
    for (std::size_t i = 1; i < a.size(); ++i) {
      CHECK(a[i].counts.increasing >= a[i - 1].counts.increasing);
      CHECK(a[i].counts.decreasing <= a[i - 1].counts.decreasing);
    }
  }
  CHECK(walk_trace(1, AutoregCase::NotAutoregulated, 0).size() == 1);
}
