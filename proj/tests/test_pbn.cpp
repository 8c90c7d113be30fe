#include <doctest.h>

#include "monoreg/error.hpp"
#include "monoreg/model_io.hpp"
#include "monoreg/pbn.hpp"
#include "support.hpp"

using namespace monoreg;
using namespace testing_support;

namespace {

FunctionShape expr_shape(const BooleanNetwork& bn, int i, const std::string& text) {
  // Parse a neighbour written over the component's regulators.
  std::string model = "targets, factors\n";
  for (int j = 0; j < bn.size(); ++j) {
    model += bn.component(j).name + ", " + (j == i ? text : function_text(bn, j)) + "\n";
  }
  return *parse_model(model).component(i).shape;
}

}  // namespace

TEST_CASE("Th model structure") {
  const auto bn = th_model();
  CHECK(bn.size() == 23);
  CHECK(function_text(bn, bn.index_of("GATA3")) == "(GATA3 & !Tbet) | (STAT6 & !Tbet)");
  CHECK(*bn.component(bn.index_of("GATA3")).shape ==
        expr_shape(bn, bn.index_of("GATA3"), "(!Tbet & STAT6) | (!Tbet & GATA3)"));
  CHECK(function_text(bn, bn.index_of("IL12R")) == "!STAT6 & IL12");
  for (const char* input : {"IFNb", "IL12", "IL18", "TCR"}) {
    CHECK(bn.component(bn.index_of(input)).is_input());
  }
  CHECK(bn.component(bn.index_of("IFNg")).regulators.size() == 5);
}

TEST_CASE("ensembles") {
  const auto bn = th_model();
  const auto gata3 = neighbor_ensemble(bn, bn.index_of("GATA3"), NeighborMode::ParentsChildren, 0.8);
  REQUIRE(gata3.size() == 3);
  CHECK(gata3.entries()[0].probability == doctest::Approx(0.8));
  CHECK(gata3.entries()[1].probability == doctest::Approx(0.1));
  CHECK(gata3.entries()[2].probability == doctest::Approx(0.1));
  const auto il4 = neighbor_ensemble(bn, bn.index_of("IL4"), NeighborMode::ParentsChildren, 0.8);
  REQUIRE(il4.size() == 2);
  CHECK(il4.entries()[1].probability == doctest::Approx(0.2));
  CHECK(il4.entries()[1].shape == expr_shape(bn, bn.index_of("IL4"), "GATA3 | !STAT1"));
  CHECK(neighbor_ensemble(bn, bn.index_of("STAT6"), NeighborMode::WithSiblings, 0.8).size() == 1);
  CHECK(neighbor_ensemble(bn, bn.index_of("Tbet"), NeighborMode::WithSiblings, 0.8).size() == 5);
  CHECK_THROWS_AS(neighbor_ensemble(bn, 0, NeighborMode::ParentsChildren, 1.0), Error);

  // Weights renormalize and each entry is consistent with the owner context.
  for (char id : {'A', 'B'}) {
    const auto net = build_experiment(bn, experiment(id));
    for (int i = 0; i < bn.size(); ++i) {
      const auto& ens = net.ensemble(i);
      if (!ens) continue;
      double sum = 0;
      for (const auto& e : ens->entries()) {
        sum += e.probability;
        std::vector<bool> table(std::size_t{1} << e.shape.arity());
        for (Mask x = 0; x < table.size(); ++x) table[x] = evaluate(e.shape, ens->context(), x);
        CHECK(is_consistent(table, ens->context()).consistent);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("ensemble validation") {
  const auto ctx = signs("++");
  CHECK_THROWS_AS(FunctionEnsemble(0, ctx, {{sup_shape(2), 0.5}}), Error);
  CHECK_THROWS_AS(FunctionEnsemble(0, ctx, {{sup_shape(2), 0.5}, {sup_shape(2), 0.5}}), Error);
  CHECK_THROWS_AS(FunctionEnsemble(0, ctx, {{sup_shape(2), 1.5}, {inf_shape(2), -0.5}}), Error);
  const FunctionEnsemble e(0, ctx, {{sup_shape(2), 0.25}, {inf_shape(2), 0.75}});
  CHECK(e.pick(0.0) == 0);
  CHECK(e.pick(0.2499) == 0);
  CHECK(e.pick(0.25) == 1);
  CHECK(e.pick(0.9999) == 1);
  CHECK(e.dominant() == std::vector<std::size_t>{1});
}

TEST_CASE("phenotypes") {
  const auto bn = th_model();
  const StateBits t = StateBits{1} << bn.index_of("Tbet");
  const StateBits g = StateBits{1} << bn.index_of("GATA3");
  CHECK(classify_phenotype(t, bn) == Phenotype::Th1);
  CHECK(classify_phenotype(g, bn) == Phenotype::Th2);
  CHECK(classify_phenotype(0, bn) == Phenotype::Th0);
  CHECK(classify_phenotype(t | g, bn) == Phenotype::Other);
  try {
    classify_phenotype(0, parse_model("targets, factors\na, !b\nb, !a\n"));
    FAIL("expected MissingMarker");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingMarker);
  }
}

TEST_CASE("deterministic Th1 baseline") {
  const auto bn = th_model();
  const ProbabilisticNetwork net(bn);
  CHECK(net.deterministic());
  const auto r = simulate_run(net, th_initial_state(bn), 1000, 0);
  CHECK(r.settled);
  CHECK(r.phenotype == Phenotype::Th1);
  for (const char* on : {"Tbet", "SOCS1", "IFNg", "IFNgR"}) CHECK(((r.final_state >> bn.index_of(on)) & 1u) == 1u);
  CHECK(stg_sync(bn).is_stable(r.final_state));
}

TEST_CASE("all-singleton runs follow the synchronous graph") {
  // Small network so the whole sync graph is cheap.
  const auto bn = parse_model("targets, factors\nTbet, !GATA3 & x\nGATA3, !Tbet\nx, !x\n");
  const ProbabilisticNetwork net(bn);
  const auto g = stg_sync(bn);
  for (StateBits s0 = 0; s0 < 8; ++s0) {
    StateBits s = s0;
    for (int steps = 1; steps <= 6; ++steps) {
      const auto r = simulate_run(net, s0, steps, 99);
      if (g.is_stable(s)) {
        CHECK(r.final_state == s);
        break;
      }
      s = g.successors(s)[0];
      CHECK(r.final_state == s);
    }
  }
}

TEST_CASE("seeded simulations are reproducible across thread counts") {
  const auto bn = th_model();
  const auto net = build_experiment(bn, experiment('D'));
  SimulationConfig a;
  a.runs = 200;
  a.seed = 5;
  a.threads = 1;
  SimulationConfig b = a;
  b.threads = 4;
  const auto ra = simulate(net, th_initial_state(bn), a);
  const auto rb = simulate(net, th_initial_state(bn), b);
  REQUIRE(ra.runs.size() == rb.runs.size());
  for (std::size_t i = 0; i < ra.runs.size(); ++i) {
    CHECK(ra.runs[i].final_state == rb.runs[i].final_state);
    CHECK(ra.runs[i].steps == rb.runs[i].steps);
  }
  CHECK(ra.counts == rb.counts);
  const auto csv = ledger_csv(ra, bn);
  CHECK(csv.rfind("seed,steps,final_state,phenotype\n", 0) == 0);
  CHECK(aggregate_json(ra).find("\"Th1\"") != std::string::npos);
}

TEST_CASE("neighbour table") {
  const auto bn = th_model();
  const auto rows = neighbor_table(bn);
  auto row = [&](const char* name) { return rows[bn.index_of(name)]; };
  CHECK(row("Tbet").parents.size() + row("Tbet").children.size() == 2);
  CHECK(row("Tbet").siblings.size() == 2);
  CHECK(row("IL4").parents.size() == 1);
  CHECK(row("IL4").children.empty());
  CHECK(row("IFNg").function_count == 6894);
  CHECK(row("IFNg").siblings.size() == 10);
  CHECK(row("STAT6").parents.empty());
}
