// monoreg: command-line front end for the consistent-function library.
//
// Exit codes: 0 success, 1 property violation, 2 parse error, 3 validation
// or limit error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "monoreg/dynamics.hpp"
#include "monoreg/error.hpp"
#include "monoreg/model_io.hpp"
#include "monoreg/neighborhood.hpp"
#include "monoreg/pbn.hpp"
#include "monoreg/verify.hpp"

using namespace monoreg;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kMaxWalkArity = 8;

struct Options {
  std::string output;

  std::string expression;
  std::string shape;
  int shape_arity = 0;
  bool normalize = false;
  bool wide_siblings = false;
  std::string format = "text";

  int arity = 0;
  bool count_only = false;

  std::string autoreg = "none";
  std::uint64_t seed = 0;

  std::string model;
  std::string mode = "async";
  bool dot = false;
  int limit = kDefaultStateSpaceLimit;

  std::string range;
  bool inject_fault = false;

  bool th_preset = false;
  std::string experiment_id;
  int runs = 1000;
  int max_steps = 1000;
  std::string termination = "reference-stable";
  int threads = 0;
  std::string initial;
  std::string ledger;
};

std::string fmt_percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * x);
  return buf;
}

int cmd_neighbors(const Options& o, std::ostream& out) {
  const auto fn = [&]() -> ParsedFunction {
    if (!o.expression.empty()) {
      return parse_expression(o.expression, o.normalize ? ParseMode::Normalize : ParseMode::Strict);
    }
    if (o.shape.empty()) throw Error(ErrorCode::InvalidArgument, "give -e EXPR or --shape SHAPE");
    if (o.shape_arity < 1) throw Error(ErrorCode::InvalidArgument, "--shape needs -p ARITY");
    return {parse_shape(o.shape, o.shape_arity), RegulatorContext::all_positive(o.shape_arity), {}};
  }();
  const FunctionShape& center = fn.shape;
  const RegulatorContext& ctx = fn.context;
  const std::vector<std::string>& names = fn.names;
  const auto slice =
      hasse_slice(center, o.wide_siblings ? SiblingScope::SharedParentOrChild : SiblingScope::SharedParent);
  if (o.format == "dot") {
    out << export_dot(slice, &ctx, names.empty() ? nullptr : &names);
    return 0;
  }
  const auto expr = [&](const FunctionShape& s) { return to_expression(s, ctx, names); };
  out << "function: " << expr(center) << "  " << center.to_string() << "\n";
  out << "parents (" << slice.parents.size() << "):\n";
  for (const auto& st : slice.parents) {
    out << "  " << to_string(st.kind) << " +" << st.delta_true_states << "  " << expr(st.target) << "  "
        << st.target.to_string() << "\n";
  }
  out << "children (" << slice.children.size() << "):\n";
  for (const auto& st : slice.children) {
    out << "  " << to_string(st.relating_rule) << " -" << st.delta_true_states << "  " << expr(st.target) << "  "
        << st.target.to_string() << "\n";
  }
  out << "siblings (" << slice.siblings.size() << "):\n";
  for (const auto& s : slice.siblings) out << "  " << expr(s) << "  " << s.to_string() << "\n";
  return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  if (o.count_only) {
    out << to_string(count_consistent(o.arity)) << "\n";
    return 0;
  }
  for_each_shape(o.arity, [&](const FunctionShape& s) { out << s.to_string() << "\n"; });
  return 0;
}

int cmd_walk(const Options& o, std::ostream& out) {
  if (o.arity < 1 || o.arity > kMaxWalkArity) {
    throw Error(ErrorCode::ArityTooLarge, "walk needs 1 <= p <= " + std::to_string(kMaxWalkArity));
  }
  const AutoregCase autoreg = o.autoreg == "pos"   ? AutoregCase::Positive
                              : o.autoreg == "neg" ? AutoregCase::Negative
                                                   : AutoregCase::NotAutoregulated;
  std::cerr << "seed: " << o.seed << "\n";
  const auto rows = walk_trace(o.arity, autoreg, o.seed);
  out << "step,shape,level,increasing,decreasing,total\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << i << ",\"" << r.shape.to_string() << "\",\"" << r.level.to_string() << "\"," << r.counts.increasing
        << "," << r.counts.decreasing << "," << r.counts.total() << "\n";
  }
  return 0;
}

int cmd_stg(const Options& o, std::ostream& out) {
  const BooleanNetwork bn = parse_model(read_file(o.model));
  const StateGraph graph = o.mode == "sync" ? stg_sync(bn, o.limit) : stg_async(bn, o.limit);
  if (o.dot || o.format == "dot") {
    out << export_dot(graph, &bn);
    return 0;
  }
  out << "states: " << graph.state_count() << ", transitions: " << graph.edge_count() << "\n";
  std::vector<std::string> stable;
  for (auto s : stable_states(graph).members()) stable.push_back(bn.format_state(s));
  std::sort(stable.begin(), stable.end());
  out << "stable:";
  for (const auto& s : stable) out << " " << s;
  out << "\n";
  const auto found = attractors(graph);
  out << "attractors (" << found.size() << "):\n";
  for (const auto& a : found) {
    out << "  " << (a.size() == 1 ? "fixed" : "cycle " + std::to_string(a.size())) << ":";
    for (auto s : a) out << " " << bn.format_state(s);
    out << "\n";
  }
  return 0;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int p = std::stoi(text);
      return {p, p};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "range must look like 3 or 1..4, got '" + text + "'");
  }
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto [lo, hi] = parse_range(o.range);
  if (lo < 1 || hi > kHasseOracleLimit || lo > hi) {
    throw Error(ErrorCode::ArityTooLarge, "verify needs 1 <= p <= " + std::to_string(kHasseOracleLimit));
  }
  VerifyOptions options;
  if (o.inject_fault) options.parents_fn = parents_without_rule3;
  bool ok = true;
  for (int p = lo; p <= hi; ++p) {
    const auto report = verify_arity(p, options);
    out << "p=" << p << ": " << report.nodes << " nodes / " << report.edges << " edges checked\n";
    for (const auto& s : report.suites) {
      out << "  " << (s.passed() ? "PASS" : "FAIL") << "  " << s.name << " (" << s.checks << " checks";
      if (!s.passed()) out << ", " << s.failures << " violations";
      out << ")\n";
      for (const auto& c : s.counterexamples) out << "      counterexample: " << c << "\n";
    }
    ok = ok && report.passed();
  }
  out << (ok ? "all suites pass" : "property violation") << "\n";
  return ok ? 0 : kExitViolation;
}

int cmd_pbn(const Options& o, std::ostream& out) {
  if (o.th_preset == !o.model.empty()) throw Error(ErrorCode::InvalidArgument, "give a model file or --th-preset");
  std::optional<ProbabilisticNetwork> net;
  if (o.th_preset) {
    net.emplace(th_model());
  } else {
    const auto doc = parse_model_document(read_file(o.model));
    net.emplace(build_probabilistic(doc));
  }
  if (!o.experiment_id.empty()) {
    if (o.experiment_id.size() != 1) throw Error(ErrorCode::InvalidArgument, "experiment must be one of A..F");
    net.emplace(build_experiment(net->base(), experiment(o.experiment_id[0])));
  }
  const BooleanNetwork& bn = net->base();
  StateBits initial = 0;
  if (!o.initial.empty()) {
    initial = bn.parse_state(o.initial);
  } else if (bn.find("IFNg")) {
    initial = th_initial_state(bn);
  }

  SimulationConfig config;
  config.runs = o.runs;
  config.max_steps = o.max_steps;
  config.seed = o.seed;
  config.threads = o.threads;
  config.termination = o.termination == "absorbing-all" ? Termination::AbsorbingAll : Termination::ReferenceStable;
  const auto result = simulate(*net, initial, config);
  std::cerr << "seed: " << o.seed << "\n";

  if (!o.ledger.empty()) {
    std::ofstream ledger(o.ledger);
    if (!ledger) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.ledger + "'");
    ledger << ledger_csv(result, bn);
  }
  if (o.format == "json") {
    out << aggregate_json(result);
  } else if (o.format == "csv") {
    out << "phenotype,runs,proportion\n";
    for (Phenotype p : kPhenotypes) {
      const auto it = result.counts.find(p);
      out << to_string(p) << "," << (it == result.counts.end() ? 0 : it->second) << "," << result.proportion(p)
          << "\n";
    }
  } else {
    int unsettled = 0;
    for (const auto& r : result.runs) unsettled += !r.settled;
    out << "runs: " << result.runs.size() << "  seed: " << o.seed << "  termination: " << to_string(config.termination)
        << "\n";
    for (Phenotype p : kPhenotypes) out << to_string(p) << "\t" << fmt_percent(result.proportion(p)) << "\n";
    if (unsettled) out << "unsettled after " << o.max_steps << " steps: " << unsettled << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistent Boolean regulatory functions: neighbours, dynamics and PBN simulation"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-o,--output", o.output, "Write output to PATH instead of stdout");

  auto* neighbors = app.add_subcommand("neighbors", "Parents, children and siblings of a function");
  neighbors->add_option("-e,--expr", o.expression, "Signed DNF such as \"s1 | (s2 & !s3)\"");
  neighbors->add_option("--shape", o.shape, "Antichain cover such as {{1},{2,3}}");
  neighbors->add_option("-p,--arity", o.shape_arity, "Arity for --shape");
  neighbors->add_flag("--normalize", o.normalize, "Rewrite non-DNF input before parsing");
  neighbors->add_flag("--wide-siblings", o.wide_siblings, "Also count co-parents of children as siblings");
  neighbors->add_option("--format", o.format)->check(CLI::IsMember({"text", "dot"}));

  auto* enumerate = app.add_subcommand("enumerate", "List every consistent function shape of arity P");
  enumerate->add_option("P", o.arity)->required();
  enumerate->add_flag("--count-only", o.count_only, "Print N(P) only (P <= 8)");

  auto* walk = app.add_subcommand("walk", "Transition counts along a random ascending chain (CSV)");
  walk->add_option("P", o.arity)->required();
  walk->add_option("--autoreg", o.autoreg)->check(CLI::IsMember({"none", "pos", "neg"}));
  walk->add_option("--seed", o.seed);

  auto* stg = app.add_subcommand("stg", "State transition graph of a model");
  stg->add_option("MODEL", o.model)->required();
  stg->add_option("--mode", o.mode)->check(CLI::IsMember({"async", "sync"}));
  stg->add_flag("--dot", o.dot, "Emit Graphviz DOT");
  stg->add_option("--format", o.format)->check(CLI::IsMember({"text", "dot"}));
  stg->add_option("--max-components", o.limit, "State space limit");

  auto* verify = app.add_subcommand("verify", "Check neighbourhood rules and transition properties");
  verify->add_option("RANGE", o.range, "Arity or range such as 1..4")->required();
  verify->add_flag("--inject-fault", o.inject_fault)->group("");

  auto* pbn = app.add_subcommand("pbn", "Simulate a probabilistic Boolean network");
  pbn->add_option("MODEL", o.model);
  pbn->add_flag("--th-preset", o.th_preset, "Use the built-in T helper model");
  pbn->add_option("--experiment", o.experiment_id, "Neighbour ensemble experiment A..F");
  pbn->add_option("--runs", o.runs)->check(CLI::PositiveNumber);
  pbn->add_option("--seed", o.seed);
  pbn->add_option("--max-steps", o.max_steps)->check(CLI::PositiveNumber);
  pbn->add_option("--termination", o.termination)->check(CLI::IsMember({"reference-stable", "absorbing-all"}));
  pbn->add_option("--threads", o.threads)->check(CLI::NonNegativeNumber);
  pbn->add_option("--initial", o.initial, "Initial state bits, first component leftmost");
  pbn->add_option("--ledger", o.ledger, "Write per-run CSV to PATH");
  pbn->add_option("--format", o.format)->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  std::ofstream file;
  std::ostringstream buffer;
  try {
    int code = 0;
    if (neighbors->parsed()) code = cmd_neighbors(o, buffer);
    if (enumerate->parsed()) code = cmd_enumerate(o, buffer);
    if (walk->parsed()) code = cmd_walk(o, buffer);
    if (stg->parsed()) code = cmd_stg(o, buffer);
    if (verify->parsed()) code = cmd_verify(o, buffer);
    if (pbn->parsed()) code = cmd_pbn(o, buffer);
    if (o.output.empty()) {
      std::cout << buffer.str();
    } else {
      file.open(o.output);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.output + "'");
      file << buffer.str();
    }
    return code;
  } catch (const Error& e) {
    std::cout << buffer.str();
    std::cerr << "error: " << e.what() << "\n";
    return is_parse_error(e.code()) ? kExitParse : kExitValidation;
  }
}
