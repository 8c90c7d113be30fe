#include "monoreg/pbn.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "monoreg/error.hpp"
#include "monoreg/model_io.hpp"
#include "monoreg/random.hpp"

namespace monoreg {

FunctionEnsemble::FunctionEnsemble(int owner, RegulatorContext context, std::vector<EnsembleEntry> entries)
    : owner_(owner), context_(std::move(context)), entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorCode::InvalidProbability, "an ensemble needs at least one function");
  double sum = 0;
  double best = 0;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    if (!(e.probability > 0) || !std::isfinite(e.probability)) {
      throw Error(ErrorCode::InvalidProbability, "weight " + std::to_string(e.probability) + " is not positive");
    }
    if (e.shape.arity() != context_.arity()) {
      throw Error(ErrorCode::ArityMismatch, e.shape.to_string() + " does not match the component's regulators");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (entries_[j].shape == e.shape) throw Error(ErrorCode::InvalidArgument, e.shape.to_string() + " listed twice");
    }
    sum += e.probability;
    cumulative_.push_back(sum);
    best = std::max(best, e.probability);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidProbability, "weights sum to " + std::to_string(sum) + ", not 1");
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].probability == best) dominant_.push_back(k);
    auto& table = truth_.emplace_back(std::size_t{1} << context_.arity());
    for (Mask x = 0; x < table.size(); ++x) table[x] = evaluate(entries_[k].shape, context_, x);
  }
}

FunctionEnsemble FunctionEnsemble::singleton(int owner, RegulatorContext context, FunctionShape shape) {
  return FunctionEnsemble(owner, std::move(context), {{std::move(shape), 1.0}});
}

std::size_t FunctionEnsemble::pick(double u) const {
  const double scaled = u * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), scaled);
  return std::min<std::size_t>(it - cumulative_.begin(), entries_.size() - 1);
}

ProbabilisticNetwork::ProbabilisticNetwork(BooleanNetwork base) : base_(std::move(base)) {
  for (int i = 0; i < base_.size(); ++i) {
    const Component& c = base_.component(i);
    if (c.is_input()) {
      ensembles_.emplace_back();
    } else {
      ensembles_.emplace_back(FunctionEnsemble::singleton(i, *c.context, *c.shape));
    }
  }
}

void ProbabilisticNetwork::set_ensemble(FunctionEnsemble ensemble) {
  const int i = ensemble.owner();
  if (i < 0 || i >= size()) throw Error(ErrorCode::IndexOutOfRange, "component " + std::to_string(i));
  const Component& c = base_.component(i);
  if (c.is_input()) throw Error(ErrorCode::InvalidArgument, c.name + " is an input");
  if (!(ensemble.context() == *c.context)) {
    throw Error(ErrorCode::ArityMismatch, "ensemble context differs from " + c.name + "'s regulators");
  }
  ensembles_[i] = std::move(ensemble);
}

double ProbabilisticNetwork::realization_count() const {
  double n = 1;
  for (const auto& e : ensembles_) {
    if (e) n *= static_cast<double>(e->size());
  }
  return n;
}

bool ProbabilisticNetwork::deterministic() const {
  return std::all_of(ensembles_.begin(), ensembles_.end(), [](const auto& e) { return !e || e->size() == 1; });
}

FunctionEnsemble neighbor_ensemble(const BooleanNetwork& bn, int i, NeighborMode mode, double ref_prob) {
  if (!(ref_prob > 0 && ref_prob < 1)) {
    throw Error(ErrorCode::InvalidProbability, "reference weight must lie in (0, 1)");
  }
  const Component& c = bn.component(i);
  if (c.is_input()) throw Error(ErrorCode::InvalidArgument, c.name + " is an input");
  const FunctionShape& ref = *c.shape;
  std::vector<FunctionShape> others;
  for (const auto& s : parents(ref)) others.push_back(s.target);
  for (const auto& s : children(ref)) others.push_back(s.target);
  if (mode == NeighborMode::WithSiblings) {
    for (auto& s : siblings(ref, SiblingScope::SharedParentOrChild)) others.push_back(std::move(s));
  }
  if (others.empty()) return FunctionEnsemble::singleton(i, *c.context, ref);
  std::vector<EnsembleEntry> entries{{ref, ref_prob}};
  const double share = (1.0 - ref_prob) / static_cast<double>(others.size());
  for (auto& s : others) entries.push_back({std::move(s), share});
  return FunctionEnsemble(i, *c.context, std::move(entries));
}

std::string_view to_string(Phenotype p) {
  switch (p) {
    case Phenotype::Th0: return "Th0";
    case Phenotype::Th1: return "Th1";
    case Phenotype::Th2: return "Th2";
    case Phenotype::Other: return "Other";
  }
  return "?";
}

Phenotype classify_phenotype(StateBits state, const BooleanNetwork& bn) {
  const auto tbet = bn.find("Tbet");
  const auto gata3 = bn.find("GATA3");
  if (!tbet || !gata3) throw Error(ErrorCode::MissingMarker, "phenotypes need Tbet and GATA3 components");
  const bool t = (state >> *tbet) & 1u;
  const bool g = (state >> *gata3) & 1u;
  if (t && g) return Phenotype::Other;
  if (t) return Phenotype::Th1;
  if (g) return Phenotype::Th2;
  return Phenotype::Th0;
}

std::string_view to_string(Termination t) {
  return t == Termination::ReferenceStable ? "reference-stable" : "absorbing-all";
}

double SimulationResult::proportion(Phenotype p) const {
  if (runs.empty()) return 0;
  const auto it = counts.find(p);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(runs.size());
}

namespace {

bool settled(const ProbabilisticNetwork& net, StateBits s, Termination termination) {
  const BooleanNetwork& bn = net.base();
  for (int i = 0; i < bn.size(); ++i) {
    const bool value = (s >> i) & 1u;
    const auto& ens = net.ensemble(i);
    if (!ens) {
      if (bn.component(i).input_value != value) return false;
      continue;
    }
    const Mask x = bn.local_input(i, s);
    if (termination == Termination::ReferenceStable) {
      for (std::size_t k : ens->dominant()) {
        if (ens->value(k, x) != value) return false;
      }
    } else {
      for (std::size_t k = 0; k < ens->size(); ++k) {
        if (ens->value(k, x) != value) return false;
      }
    }
  }
  return true;
}

}  // namespace

RunOutcome simulate_run(const ProbabilisticNetwork& net, StateBits initial, int max_steps, std::uint64_t run_seed,
                        Termination termination) {
  const BooleanNetwork& bn = net.base();
  Rng rng(run_seed);
  RunOutcome out;
  out.seed = run_seed;
  StateBits s = initial;
  while (!(out.settled = settled(net, s, termination)) && out.steps < max_steps) {
    StateBits next = 0;
    for (int i = 0; i < bn.size(); ++i) {
      const auto& ens = net.ensemble(i);
      bool v;
      if (!ens) {
        v = bn.component(i).input_value;
      } else {
        const std::size_t k = ens->size() == 1 ? 0 : ens->pick(rng.unit());
        v = ens->value(k, bn.local_input(i, s));
      }
      if (v) next |= StateBits{1} << i;
    }
    s = next;
    ++out.steps;
  }
  out.final_state = s;
  out.phenotype = classify_phenotype(s, bn);
  return out;
}

SimulationResult simulate(const ProbabilisticNetwork& net, StateBits initial, const SimulationConfig& config) {
  if (config.runs < 1 || config.max_steps < 1) {
    throw Error(ErrorCode::InvalidArgument, "runs and max_steps must be at least 1");
  }
  if (net.size() > kMaxComponents) throw Error(ErrorCode::StateSpaceTooLarge, "too many components");
  classify_phenotype(initial, net.base());  // fail early on missing markers

  SimulationResult result;
  result.runs.resize(config.runs);
  int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, config.runs);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < config.runs; r = next++) {
      result.runs[r] = simulate_run(net, initial, config.max_steps, split_seed(config.seed, r), config.termination);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& r : result.runs) ++result.counts[r.phenotype];
  return result;
}

std::string_view th_model_text() {
  // IFNg has five regulators; STAT4 enters through the last clause.
  return R"(targets, factors
GATA3, (!Tbet & STAT6) | (!Tbet & GATA3)
IFNbR, IFNb
IFNg, (!STAT3 & NFAT) | (!STAT3 & Tbet) | (!STAT3 & IRAK) | (!STAT3 & STAT4)
IFNgR, IFNg
IL10, GATA3
IL10R, IL10
IL12R, !STAT6 & IL12
IL18R, !STAT6 & IL18
IL4, GATA3 & !STAT1
IL4R, IL4 & !SOCS1
IRAK, IL18R
JAK1, IFNgR & !SOCS1
NFAT, TCR
SOCS1, STAT1 | Tbet
STAT1, JAK1 | IFNbR
STAT3, IL10R
STAT4, !GATA3 & IL12R
STAT6, IL4R
Tbet, (!GATA3 & STAT1) | (!GATA3 & Tbet)
IFNb, false
IL12, false
IL18, false
TCR, false
)";
}

BooleanNetwork th_model() { return parse_model(th_model_text()); }

StateBits th_initial_state(const BooleanNetwork& bn) { return StateBits{1} << bn.index_of("IFNg"); }

std::vector<NeighborRow> neighbor_table(const BooleanNetwork& bn) {
  std::vector<NeighborRow> rows;
  for (int i = 0; i < bn.size(); ++i) {
    const Component& c = bn.component(i);
    NeighborRow row;
    row.component = c.name;
    row.regulators = static_cast<int>(c.regulators.size());
    if (c.is_input()) {
      row.function_count = 1;
    } else {
      row.function_count = count_consistent(row.regulators);
      const HasseSlice slice = hasse_slice(*c.shape, SiblingScope::SharedParentOrChild);
      for (const auto& p : slice.parents) row.parents.push_back(p.target);
      for (const auto& ch : slice.children) row.children.push_back(ch.target);
      row.siblings = slice.siblings;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<ExperimentSpec>& experiments() {
  static const std::vector<ExperimentSpec> specs{
      {'A', "every component: reference and its parents/children", {}, NeighborMode::ParentsChildren},
      {'B', "every component: reference, parents/children and siblings", {}, NeighborMode::WithSiblings},
      {'C', "GATA3: reference and its parents/children", {"GATA3"}, NeighborMode::ParentsChildren},
      {'D', "Tbet: reference and its parents/children", {"Tbet"}, NeighborMode::ParentsChildren},
      {'E', "IL4: reference and its parent", {"IL4"}, NeighborMode::ParentsChildren},
      {'F', "IL4R: reference and its parent", {"IL4R"}, NeighborMode::ParentsChildren},
  };
  return specs;
}

const ExperimentSpec& experiment(char id) {
  for (const auto& e : experiments()) {
    if (e.id == std::toupper(static_cast<unsigned char>(id))) return e;
  }
  throw Error(ErrorCode::InvalidArgument, std::string("unknown experiment '") + id + "'");
}

ProbabilisticNetwork build_experiment(const BooleanNetwork& bn, const ExperimentSpec& spec) {
  ProbabilisticNetwork net(bn);
  if (spec.components.empty()) {
    for (int i = 0; i < bn.size(); ++i) {
      if (!bn.component(i).is_input()) net.set_ensemble(neighbor_ensemble(bn, i, spec.mode, spec.ref_prob));
    }
  } else {
    for (const auto& name : spec.components) {
      net.set_ensemble(neighbor_ensemble(bn, bn.index_of(name), spec.mode, spec.ref_prob));
    }
  }
  return net;
}

}  // namespace monoreg
