#pragma once

// Probabilistic Boolean networks: each component draws one function from a
// weighted ensemble at every synchronous step.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoreg/dynamics.hpp"
#include "monoreg/neighborhood.hpp"

namespace monoreg {

struct EnsembleEntry {
  FunctionShape shape;
  double probability;
};

class FunctionEnsemble {
 public:
  /// Throws InvalidProbability unless every weight is positive and they sum
  /// to 1 within 1e-9.
  FunctionEnsemble(int owner, RegulatorContext context, std::vector<EnsembleEntry> entries);
  static FunctionEnsemble singleton(int owner, RegulatorContext context, FunctionShape shape);

  int owner() const { return owner_; }
  const RegulatorContext& context() const { return context_; }
  const std::vector<EnsembleEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  /// Entries carrying the largest weight.
  const std::vector<std::size_t>& dominant() const { return dominant_; }

  /// Entry index for a uniform draw u in [0, 1).
  std::size_t pick(double u) const;
  bool value(std::size_t entry, Mask input) const { return truth_[entry][input]; }

 private:
  int owner_;
  RegulatorContext context_;
  std::vector<EnsembleEntry> entries_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> dominant_;
  std::vector<std::vector<bool>> truth_;
};

class ProbabilisticNetwork {
 public:
  /// Every regulated component starts with its own function as a singleton.
  explicit ProbabilisticNetwork(BooleanNetwork base);

  const BooleanNetwork& base() const { return base_; }
  int size() const { return base_.size(); }
  /// Absent for input components.
  const std::optional<FunctionEnsemble>& ensemble(int i) const { return ensembles_.at(i); }
  void set_ensemble(FunctionEnsemble ensemble);

  /// Product of the ensemble sizes.
  double realization_count() const;
  bool deterministic() const;

 private:
  BooleanNetwork base_;
  std::vector<std::optional<FunctionEnsemble>> ensembles_;
};

enum class NeighborMode : std::uint8_t { ParentsChildren, WithSiblings };

/// Reference function with `ref_prob`, the remaining weight split evenly
/// over its Hasse neighbours.
FunctionEnsemble neighbor_ensemble(const BooleanNetwork& bn, int i, NeighborMode mode, double ref_prob);

enum class Phenotype : std::uint8_t { Th0, Th1, Th2, Other };
inline constexpr std::array<Phenotype, 4> kPhenotypes{Phenotype::Th0, Phenotype::Th1, Phenotype::Th2,
                                                      Phenotype::Other};
std::string_view to_string(Phenotype p);

/// Reads the Tbet and GATA3 markers; throws MissingMarker without them.
Phenotype classify_phenotype(StateBits state, const BooleanNetwork& bn);

enum class Termination : std::uint8_t {
  /// Stop once the state is fixed under the highest-weight functions.
  ReferenceStable,
  /// Stop only once the state is fixed under every function in every ensemble.
  AbsorbingAll,
};
std::string_view to_string(Termination t);

struct SimulationConfig {
  int runs = 1000;
  int max_steps = 1000;
  std::uint64_t seed = 0;
  Termination termination = Termination::ReferenceStable;
  /// 0 picks the hardware concurrency.
  int threads = 0;
};

struct RunOutcome {
  std::uint64_t seed = 0;
  int steps = 0;
  StateBits final_state = 0;
  Phenotype phenotype = Phenotype::Other;
  /// False when the run hit max_steps.
  bool settled = false;
};

struct SimulationResult {
  std::vector<RunOutcome> runs;
  std::map<Phenotype, int> counts;
  double proportion(Phenotype p) const;
};

/// One run; the draws depend only on `run_seed`.
RunOutcome simulate_run(const ProbabilisticNetwork& net, StateBits initial, int max_steps, std::uint64_t run_seed,
                        Termination termination = Termination::ReferenceStable);

/// Runs are independent streams split from the master seed, so the result
/// does not depend on the thread count.
SimulationResult simulate(const ProbabilisticNetwork& net, StateBits initial, const SimulationConfig& config);

// T helper cell model with inputs IFNb, IL12, IL18 and TCR held off.
BooleanNetwork th_model();
std::string_view th_model_text();
/// All components off except IFNg.
StateBits th_initial_state(const BooleanNetwork& bn);

struct NeighborRow {
  std::string component;
  int regulators = 0;
  /// Consistent functions available for that many regulators.
  BigCount function_count = 0;
  std::vector<FunctionShape> parents;
  std::vector<FunctionShape> children;
  std::vector<FunctionShape> siblings;
};

/// Neighbourhood of every component's function in declaration order; inputs
/// get an empty row.
std::vector<NeighborRow> neighbor_table(const BooleanNetwork& bn);

struct ExperimentSpec {
  char id;
  std::string description;
  /// Empty means every component with a non-empty neighbourhood.
  std::vector<std::string> components;
  NeighborMode mode;
  double ref_prob = 0.8;
};

const std::vector<ExperimentSpec>& experiments();
const ExperimentSpec& experiment(char id);
ProbabilisticNetwork build_experiment(const BooleanNetwork& bn, const ExperimentSpec& spec);

}  // namespace monoreg
