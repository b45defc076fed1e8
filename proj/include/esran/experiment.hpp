#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "esran/agents.hpp"
#include "esran/config_ini.hpp"
#include "esran/intent.hpp"
#include "esran/ontology.hpp"
#include "esran/reward.hpp"
#include "esran/scenario.hpp"
#include "esran/sig.hpp"
#include "esran/trainer.hpp"

namespace esran::harness {

enum class Scheme { Dqn, DqnNoConflict, QLearning, Static };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct ExperimentConfig {
  sim::ScenarioConfig scenario;
  std::string intentPath = "data/intent_energy_saving.yaml";
  std::string sigModelPath = "data/sig_model.json";
  rl::Hyperparams hp;
  // explicit reward-bound overrides applied on top of the intent-derived
  // defaults; keys match the [reward] config section
  std::map<std::string, double> rewardOverrides;
  std::vector<ontology::ConflictRule> conflictRules =
      ontology::default_conflict_rules();
  double sigThreshold = 0.5;
  double harmThreshold = -1.0;
  std::vector<uint64_t> seeds = {1};
  std::string outputDir = "out";
};

// Desk-scale profile: 4 BSs, 32 UEs, sustained traffic, 200 episodes of 100
// steps. Runs end to end in minutes.
ExperimentConfig desk_profile();

// Full-scale profile: 40 BSs, 320 UEs, 1000 steps per episode.
ExperimentConfig paper_profile();

// Applies [scenario], [hyperparams], [reward], [experiment], and
// [conflict_rules] sections over a profile.
void apply_ini_overrides(ExperimentConfig& config, const IniFile& ini);

// INTENT_RAN_OUT overrides the configured output directory.
std::string resolve_output_dir(const ExperimentConfig& config);

struct RunSummary {
  std::string scheme;
  uint64_t seed = 0;
  double meanEnergyW = 0.0;
  double meanThptBps = 0.0;
  double meanLatencyMs = 0.0;
  double cumulativeReward = 0.0;
  double decompositionMs = 0.0;
  bool satisfied = false;
  std::vector<std::string> files;
};

std::string summary_to_json(const RunSummary& summary);

// One scheme, one seed, fully in memory.
struct SchemeRun {
  rl::TrainingOutput output;
  sig::DecompositionResult decomposition;
  rl::RewardWeights weights;
  std::vector<ontology::EnergySavingOp> ops;
  RunSummary summary;
};

SchemeRun run_scheme(const ExperimentConfig& config, Scheme scheme,
                     uint64_t seed);

// Runs every configured seed and writes trace/metrics/summary files (plus a
// checkpoint for DQN schemes and the decomposition report) into the output
// directory.
std::vector<RunSummary> run_experiment(const ExperimentConfig& config,
                                       Scheme scheme);

struct BenchRow {
  int numBs = 0;
  std::string mode;
  double medianMs = 0.0;
};

// Times the per-BS decomposition loop (parse intent, model the knowledge
// base, load the SIG, decompose) for each BS count; the median wall time
// over `repetitions` runs is reported, warm-up runs excluded.
std::vector<BenchRow> bench_decomposition(const std::string& intentText,
                                          const std::string& sigText,
                                          const std::vector<int>& bsCounts,
                                          int repetitions, bool withConflict);

// CSV renderings (fixed headers, LF line endings)
std::string trace_to_csv(const std::vector<rl::TraceRow>& rows);
std::string metrics_to_csv(const std::vector<rl::StepMetricsRow>& rows);
std::string ticks_to_csv(const std::vector<sim::TickRow>& rows);
std::string bench_to_csv(const std::vector<BenchRow>& rows);

std::string checkpoint_to_json(const std::vector<int>& layerSizes,
                               const std::vector<double>& params);
std::pair<std::vector<int>, std::vector<double>> checkpoint_from_json(
    const std::string& text);

void write_file(const std::string& path, const std::string& content);

}  // namespace esran::harness
