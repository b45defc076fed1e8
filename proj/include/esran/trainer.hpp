#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esran/agents.hpp"
#include "esran/ontology.hpp"
#include "esran/reward.hpp"
#include "esran/scenario.hpp"
#include "esran/simulator.hpp"

namespace esran::rl {

enum class AgentKind { Dqn, Tabular, None };

struct TraceRow {
  long long step = 0;
  int episode = 0;
  double reward = 0.0;  // mean per-BS reward for the step
  double loss = -1.0;   // negative while no training has happened
  double epsilon = 0.0;
  int action = -1;  // BS 0's action index
};

struct StepMetricsRow {
  long long tick = 0;
  int bsId = 0;
  double load = 0.0;
  double energyW = 0.0;
  double thptBps = 0.0;
  double latencyMs = 0.0;
  int attachedUes = 0;
};

struct TrainingOutput {
  std::vector<TraceRow> trace;
  std::vector<StepMetricsRow> metrics;
  double cumulativeReward = 0.0;
  double meanEnergyW = 0.0;
  double meanThptBps = 0.0;
  double meanLatencyMs = 0.0;
  std::vector<int> checkpointShape;    // layer sizes, empty without a network
  std::vector<double> checkpointParams;
};

struct TrainingSetup {
  sim::ScenarioConfig scenario;
  std::vector<ontology::EnergySavingOp> ops;
  Hyperparams hp;
  RewardWeights weights;
  uint64_t seed = 1;
  // Restores a saved network instead of a fresh initialization; with
  // trainEnabled off the loop becomes a pure policy rollout.
  std::vector<double> warmStartParams;
  bool trainEnabled = true;
};

// Seven-entry agent observation: load, the three normalized metrics, the
// transmit-power and antenna-angle ladder positions, and the sleep flag.
std::vector<double> make_observation(const sim::BsState& bs,
                                     const sim::BsStepMetrics& metrics,
                                     const RewardWeights& weights,
                                     const sim::ScenarioConfig& cfg);

constexpr int kObservationSize = 7;

// One shared agent drives every BS; per decision step each BS observes,
// acts, and stores its transition, then one minibatch update runs. The
// simulator is rebuilt per episode from an episode-derived seed.
// AgentKind::None applies no operations (the static baseline).
TrainingOutput run_training(const TrainingSetup& setup, AgentKind kind);

}  // namespace esran::rl
