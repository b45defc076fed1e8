#pragma once

#include <vector>

#include "esran/mlp.hpp"
#include "esran/replay.hpp"
#include "esran/rng.hpp"

namespace esran::rl {

struct Hyperparams {
  double gamma = 0.7;          // reward discount
  double exploitProb = 0.7;    // greedy strategy index
  int targetSyncPeriod = 100;  // train steps between target refreshes
  double learningRate = 0.005;
  int batchSize = 32;
  int stepsPerEpisode = 1000;
  double stepMs = 100.0;
  int episodes = 1;
  std::vector<int> hiddenLayers = {64, 64};
  size_t replayCapacity = 3000;
  bool appendNoop = true;  // hold-configuration action added to the set

  void validate() const;
};

// Greedy action with probability exploitProb (ties resolved to the lowest
// index), uniform exploration otherwise.
int select_action(const std::vector<double>& qValues, double exploitProb,
                  Rng& rng);

// One uniform-minibatch Bellman regression step on the online network:
// y = r + gamma * max_a' targetQ(s', a'). Returns the pre-step loss.
double train_step(Mlp& online, const Mlp& target, const ReplayMemory& memory,
                  const Hyperparams& hp, Rng& rng);

void sync_target(const Mlp& online, Mlp& target);

// Online + target network, shared replay, periodic target sync.
class DqnAgent {
 public:
  DqnAgent(int obsSize, int actionCount, const Hyperparams& hp, uint64_t seed);

  int act(const std::vector<double>& obs);
  void remember(Transition t) { memory_.push(std::move(t)); }

  // Loads saved parameters into both networks.
  void restore(const std::vector<double>& params);

  // Trains when the replay holds a full batch; returns the loss, or a
  // negative value when no training happened yet.
  double train_if_ready();

  const Mlp& online() const { return online_; }
  const Mlp& target() const { return target_; }
  ReplayMemory& memory() { return memory_; }
  long long train_steps() const { return trainSteps_; }
  int action_count() const { return actionCount_; }

 private:
  Hyperparams hp_;
  Rng rng_;
  Mlp online_;
  Mlp target_;
  ReplayMemory memory_;
  int actionCount_;
  long long trainSteps_ = 0;
};

// Tabular baseline over a discretized observation: the leading
// kMetricCount observation entries are binned into kBins levels each.
class QLearningAgent {
 public:
  static constexpr int kBins = 4;
  static constexpr int kMetricCount = 4;  // load, energy, throughput, latency

  QLearningAgent(int actionCount, const Hyperparams& hp, uint64_t seed);

  int act(const std::vector<double>& obs);
  void update(const std::vector<double>& obs, int action, double reward,
              const std::vector<double>& nextObs);

  size_t state_index(const std::vector<double>& obs) const;
  size_t table_size() const { return table_.size(); }
  const std::vector<double>& table() const { return table_; }
  double q(size_t state, int action) const {
    return table_[state * actionCount_ + action];
  }

 private:
  Hyperparams hp_;
  Rng rng_;
  int actionCount_;
  std::vector<double> table_;
};

}  // namespace esran::rl
