#include "esran/agents.hpp"

#include <algorithm>
#include <cmath>

namespace esran::rl {

void Hyperparams::validate() const {
  if (gamma < 0.0 || gamma >= 1.0) throw ShapeError("gamma must lie in [0, 1)");
  if (exploitProb < 0.0 || exploitProb > 1.0)
    throw ShapeError("exploitProb must lie in [0, 1]");
  if (targetSyncPeriod < 1) throw ShapeError("targetSyncPeriod must be >= 1");
  if (learningRate <= 0.0) throw ShapeError("learningRate must be positive");
  if (batchSize < 1) throw ShapeError("batchSize must be >= 1");
  if (stepsPerEpisode < 0 || episodes < 0)
    throw ShapeError("episode shape must be non-negative");
  if (stepMs <= 0.0) throw ShapeError("stepMs must be positive");
  if (replayCapacity == 0) throw ShapeError("replayCapacity must be positive");
}

int select_action(const std::vector<double>& qValues, double exploitProb,
                  Rng& rng) {
  const int n = static_cast<int>(qValues.size());
  if (n == 0) throw ShapeError("action set must be non-empty");
  double u = rng.uniform();
  if (u < exploitProb) {
    int best = 0;
    for (int a = 1; a < n; ++a)
      if (qValues[a] > qValues[best]) best = a;
    return best;
  }
  return static_cast<int>(rng.below(static_cast<uint64_t>(n)));
}

double train_step(Mlp& online, const Mlp& target, const ReplayMemory& memory,
                  const Hyperparams& hp, Rng& rng) {
  if (memory.size() < static_cast<size_t>(hp.batchSize))
    throw InsufficientData("replay memory smaller than one batch");

  std::vector<size_t> idx =
      memory.sample_indices(static_cast<size_t>(hp.batchSize), rng);
  std::vector<std::vector<double>> inputs;
  std::vector<int> actions;
  std::vector<double> targets;
  inputs.reserve(idx.size());
  actions.reserve(idx.size());
  targets.reserve(idx.size());
  for (size_t i : idx) {
    const Transition& t = memory.at(i);
    inputs.push_back(t.obs);
    actions.push_back(t.action);
    std::vector<double> nextQ = target.forward(t.nextObs);
    double best = *std::max_element(nextQ.begin(), nextQ.end());
    targets.push_back(t.reward + hp.gamma * best);
  }

  std::vector<double> grad;
  double loss = online.batch_loss_and_grad(inputs, actions, targets, grad);
  online.sgd_step(grad, hp.learningRate);
  return loss;
}

void sync_target(const Mlp& online, Mlp& target) {
  target.set_params(online.params());
}

namespace {

std::vector<int> layer_shape(int obsSize, int actionCount,
                             const Hyperparams& hp) {
  std::vector<int> sizes;
  sizes.push_back(obsSize);
  for (int h : hp.hiddenLayers) sizes.push_back(h);
  sizes.push_back(actionCount);
  return sizes;
}

}  // namespace

DqnAgent::DqnAgent(int obsSize, int actionCount, const Hyperparams& hp,
                   uint64_t seed)
    : hp_(hp),
      rng_(seed),
      online_(layer_shape(obsSize, actionCount, hp), rng_),
      target_(online_.layer_sizes(), online_.params()),
      memory_(hp.replayCapacity),
      actionCount_(actionCount) {
  hp_.validate();
}

int DqnAgent::act(const std::vector<double>& obs) {
  return select_action(online_.forward(obs), hp_.exploitProb, rng_);
}

void DqnAgent::restore(const std::vector<double>& params) {
  online_.set_params(params);
  target_.set_params(params);
}

double DqnAgent::train_if_ready() {
  if (memory_.size() < static_cast<size_t>(hp_.batchSize)) return -1.0;
  double loss = train_step(online_, target_, memory_, hp_, rng_);
  ++trainSteps_;
  if (trainSteps_ % hp_.targetSyncPeriod == 0) sync_target(online_, target_);
  return loss;
}

QLearningAgent::QLearningAgent(int actionCount, const Hyperparams& hp,
                               uint64_t seed)
    : hp_(hp), rng_(seed), actionCount_(actionCount) {
  hp_.validate();
  size_t states = 1;
  for (int m = 0; m < kMetricCount; ++m) states *= kBins;
  table_.assign(states * actionCount_, 0.0);
}

size_t QLearningAgent::state_index(const std::vector<double>& obs) const {
  size_t idx = 0;
  for (int m = 0; m < kMetricCount; ++m) {
    double v = m < static_cast<int>(obs.size()) ? obs[m] : 0.0;
    int bin = static_cast<int>(std::clamp(v, 0.0, 1.0) * kBins);
    bin = std::min(bin, kBins - 1);
    idx = idx * kBins + static_cast<size_t>(bin);
  }
  return idx;
}

int QLearningAgent::act(const std::vector<double>& obs) {
  size_t s = state_index(obs);
  std::vector<double> q(table_.begin() + s * actionCount_,
                        table_.begin() + (s + 1) * actionCount_);
  return select_action(q, hp_.exploitProb, rng_);
}

void QLearningAgent::update(const std::vector<double>& obs, int action,
                            double reward, const std::vector<double>& nextObs) {
  size_t s = state_index(obs);
  size_t sNext = state_index(nextObs);
  double best = table_[sNext * actionCount_];
  for (int a = 1; a < actionCount_; ++a)
    best = std::max(best, table_[sNext * actionCount_ + a]);
  double& cell = table_[s * actionCount_ + action];
  cell += hp_.learningRate * (reward + hp_.gamma * best - cell);
}

}  // namespace esran::rl
