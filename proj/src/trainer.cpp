#include "esran/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace esran::rl {

namespace {

double ladder_position(const std::vector<double>& ladder, double value) {
  if (ladder.size() < 2) return 0.0;
  size_t idx = 0;
  double bestGap = std::abs(ladder[0] - value);
  for (size_t i = 1; i < ladder.size(); ++i) {
    double gap = std::abs(ladder[i] - value);
    if (gap < bestGap) {
      bestGap = gap;
      idx = i;
    }
  }
  return static_cast<double>(idx) / static_cast<double>(ladder.size() - 1);
}

double clip01(double x) { return std::clamp(x, 0.0, 1.0); }

uint64_t episode_seed(uint64_t base, int episode) {
  Rng r(base ^ (0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(episode) + 1)));
  return r.next_u64();
}

}  // namespace

std::vector<double> make_observation(const sim::BsState& bs,
                                     const sim::BsStepMetrics& metrics,
                                     const RewardWeights& w,
                                     const sim::ScenarioConfig& cfg) {
  std::vector<double> obs(kObservationSize);
  obs[0] = clip01(metrics.meanLoad);
  obs[1] = clip01((metrics.meanEnergyW - w.energyMinW) /
                  (w.energyMaxW - w.energyMinW));
  obs[2] = clip01((metrics.meanThptBps - w.thptMinBps) /
                  (w.thptMaxBps - w.thptMinBps));
  obs[3] = clip01((metrics.meanLatencyMs - w.latencyMinMs) /
                  (w.latencyMaxMs - w.latencyMinMs));
  obs[4] = ladder_position(cfg.txPowerLevelsDbm, bs.txPowerDbm);
  obs[5] = ladder_position(cfg.antennaAnglesDeg, bs.antennaAngleDeg);
  obs[6] = bs.asleep ? 1.0 : 0.0;
  return obs;
}

TrainingOutput run_training(const TrainingSetup& setup, AgentKind kind) {
  setup.hp.validate();
  setup.weights.validate();
  setup.scenario.validate();
  if (kind != AgentKind::None && setup.ops.empty())
    throw ShapeError("training needs a non-empty operation set");

  const int numBs = setup.scenario.numBs;
  const int actionCount =
      static_cast<int>(setup.ops.size()) + (setup.hp.appendNoop ? 1 : 0);
  const int noopIndex = static_cast<int>(setup.ops.size());

  Rng seedGen(setup.seed);
  const uint64_t agentSeed = seedGen.next_u64();

  std::unique_ptr<DqnAgent> dqn;
  std::unique_ptr<QLearningAgent> tabular;
  if (kind == AgentKind::Dqn) {
    dqn = std::make_unique<DqnAgent>(kObservationSize, actionCount, setup.hp,
                                     agentSeed);
    if (!setup.warmStartParams.empty()) dqn->restore(setup.warmStartParams);
  } else if (kind == AgentKind::Tabular) {
    tabular =
        std::make_unique<QLearningAgent>(actionCount, setup.hp, agentSeed);
  }

  TrainingOutput out;
  long long globalStep = 0;
  long long metricSamples = 0;

  for (int ep = 0; ep < setup.hp.episodes; ++ep) {
    sim::ScenarioConfig cfg = setup.scenario;
    cfg.rngSeed = episode_seed(setup.seed, ep);
    sim::Simulator simulator(cfg);

    // settle one decision window to form the first observation
    sim::StepMetrics window = simulator.step(setup.hp.stepMs);
    std::vector<std::vector<double>> obs(numBs);
    for (int i = 0; i < numBs; ++i)
      obs[i] = make_observation(simulator.bs()[i], window.perBs[i],
                                setup.weights, cfg);

    for (int step = 0; step < setup.hp.stepsPerEpisode; ++step) {
      std::vector<int> chosen(numBs, -1);
      if (kind != AgentKind::None) {
        for (int i = 0; i < numBs; ++i) {
          int a = dqn ? dqn->act(obs[i]) : tabular->act(obs[i]);
          chosen[i] = a;
          if (a != noopIndex || !setup.hp.appendNoop)
            simulator.apply_operation(i, setup.ops[static_cast<size_t>(a)]);
        }
      }

      window = simulator.step(setup.hp.stepMs);

      double rewardSum = 0.0;
      for (int i = 0; i < numBs; ++i) {
        const sim::BsStepMetrics& m = window.perBs[i];
        double r = reward(m.meanThptBps, m.meanEnergyW, m.meanLatencyMs,
                          setup.weights);
        rewardSum += r;
        std::vector<double> next =
            make_observation(simulator.bs()[i], m, setup.weights, cfg);
        if (dqn) dqn->remember({obs[i], chosen[i], r, next});
        if (tabular) tabular->update(obs[i], chosen[i], r, next);
        obs[i] = std::move(next);

        out.metrics.push_back({simulator.tick_count(), i, m.meanLoad,
                               m.meanEnergyW, m.meanThptBps, m.meanLatencyMs,
                               m.attachedUes});
        out.meanEnergyW += m.meanEnergyW;
        out.meanThptBps += m.meanThptBps;
        out.meanLatencyMs += m.meanLatencyMs;
        ++metricSamples;
      }

      double loss = (dqn && setup.trainEnabled) ? dqn->train_if_ready() : -1.0;
      double meanReward = rewardSum / numBs;
      out.cumulativeReward += meanReward;
      out.trace.push_back({globalStep, ep, meanReward, loss,
                           1.0 - setup.hp.exploitProb, chosen[0]});
      ++globalStep;
    }
  }

  if (metricSamples > 0) {
    out.meanEnergyW /= static_cast<double>(metricSamples);
    out.meanThptBps /= static_cast<double>(metricSamples);
    out.meanLatencyMs /= static_cast<double>(metricSamples);
  }
  if (dqn) {
    out.checkpointShape = dqn->online().layer_sizes();
    out.checkpointParams = dqn->online().params();
  }
  return out;
}

}  // namespace esran::rl
