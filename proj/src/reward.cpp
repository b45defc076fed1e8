#include "esran/reward.hpp"

#include <algorithm>

#include "esran/cqi.hpp"

namespace esran::rl {

void RewardWeights::validate() const {
  if (delta1 < 0.0 || delta2 < 0.0 || delta3 < 0.0)
    throw BoundsError("reward weights must be non-negative");
  if (thptMaxBps <= thptMinBps || energyMaxW <= energyMinW ||
      latencyMaxMs <= latencyMinMs)
    throw BoundsError("each normalization max must exceed its min");
}

double reward(double thptBps, double energyW, double latencyMs,
              const RewardWeights& w) {
  w.validate();
  double r = std::clamp(thptBps, w.thptMinBps, w.thptMaxBps);
  double e = std::clamp(energyW, w.energyMinW, w.energyMaxW);
  double t = std::clamp(latencyMs, w.latencyMinMs, w.latencyMaxMs);
  return w.delta1 * (r - w.thptMinBps) / (w.thptMaxBps - w.thptMinBps) -
         w.delta2 * (e - w.energyMinW) / (w.energyMaxW - w.energyMinW) -
         w.delta3 * (t - w.latencyMinMs) / (w.latencyMaxMs - w.latencyMinMs);
}

RewardWeights reward_weights_from_bounds(const intent::ObjectiveBounds& bounds,
                                         const sim::ScenarioConfig& cfg) {
  RewardWeights w;
  const double M = cfg.numBs;
  const double K = cfg.numUe;

  w.energyMinW = 0.0;
  w.energyMaxW = bounds.energyMaxKwh * 1000.0 / M;

  sim::CqiTable table = sim::CqiTable::standard();
  const sim::CqiLevel& top = table.level(table.size());
  const double topRbBitsPerMs =
      top.codingRate * top.rbRateBitsPerTti / cfg.ttiMs;

  w.thptMinBps = bounds.throughputMinGbps * 1e9 / (M * K);
  const double capacityBps = cfg.total_rbs() * topRbBitsPerMs * 1000.0 / K;
  w.thptMaxBps = capacityBps;
  // A small cell can sit entirely below the intent's per-UE share; keep the
  // normalization span one capacity wide above the floor in that case.
  if (w.thptMaxBps <= w.thptMinBps) w.thptMaxBps = w.thptMinBps + capacityBps;

  w.latencyMinMs = cfg.packetBits / (top.codingRate * top.rbRateBitsPerTti) *
                   cfg.ttiMs;
  w.latencyMaxMs = bounds.latencyMaxMs;
  if (w.latencyMaxMs <= w.latencyMinMs) w.latencyMinMs = 0.0;

  w.validate();
  return w;
}

}  // namespace esran::rl
