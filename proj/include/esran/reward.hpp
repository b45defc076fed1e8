#pragma once

#include <stdexcept>

#include "esran/intent.hpp"
#include "esran/scenario.hpp"
#include "esran/simulator.hpp"

namespace esran::rl {

struct BoundsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Weighting factors and normalization bounds for the per-agent reward:
//   r = d1*(R-Rmin)/(Rmax-Rmin) - d2*(E-Emin)/(Emax-Emin)
//                               - d3*(T-Tmin)/(Tmax-Tmin)
// with each metric clipped into its bounds first, so r stays within
// [-(d2+d3), d1].
struct RewardWeights {
  double delta1 = 0.8;
  double delta2 = 0.6;
  double delta3 = 0.2;
  double thptMinBps = 0.0;
  double thptMaxBps = 1.0;
  double energyMinW = 0.0;
  double energyMaxW = 1.0;
  double latencyMinMs = 0.0;
  double latencyMaxMs = 1.0;

  void validate() const;
};

double reward(double thptBps, double energyW, double latencyMs,
              const RewardWeights& w);

// Per-agent bounds derived from the intent document and the scenario scale.
// The intent carries network-level figures; they are rendered per BS and
// per UE the same way the metrics are normalized:
//   - energy: kWh over an hour -> sustained watts, split across M BSs
//   - throughput: Gbps -> bits/s, split across M BSs and K-normalized
//   - latency: ms, used directly
// The free bounds follow the radio configuration: zero-watt sleep floor,
// all-RB top-CQI capacity (K-normalized), and the first-packet transmission
// time at top CQI on one RB.
RewardWeights reward_weights_from_bounds(const intent::ObjectiveBounds& bounds,
                                         const sim::ScenarioConfig& cfg);

}  // namespace esran::rl
