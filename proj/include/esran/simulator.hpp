#pragma once

#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "esran/cqi.hpp"
#include "esran/link_kernel.hpp"
#include "esran/ontology.hpp"
#include "esran/physics.hpp"
#include "esran/rng.hpp"
#include "esran/scenario.hpp"

namespace esran::sim {

struct InvalidOp : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One downlink service burst. departMs is the tick at which the burst left
// the buffer (service start), -1 while still queued. remainingBits tracks
// the drain across ticks.
struct Packet {
  double sizeBits = 0.0;
  double arrivalMs = 0.0;
  double departMs = -1.0;
  double remainingBits = 0.0;
};

struct BsState {
  double x = 0.0, y = 0.0;
  double txPowerDbm = 50.0;
  double antennaAngleDeg = 0.0;
  bool asleep = false;
  int totalRbs = 0;
  int rrCursor = 0;
  double load = 0.0;     // last tick
  double energyW = 0.0;  // last tick
};

struct UeState {
  double x = 0.0, y = 0.0;
  double speedMps = 0.0;
  double headingRad = 0.0;
  int servingBs = -1;
  int cqi = 1;
  double arrivalRatePerSec = 1.0;
  int allocatedRbs = 0;  // last tick
  double nextArrivalMs = 0.0;
  std::deque<Packet> queue;
};

struct TickRow {
  long long tick = 0;
  int bsId = 0;
  double load = 0.0;
  double energyW = 0.0;
  double thptBps = 0.0;
  double latencyMs = 0.0;
  int attachedUes = 0;
};

// Window aggregates per BS. Throughput and latency are normalized by the UE
// population K; energy and load are time means over the window's ticks.
struct BsStepMetrics {
  double meanLoad = 0.0;
  double meanEnergyW = 0.0;
  double meanThptBps = 0.0;
  double meanLatencyMs = 0.0;
  int attachedUes = 0;
  long long servedPackets = 0;
};

struct StepMetrics {
  double startMs = 0.0;
  double durationMs = 0.0;
  std::vector<BsStepMetrics> perBs;
  std::vector<TickRow> ticks;
};

// Deterministic discrete-time RAN simulator. Single-owner: one caller
// advances an instance; independent instances share nothing.
class Simulator {
 public:
  explicit Simulator(ScenarioConfig cfg);

  // Applies one energy-saving actuation to a BS. Power and angle changes on
  // a sleeping BS wake it; Sleep detaches the BS's UEs, which re-attach on
  // the next tick.
  void apply_operation(int bsId, const ontology::EnergySavingOp& op);

  // Advances dtMs (a multiple of the TTI) of simulated time: mobility,
  // arrivals, attachment, scheduling, metrics.
  StepMetrics step(double dtMs);

  // Recomputes link budget, attachment, and CQI from the current geometry
  // without advancing time.
  void refresh_links();

  // Current-link SINR (linear) and Shannon rate in bits/s for an attached
  // pair, under the UE's current allocation.
  std::pair<double, double> sinr_and_throughput(int bsId, int ueId) const;

  const ScenarioConfig& config() const { return cfg_; }
  const std::vector<BsState>& bs() const { return bs_; }
  const std::vector<UeState>& ues() const { return ues_; }
  const LinkGeometry& geometry() const { return geo_; }
  const LinkBudget& budget() const { return budget_; }
  const CqiTable& cqi_table() const { return cqi_; }
  double now_ms() const { return nowMs_; }
  long long tick_count() const { return tick_; }
  void set_record_ticks(bool on) { recordTicks_ = on; }

  std::string snapshot_json() const;

 private:
  void redraw_shadow();
  void move_ues();
  void spawn_arrivals();
  void attach_ues();
  void update_cqi();
  void schedule_tti(std::vector<std::vector<std::pair<int, double>>>& samples);
  double noise_mw_for_rbs(int rbCount) const;

  ScenarioConfig cfg_;
  CqiTable cqi_;
  Rng rng_;
  std::vector<BsState> bs_;
  std::vector<UeState> ues_;
  LinkGeometry geo_;
  LinkBudget budget_;
  double nowMs_ = 0.0;
  long long tick_ = 0;
  double worldMinX_ = 0.0, worldMaxX_ = 0.0;
  double worldMinY_ = 0.0, worldMaxY_ = 0.0;
  bool recordTicks_ = false;
};

}  // namespace esran::sim
