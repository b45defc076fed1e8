#include "esran/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace esran::sim {

namespace {
constexpr size_t kMaxQueuePackets = 10000;  // tail drop beyond this depth
}

Simulator::Simulator(ScenarioConfig cfg)
    : cfg_(std::move(cfg)), cqi_(CqiTable::standard()), rng_(cfg_.rngSeed) {
  cfg_.validate();

  const int M = cfg_.numBs;
  const int K = cfg_.numUe;
  const double isd = cfg_.interSiteDistanceM;

  // BS sites on a staggered grid, odd rows offset by half a site distance.
  const int cols = static_cast<int>(std::ceil(std::sqrt(double(M))));
  const double rowPitch = isd * std::sqrt(3.0) / 2.0;
  bs_.resize(M);
  double maxX = 0.0, maxY = 0.0;
  for (int i = 0; i < M; ++i) {
    int row = i / cols;
    int col = i % cols;
    BsState& b = bs_[i];
    b.x = col * isd + ((row % 2) ? isd / 2.0 : 0.0);
    b.y = row * rowPitch;
    b.txPowerDbm = cfg_.initialTxPowerDbm;
    b.antennaAngleDeg = cfg_.initialAngleDeg;
    b.totalRbs = cfg_.total_rbs();
    maxX = std::max(maxX, b.x);
    maxY = std::max(maxY, b.y);
  }
  worldMinX_ = -isd / 2.0;
  worldMaxX_ = maxX + isd / 2.0;
  worldMinY_ = -isd / 2.0;
  worldMaxY_ = maxY + isd / 2.0;

  ues_.resize(K);
  for (int j = 0; j < K; ++j) {
    UeState& u = ues_[j];
    u.x = rng_.uniform(worldMinX_, worldMaxX_);
    u.y = rng_.uniform(worldMinY_, worldMaxY_);
    u.speedMps = std::abs(rng_.normal(cfg_.ueSpeedMeanMps, cfg_.ueSpeedStddev));
    u.headingRad = rng_.uniform(0.0, 2.0 * std::numbers::pi);
    u.arrivalRatePerSec =
        cfg_.arrivalRatesPerSec[j % cfg_.arrivalRatesPerSec.size()];
    u.nextArrivalMs = rng_.exponential(1000.0 / u.arrivalRatePerSec);
  }

  geo_.numBs = M;
  geo_.numUe = K;
  geo_.bsX.resize(M);
  geo_.bsY.resize(M);
  geo_.bsTxDbm.resize(M);
  geo_.bsAngleDeg.resize(M);
  geo_.bsAsleep.resize(M);
  geo_.ueX.resize(K);
  geo_.ueY.resize(K);
  geo_.shadowDb.resize(static_cast<size_t>(M) * K);
  geo_.bsAltitudeM = cfg_.bsAltitudeM;
  geo_.carrierGhz = cfg_.carrierGhz;
  redraw_shadow();
  refresh_links();
}

void Simulator::redraw_shadow() {
  for (auto& s : geo_.shadowDb)
    s = rng_.uniform(cfg_.shadowMinDb, cfg_.shadowMaxDb);
}

double Simulator::noise_mw_for_rbs(int rbCount) const {
  return noise_mw(cfg_.noiseDbmPerHz, rbCount * cfg_.rbKhz * 1000.0);
}

void Simulator::refresh_links() {
  for (int i = 0; i < cfg_.numBs; ++i) {
    geo_.bsX[i] = bs_[i].x;
    geo_.bsY[i] = bs_[i].y;
    geo_.bsTxDbm[i] = bs_[i].txPowerDbm;
    geo_.bsAngleDeg[i] = bs_[i].antennaAngleDeg;
    geo_.bsAsleep[i] = bs_[i].asleep ? 1 : 0;
  }
  for (int j = 0; j < cfg_.numUe; ++j) {
    geo_.ueX[j] = ues_[j].x;
    geo_.ueY[j] = ues_[j].y;
  }
  compute_link_budget(geo_, budget_, cfg_.parallelKernel);
  attach_ues();
  update_cqi();
}

void Simulator::attach_ues() {
  const size_t K = static_cast<size_t>(cfg_.numUe);
  const double minRxMw = dbm_to_mw(cfg_.minRxPowerDbm);
  for (int j = 0; j < cfg_.numUe; ++j) {
    int best = -1;
    double bestRx = 0.0;
    for (int i = 0; i < cfg_.numBs; ++i) {
      double rx = budget_.rxMw[static_cast<size_t>(i) * K + j];
      if (rx > bestRx) {
        bestRx = rx;
        best = i;
      }
    }
    ues_[j].servingBs = (best >= 0 && bestRx >= minRxMw) ? best : -1;
  }
}

void Simulator::update_cqi() {
  const size_t K = static_cast<size_t>(cfg_.numUe);
  const double noise1Rb = noise_mw_for_rbs(1);
  for (int j = 0; j < cfg_.numUe; ++j) {
    UeState& u = ues_[j];
    if (u.servingBs < 0) {
      u.cqi = 1;
      continue;
    }
    double rx = budget_.rxMw[static_cast<size_t>(u.servingBs) * K + j];
    double interference = budget_.totalRxMwPerUe[j] - rx;
    double sinrDb = mw_to_dbm(rx / (interference + noise1Rb));
    u.cqi = cqi_.level_for_sinr_db(sinrDb);
  }
}

void Simulator::move_ues() {
  const double dtS = cfg_.ttiMs / 1000.0;
  const double redrawEvery =
      std::max(1.0, std::round(cfg_.headingRedrawMs / cfg_.ttiMs));
  bool redraw = (tick_ % static_cast<long long>(redrawEvery)) == 0;
  for (auto& u : ues_) {
    if (redraw) u.headingRad = rng_.uniform(0.0, 2.0 * std::numbers::pi);
    u.x += u.speedMps * std::cos(u.headingRad) * dtS;
    u.y += u.speedMps * std::sin(u.headingRad) * dtS;
    // reflect off the scenario rectangle
    if (u.x < worldMinX_) {
      u.x = 2.0 * worldMinX_ - u.x;
      u.headingRad = std::numbers::pi - u.headingRad;
    } else if (u.x > worldMaxX_) {
      u.x = 2.0 * worldMaxX_ - u.x;
      u.headingRad = std::numbers::pi - u.headingRad;
    }
    if (u.y < worldMinY_) {
      u.y = 2.0 * worldMinY_ - u.y;
      u.headingRad = -u.headingRad;
    } else if (u.y > worldMaxY_) {
      u.y = 2.0 * worldMaxY_ - u.y;
      u.headingRad = -u.headingRad;
    }
  }
}

void Simulator::spawn_arrivals() {
  for (auto& u : ues_) {
    while (u.nextArrivalMs <= nowMs_) {
      if (u.queue.size() < kMaxQueuePackets) {
        Packet p;
        p.sizeBits = cfg_.burstBits;
        p.remainingBits = cfg_.burstBits;
        p.arrivalMs = nowMs_;  // stamped at tick granularity
        u.queue.push_back(p);
      }
      u.nextArrivalMs += rng_.exponential(1000.0 / u.arrivalRatePerSec);
    }
  }
}

void Simulator::schedule_tti(
    std::vector<std::vector<std::pair<int, double>>>& samples) {
  for (auto& u : ues_) u.allocatedRbs = 0;

  for (int i = 0; i < cfg_.numBs; ++i) {
    BsState& b = bs_[i];
    if (b.asleep) {
      b.load = 0.0;
      b.energyW = cfg_.sleepStandbyWatts;
      continue;
    }
    std::vector<int> eligible;
    for (int j = 0; j < cfg_.numUe; ++j) {
      const UeState& u = ues_[j];
      if (u.servingBs == i && !u.queue.empty() && cqi_.schedulable(u.cqi))
        eligible.push_back(j);
    }

    int used = 0;
    if (!eligible.empty()) {
      const int n = static_cast<int>(eligible.size());
      const int base = b.totalRbs / n;
      const int rem = b.totalRbs % n;
      // the +1 remainder window rotates across ticks
      for (int k = 0; k < n; ++k) {
        int extra = ((k - b.rrCursor % n + n) % n) < rem ? 1 : 0;
        int rbs = base + extra;
        if (rbs == 0) continue;
        UeState& u = ues_[eligible[k]];
        u.allocatedRbs = rbs;
        used += rbs;

        const CqiLevel& lvl = cqi_.level(u.cqi);
        double drain = lvl.codingRate * lvl.rbRateBitsPerTti * rbs;
        while (drain > 0.0 && !u.queue.empty()) {
          Packet& head = u.queue.front();
          if (head.departMs < 0.0) {
            head.departMs = nowMs_;
            double latency = first_packet_latency_ms(
                head.departMs - head.arrivalMs, cfg_.packetBits,
                cqi_.schedulable(u.cqi), lvl.codingRate, rbs,
                lvl.rbRateBitsPerTti, cfg_.ttiMs);
            samples[i].push_back({eligible[k], latency});
          }
          if (head.remainingBits > drain) {
            head.remainingBits -= drain;
            drain = 0.0;
          } else {
            drain -= head.remainingBits;
            u.queue.pop_front();
          }
        }
      }
      b.rrCursor = (b.rrCursor + rem) % n;
    }
    b.load = compute_load(used, b.totalRbs);
    b.energyW = bs_energy_watts(
        b.load, cfg_.energyMix,
        bs_max_power_watts(b.txPowerDbm, cfg_.powerSlope, cfg_.powerOffsetWatts),
        false, cfg_.sleepStandbyWatts);
  }
}

std::pair<double, double> Simulator::sinr_and_throughput(int bsId,
                                                         int ueId) const {
  const size_t K = static_cast<size_t>(cfg_.numUe);
  const UeState& u = ues_[ueId];
  double rx = budget_.rxMw[static_cast<size_t>(bsId) * K + ueId];
  double interference = budget_.totalRxMwPerUe[ueId] - rx;
  int rbs = std::max(u.allocatedRbs, 1);
  double sinr = rx / (interference + noise_mw_for_rbs(rbs));
  double rate =
      shannon_rate_bps(u.allocatedRbs, cfg_.rbKhz * 1000.0, sinr);
  return {sinr, rate};
}

StepMetrics Simulator::step(double dtMs) {
  if (dtMs < 0.0) throw DomainError("step duration must be non-negative");
  double ticksExact = dtMs / cfg_.ttiMs;
  long long numTicks = std::llround(ticksExact);
  if (std::abs(ticksExact - double(numTicks)) > 1e-9)
    throw DomainError("step duration must be a multiple of the TTI");

  StepMetrics out;
  out.startMs = nowMs_;
  out.durationMs = dtMs;
  out.perBs.assign(cfg_.numBs, {});
  if (numTicks == 0) return out;

  // latency samples per BS as (ue, latency) pairs over the whole window
  std::vector<std::vector<std::pair<int, double>>> samples(cfg_.numBs);
  const size_t K = static_cast<size_t>(cfg_.numUe);
  const double shadowEvery =
      std::max(1.0, std::round(cfg_.shadowCoherenceMs / cfg_.ttiMs));

  for (long long t = 0; t < numTicks; ++t) {
    move_ues();
    if (tick_ > 0 && (tick_ % static_cast<long long>(shadowEvery)) == 0)
      redraw_shadow();
    nowMs_ += cfg_.ttiMs;
    ++tick_;
    spawn_arrivals();
    refresh_links();

    std::vector<size_t> marks(cfg_.numBs);
    for (int i = 0; i < cfg_.numBs; ++i) marks[i] = samples[i].size();

    schedule_tti(samples);

    // per-tick accumulation
    for (int i = 0; i < cfg_.numBs; ++i) {
      BsStepMetrics& m = out.perBs[i];
      m.meanLoad += bs_[i].load;
      m.meanEnergyW += bs_[i].energyW;
      double thpt = 0.0;
      int attached = 0;
      for (int j = 0; j < cfg_.numUe; ++j) {
        const UeState& u = ues_[j];
        if (u.servingBs != i) continue;
        ++attached;
        if (u.allocatedRbs > 0) {
          double rx = budget_.rxMw[static_cast<size_t>(i) * K + j];
          double interference = budget_.totalRxMwPerUe[j] - rx;
          double sinr = rx / (interference + noise_mw_for_rbs(u.allocatedRbs));
          thpt += shannon_rate_bps(u.allocatedRbs, cfg_.rbKhz * 1000.0, sinr);
        }
      }
      double thptNorm = thpt / cfg_.numUe;
      m.meanThptBps += thptNorm;

      if (recordTicks_) {
        double tickLatency = 0.0;
        for (size_t s = marks[i]; s < samples[i].size(); ++s)
          tickLatency += samples[i][s].second;
        out.ticks.push_back({tick_, i, bs_[i].load, bs_[i].energyW, thptNorm,
                             tickLatency / cfg_.numUe, attached});
      }
      if (t == numTicks - 1) m.attachedUes = attached;
    }
  }

  for (int i = 0; i < cfg_.numBs; ++i) {
    BsStepMetrics& m = out.perBs[i];
    m.meanLoad /= double(numTicks);
    m.meanEnergyW /= double(numTicks);
    m.meanThptBps /= double(numTicks);
    m.servedPackets = static_cast<long long>(samples[i].size());

    // K-normalized mean of per-UE mean latencies
    std::vector<double> sum(cfg_.numUe, 0.0);
    std::vector<int> cnt(cfg_.numUe, 0);
    for (const auto& [ue, latency] : samples[i]) {
      sum[ue] += latency;
      cnt[ue] += 1;
    }
    double total = 0.0;
    for (int j = 0; j < cfg_.numUe; ++j)
      if (cnt[j] > 0) total += sum[j] / cnt[j];
    m.meanLatencyMs = total / cfg_.numUe;
  }
  return out;
}

void Simulator::apply_operation(int bsId, const ontology::EnergySavingOp& op) {
  if (bsId < 0 || bsId >= cfg_.numBs) throw InvalidOp("BS id out of range");
  BsState& b = bs_[bsId];
  switch (op.kind) {
    case ontology::OpKind::PowerDelta: {
      b.asleep = false;
      double p = b.txPowerDbm + op.parameter;
      p = std::clamp(p, cfg_.txPowerLevelsDbm.front(),
                     cfg_.txPowerLevelsDbm.back());
      b.txPowerDbm = p;
      return;
    }
    case ontology::OpKind::AntennaAngleSet: {
      if (std::find(cfg_.antennaAnglesDeg.begin(), cfg_.antennaAnglesDeg.end(),
                    op.parameter) == cfg_.antennaAnglesDeg.end())
        throw InvalidOp("antenna angle not in the configured set");
      b.asleep = false;
      b.antennaAngleDeg = op.parameter;
      return;
    }
    case ontology::OpKind::Sleep: {
      b.asleep = true;
      b.load = 0.0;
      b.energyW = cfg_.sleepStandbyWatts;
      for (auto& u : ues_)
        if (u.servingBs == bsId) u.servingBs = -1;
      return;
    }
  }
  throw InvalidOp("unknown operation kind");
}

std::string Simulator::snapshot_json() const {
  nlohmann::json j;
  j["now_ms"] = nowMs_;
  j["tick"] = tick_;
  j["rng_state"] = rng_.state();
  nlohmann::json bsArr = nlohmann::json::array();
  for (const auto& b : bs_) {
    bsArr.push_back({{"x", b.x},
                     {"y", b.y},
                     {"tx_dbm", b.txPowerDbm},
                     {"angle_deg", b.antennaAngleDeg},
                     {"asleep", b.asleep},
                     {"total_rbs", b.totalRbs},
                     {"load", b.load},
                     {"energy_w", b.energyW}});
  }
  j["bs"] = std::move(bsArr);
  nlohmann::json ueArr = nlohmann::json::array();
  for (const auto& u : ues_) {
    nlohmann::json q = nlohmann::json::array();
    for (const auto& p : u.queue)
      q.push_back({{"size_bits", p.sizeBits},
                   {"arrival_ms", p.arrivalMs},
                   {"depart_ms", p.departMs},
                   {"remaining_bits", p.remainingBits}});
    ueArr.push_back({{"x", u.x},
                     {"y", u.y},
                     {"speed_mps", u.speedMps},
                     {"heading_rad", u.headingRad},
                     {"serving_bs", u.servingBs},
                     {"cqi", u.cqi},
                     {"arrival_rate", u.arrivalRatePerSec},
                     {"allocated_rbs", u.allocatedRbs},
                     {"next_arrival_ms", u.nextArrivalMs},
                     {"queue", std::move(q)}});
  }
  j["ue"] = std::move(ueArr);
  return j.dump(2) + "\n";
}

}  // namespace esran::sim
