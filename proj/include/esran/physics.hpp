#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace esran::sim {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchedulingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// 3D urban-macro line-of-sight path loss, distance in meters, carrier in GHz.
inline double path_loss_db(double distanceM, double carrierGhz) {
  if (distanceM <= 0.0)
    throw DomainError("path loss undefined for non-positive distance");
  return 28.0 + 22.0 * std::log10(distanceM) + 20.0 * std::log10(carrierGhz);
}

// Link gain in dB: a 10 dB antenna constant, an angle cosine term, path
// loss, and shadow attenuation. Angle must stay below 90 degrees where the
// cosine closes.
inline double channel_gain_db(double pathLossDb, double antennaAngleDeg,
                              double shadowDb) {
  if (antennaAngleDeg < 0.0 || antennaAngleDeg >= 90.0)
    throw DomainError("antenna angle must lie in [0, 90) degrees");
  double c = std::cos(antennaAngleDeg * std::numbers::pi / 180.0);
  return 10.0 - 20.0 * std::log10(c) - pathLossDb - shadowDb;
}

// Affine transmit-power model: transmit dBm converted to watts, then scaled.
inline double bs_max_power_watts(double txPowerDbm, double powerSlope,
                                 double powerOffsetWatts) {
  double txWatts = dbm_to_mw(txPowerDbm) / 1000.0;
  return powerSlope * txWatts + powerOffsetWatts;
}

// Per-BS energy draw in watts for a given load. energyMix = 1 is a constant
// profile, 0 fully load-proportional.
inline double bs_energy_watts(double load, double energyMix, double maxPowerW,
                              bool asleep, double standbyW) {
  if (asleep) return standbyW;
  return (1.0 - energyMix) * load * maxPowerW + energyMix * maxPowerW;
}

// Load as the utilized fraction of a BS's resource blocks.
inline double compute_load(int allocatedRbs, int totalRbs) {
  if (allocatedRbs > totalRbs)
    throw CapacityError("allocated RBs exceed the BS total");
  if (totalRbs <= 0) throw DomainError("BS must own at least one RB");
  return static_cast<double>(allocatedRbs) / static_cast<double>(totalRbs);
}

// Thermal noise over a bandwidth, in mW.
inline double noise_mw(double noiseDbmPerHz, double bandwidthHz) {
  return dbm_to_mw(noiseDbmPerHz) * bandwidthHz;
}

// Shannon rate over the allocated blocks, bits per second.
inline double shannon_rate_bps(int rbCount, double rbHz, double sinrLinear) {
  return static_cast<double>(rbCount) * rbHz * std::log2(1.0 + sinrLinear);
}

// Queuing wait plus the first packet's transmission time. schedulable is the
// coding-rate gate; when it is closed, latency is undefined.
inline double first_packet_latency_ms(double queueWaitMs, double packetBits,
                                      bool schedulable, double codingRate,
                                      int rbCount, double rbRateBitsPerTti,
                                      double ttiMs) {
  if (!schedulable)
    throw SchedulingError("latency undefined when scheduling is gated off");
  if (rbCount < 1) throw SchedulingError("latency needs at least one RB");
  return queueWaitMs +
         packetBits / (codingRate * rbCount * rbRateBitsPerTti) * ttiMs;
}

}  // namespace esran::sim
