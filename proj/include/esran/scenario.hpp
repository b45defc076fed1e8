#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace esran::sim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full scenario parameterization. Defaults reproduce the urban-macro
// setting: 40 BSs, 320 UEs, 25 m sites, 3.5 GHz carrier, 180 kHz resource
// blocks, -174 dBm/Hz noise floor.
struct ScenarioConfig {
  int numBs = 40;
  int numUe = 320;
  double bsAltitudeM = 25.0;
  double bandwidthMhz = 40.0;
  double rbKhz = 180.0;
  std::vector<double> txPowerLevelsDbm = {50.0, 51.0, 52.0, 53.0};
  double initialTxPowerDbm = 50.0;
  double powerSlope = 21.45;        // watts per transmit watt
  double powerOffsetWatts = 354.44;
  double energyMix = 0.5;           // 0 = load proportional, 1 = constant
  double carrierGhz = 3.5;
  std::vector<double> antennaAnglesDeg = {0.0, 5.0, 15.0};
  double initialAngleDeg = 0.0;
  double shadowMinDb = -15.0;
  double shadowMaxDb = 15.0;
  double noiseDbmPerHz = -174.0;
  double minRxPowerDbm = -5.1;
  std::vector<double> arrivalRatesPerSec = {1.0, 2.0, 4.0, 8.0};
  double packetBits = 320.0;   // first-packet size for the latency metric
  double burstBits = 320.0;    // service-flow burst size queued per arrival
  double ueSpeedMeanMps = 3.0;
  double ueSpeedStddev = 1.0;
  double ttiMs = 1.0;
  double interSiteDistanceM = 500.0;
  double sleepStandbyWatts = 0.0;
  double shadowCoherenceMs = 1000.0;
  double headingRedrawMs = 1000.0;
  bool parallelKernel = false;
  uint64_t rngSeed = 1;

  int total_rbs() const {
    return static_cast<int>(bandwidthMhz * 1000.0 / rbKhz);
  }

  void validate() const;
};

}  // namespace esran::sim
