#include "esran/scenario.hpp"

#include <algorithm>

namespace esran::sim {

void ScenarioConfig::validate() const {
  if (numBs < 1) throw ConfigError("numBs must be >= 1");
  if (numUe < 1) throw ConfigError("numUe must be >= 1");
  if (bsAltitudeM <= 0.0) throw ConfigError("bsAltitudeM must be positive");
  if (rbKhz <= 0.0) throw ConfigError("rbKhz must be positive");
  if (total_rbs() < 1)
    throw ConfigError("bandwidth must hold at least one resource block");
  if (txPowerLevelsDbm.empty())
    throw ConfigError("txPowerLevelsDbm must be non-empty");
  if (!std::is_sorted(txPowerLevelsDbm.begin(), txPowerLevelsDbm.end()))
    throw ConfigError("txPowerLevelsDbm must be ascending");
  if (std::find(txPowerLevelsDbm.begin(), txPowerLevelsDbm.end(),
                initialTxPowerDbm) == txPowerLevelsDbm.end())
    throw ConfigError("initialTxPowerDbm must be one of txPowerLevelsDbm");
  if (energyMix < 0.0 || energyMix > 1.0)
    throw ConfigError("energyMix must lie in [0, 1]");
  if (carrierGhz <= 0.0) throw ConfigError("carrierGhz must be positive");
  if (initialAngleDeg < 0.0 || initialAngleDeg >= 90.0)
    throw ConfigError("initialAngleDeg must lie in [0, 90)");
  for (double a : antennaAnglesDeg)
    if (a < 0.0 || a >= 90.0)
      throw ConfigError("antenna angles must lie in [0, 90)");
  if (shadowMinDb > shadowMaxDb)
    throw ConfigError("shadow range must be ordered");
  if (arrivalRatesPerSec.empty())
    throw ConfigError("arrivalRatesPerSec must be non-empty");
  for (double r : arrivalRatesPerSec)
    if (r <= 0.0) throw ConfigError("arrival rates must be positive");
  if (packetBits <= 0.0) throw ConfigError("packetBits must be positive");
  if (burstBits < packetBits)
    throw ConfigError("burstBits must cover at least one first packet");
  if (ueSpeedStddev <= 0.0) throw ConfigError("ueSpeedStddev must be positive");
  if (ttiMs <= 0.0) throw ConfigError("ttiMs must be positive");
  if (interSiteDistanceM <= 0.0)
    throw ConfigError("interSiteDistanceM must be positive");
  if (sleepStandbyWatts < 0.0)
    throw ConfigError("sleepStandbyWatts must be non-negative");
  if (shadowCoherenceMs <= 0.0 || headingRedrawMs <= 0.0)
    throw ConfigError("coherence intervals must be positive");
}

}  // namespace esran::sim
