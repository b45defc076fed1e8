#pragma once

#include <stdexcept>
#include <vector>

namespace esran::sim {

struct CqiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One reportable channel-quality level. rbRateBitsPerTti is the raw
// modulation rate of a resource block (12 subcarriers x 14 symbols x bits
// per symbol); the useful rate is codingRate * rbRateBitsPerTti, so the
// coding rate enters the latency and drain formulas exactly once.
struct CqiLevel {
  double sinrThresholdDb = 0.0;
  double codingRate = 0.0;
  double maxCodingRate = 0.0;
  double rbRateBitsPerTti = 0.0;
};

class CqiTable {
 public:
  explicit CqiTable(std::vector<CqiLevel> levels);

  // 15 levels, thresholds -6.7..22.7 dB, coding rates 0.076..0.926,
  // modulation stepping QPSK -> 16QAM -> 64QAM.
  static CqiTable standard();

  int size() const { return static_cast<int>(levels_.size()); }

  // Highest level whose threshold the SINR meets; below the first threshold
  // the weakest level is reported.
  int level_for_sinr_db(double sinrDb) const;

  const CqiLevel& level(int n) const;  // 1-based

  // Coding-rate gate: a level is schedulable when its coding rate does not
  // exceed the maximum.
  bool schedulable(int n) const;

 private:
  std::vector<CqiLevel> levels_;
};

}  // namespace esran::sim
