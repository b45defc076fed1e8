#include "esran/cqi.hpp"

#include <string>

namespace esran::sim {

CqiTable::CqiTable(std::vector<CqiLevel> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw CqiError("CQI table needs at least one level");
  for (size_t i = 0; i < levels_.size(); ++i) {
    const CqiLevel& l = levels_[i];
    if (l.codingRate <= 0.0 || l.rbRateBitsPerTti <= 0.0)
      throw CqiError("CQI level " + std::to_string(i + 1) +
                     " has non-positive rate");
    if (i > 0) {
      if (l.sinrThresholdDb <= levels_[i - 1].sinrThresholdDb)
        throw CqiError("CQI thresholds must increase");
      if (l.codingRate <= levels_[i - 1].codingRate)
        throw CqiError("CQI coding rates must increase");
      if (l.rbRateBitsPerTti < levels_[i - 1].rbRateBitsPerTti)
        throw CqiError("CQI per-RB rates must not decrease");
    }
  }
}

CqiTable CqiTable::standard() {
  std::vector<CqiLevel> levels;
  const int n = 15;
  const double thrLo = -6.7, thrHi = 22.7;
  const double codeLo = 0.076, codeHi = 0.926;
  for (int i = 0; i < n; ++i) {
    CqiLevel l;
    l.sinrThresholdDb = thrLo + (thrHi - thrLo) * i / (n - 1);
    l.codingRate = i == n - 1 ? codeHi : codeLo + (codeHi - codeLo) * i / (n - 1);
    l.maxCodingRate = codeHi;
    int bitsPerSymbol = i < 6 ? 2 : (i < 9 ? 4 : 6);
    l.rbRateBitsPerTti = 12.0 * 14.0 * bitsPerSymbol;
    levels.push_back(l);
  }
  return CqiTable(std::move(levels));
}

int CqiTable::level_for_sinr_db(double sinrDb) const {
  int best = 1;
  for (size_t i = 0; i < levels_.size(); ++i) {
    if (sinrDb >= levels_[i].sinrThresholdDb) best = static_cast<int>(i) + 1;
  }
  return best;
}

const CqiLevel& CqiTable::level(int n) const {
  if (n < 1 || n > size()) throw CqiError("CQI level out of range");
  return levels_[static_cast<size_t>(n - 1)];
}

bool CqiTable::schedulable(int n) const {
  const CqiLevel& l = level(n);
  return l.codingRate <= l.maxCodingRate;
}

}  // namespace esran::sim
