#pragma once

#include <cstdint>
#include <vector>

namespace esran::sim {

// Structure-of-arrays view of every BS-UE link for one tick. shadowDb is
// row-major, numBs rows by numUe columns.
struct LinkGeometry {
  int numBs = 0;
  int numUe = 0;
  std::vector<double> bsX, bsY;
  std::vector<double> bsTxDbm;
  std::vector<double> bsAngleDeg;
  std::vector<uint8_t> bsAsleep;
  std::vector<double> ueX, ueY;
  std::vector<double> shadowDb;
  double bsAltitudeM = 25.0;
  double carrierGhz = 3.5;
};

// Received power per link plus the per-UE sum over all awake BSs. Sleeping
// BSs contribute exact zeros. rxMw is row-major like shadowDb.
struct LinkBudget {
  std::vector<double> rxMw;
  std::vector<double> totalRxMwPerUe;

  void resize(int numBs, int numUe) {
    rxMw.assign(static_cast<size_t>(numBs) * numUe, 0.0);
    totalRxMwPerUe.assign(numUe, 0.0);
  }
};

// Serial reference implementation.
void compute_link_budget_serial(const LinkGeometry& geo, LinkBudget& out);

// OpenMP implementation, parallel over UEs. Every entry is evaluated with
// the same per-link arithmetic in the same order as the serial version, so
// both produce bit-identical output for any thread count.
void compute_link_budget_parallel(const LinkGeometry& geo, LinkBudget& out);

inline void compute_link_budget(const LinkGeometry& geo, LinkBudget& out,
                                bool parallel) {
  if (parallel)
    compute_link_budget_parallel(geo, out);
  else
    compute_link_budget_serial(geo, out);
}

}  // namespace esran::sim
