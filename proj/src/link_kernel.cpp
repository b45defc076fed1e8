#include "esran/link_kernel.hpp"

#include <cmath>

#include "esran/physics.hpp"

namespace esran::sim {

namespace {

// One UE column: received power from every BS, then the column sum in fixed
// BS order. Shared by both implementations.
inline void fill_column(const LinkGeometry& geo, int j, LinkBudget& out) {
  const size_t K = static_cast<size_t>(geo.numUe);
  double total = 0.0;
  for (int i = 0; i < geo.numBs; ++i) {
    const size_t idx = static_cast<size_t>(i) * K + static_cast<size_t>(j);
    if (geo.bsAsleep[static_cast<size_t>(i)]) {
      out.rxMw[idx] = 0.0;
      continue;
    }
    double dx = geo.bsX[static_cast<size_t>(i)] - geo.ueX[static_cast<size_t>(j)];
    double dy = geo.bsY[static_cast<size_t>(i)] - geo.ueY[static_cast<size_t>(j)];
    double d = std::sqrt(geo.bsAltitudeM * geo.bsAltitudeM + dx * dx + dy * dy);
    double gainDb = channel_gain_db(path_loss_db(d, geo.carrierGhz),
                                    geo.bsAngleDeg[static_cast<size_t>(i)],
                                    geo.shadowDb[idx]);
    double rx = dbm_to_mw(geo.bsTxDbm[static_cast<size_t>(i)] + gainDb);
    out.rxMw[idx] = rx;
    total += rx;
  }
  out.totalRxMwPerUe[static_cast<size_t>(j)] = total;
}

}  // namespace

void compute_link_budget_serial(const LinkGeometry& geo, LinkBudget& out) {
  out.resize(geo.numBs, geo.numUe);
  for (int j = 0; j < geo.numUe; ++j) fill_column(geo, j, out);
}

void compute_link_budget_parallel(const LinkGeometry& geo, LinkBudget& out) {
  out.resize(geo.numBs, geo.numUe);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < geo.numUe; ++j) fill_column(geo, j, out);
}

}  // namespace esran::sim
