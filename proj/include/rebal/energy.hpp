#pragma once

#include "rebal/core.hpp"

namespace rebal {

/// Energy for one edge of d meters carrying `load` bikes: (e + e' * load) * d.
double edge_energy(double d, int load, const TruckSpec& spec);

struct RouteTotals {
  double distance_m = 0.0;
  double energy_wh = 0.0;
};

/// Replay a visit sequence against the matrix. loads[k] is the load carried
/// while driving away from visit k.
RouteTotals route_metrics(const std::vector<StationId>& visits, const std::vector<int>& loads,
                          const DistanceMatrix& matrix, const TruckSpec& spec);

struct CostBreakdown {
  double fixed_yen = 0.0;
  double energy_yen = 0.0;
  double handling_yen = 0.0;
  double total_yen = 0.0;
};

/// F * trucks_used + P * total_energy + f * handling events, where loading
/// one bike and unloading one bike are separate events.
CostBreakdown plan_cost(const Plan& plan, const CostParams& params);

}  // namespace rebal
