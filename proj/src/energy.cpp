#include "rebal/energy.hpp"

#include <stdexcept>

namespace rebal {

double edge_energy(double d, int load, const TruckSpec& spec) {
  if (d < 0.0) throw std::invalid_argument("edge_energy: negative distance");
  if (load < 0 || load > spec.capacity_bikes)
    throw std::invalid_argument("edge_energy: load outside [0, capacity]");
  return (spec.base_wh_per_m + spec.per_bike_wh_per_m * load) * d;
}

RouteTotals route_metrics(const std::vector<StationId>& visits, const std::vector<int>& loads,
                          const DistanceMatrix& matrix, const TruckSpec& spec) {
  if (visits.size() != loads.size())
    throw std::invalid_argument("route_metrics: trajectory length mismatch");
  RouteTotals t;
  for (std::size_t k = 0; k + 1 < visits.size(); ++k) {
    const StationId a = visits[k];
    const StationId b = visits[k + 1];
    if (a < 0 || a >= matrix.size() || b < 0 || b >= matrix.size())
      throw std::out_of_range("route_metrics: visit outside matrix");
    const double d = matrix(a, b);
    t.distance_m += d;
    t.energy_wh += edge_energy(d, loads[k], spec);
  }
  return t;
}

CostBreakdown plan_cost(const Plan& plan, const CostParams& params) {
  CostBreakdown c;
  long long handling = 0;
  double energy = 0.0;
  for (const auto& r : plan.routes) {
    handling += r.bikes_picked + r.bikes_dropped;
    energy += r.energy_wh;
  }
  c.fixed_yen = params.fixed_cost_yen * static_cast<double>(plan.routes.size());
  c.energy_yen = params.yen_per_wh * energy;
  c.handling_yen = params.handling_fee_yen * static_cast<double>(handling);
  c.total_yen = c.fixed_yen + c.energy_yen + c.handling_yen;
  return c;
}

}  // namespace rebal
