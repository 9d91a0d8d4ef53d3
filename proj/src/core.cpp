#include "rebal/core.hpp"

#include <cmath>

namespace rebal {

StationTag tag_from_string(const std::string& s) {
  if (s == "regular") return StationTag::Regular;
  if (s == "metro") return StationTag::Metro;
  if (s == "school") return StationTag::SchoolCompany;
  throw std::invalid_argument("unknown station tag: " + s);
}

std::string tag_to_string(StationTag tag) {
  switch (tag) {
    case StationTag::Regular: return "regular";
    case StationTag::Metro: return "metro";
    case StationTag::SchoolCompany: return "school";
  }
  throw std::logic_error("bad tag");
}

long long station_demand(const NetworkState& state, StationId i) {
  if (i < 0 || i >= state.size()) throw std::out_of_range("station index out of range");
  return static_cast<long long>(state.current[i]) - state.baseline[i];
}

TruckSpec default_truck_spec() {
  TruckSpec spec;
  spec.capacity_bikes = 38;  // floor(1150 kg payload / 30.2 kg per bike)
  spec.max_distance_m = 270000.0;
  spec.battery_wh = 38700.0;
  spec.base_wh_per_m = 0.1433;
  spec.per_bike_wh_per_m = 0.00327;
  spec.fleet_limit = 20;
  return spec;
}

CostParams default_cost_params() {
  CostParams p;
  p.yen_per_wh = 0.03356;
  p.fixed_cost_yen = 2740.0;
  p.handling_fee_yen = 100.0;
  return p;
}

void validate_stations(const std::vector<Station>& stations) {
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const auto& s = stations[i];
    if (s.id != static_cast<StationId>(i))
      throw std::invalid_argument("station ids must be contiguous from 0");
    if (s.capacity < 1) throw std::invalid_argument("station capacity must be >= 1");
    if (s.longitude < -180.0 || s.longitude > 180.0 || s.latitude < -90.0 || s.latitude > 90.0)
      throw std::invalid_argument("station coordinates out of range");
  }
  if (stations.empty()) throw std::invalid_argument("empty station list");
}

void validate_state(const NetworkState& state, const std::vector<Station>& stations,
                    double cap_factor) {
  if (state.current.size() != stations.size() || state.baseline.size() != stations.size())
    throw std::invalid_argument("state size does not match station count");
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const int cap = static_cast<int>(std::ceil(cap_factor * stations[i].capacity - 1e-9));
    if (state.current[i] < 0 || state.current[i] > cap)
      throw std::invalid_argument("current stock violates the capacity cap at station " +
                                  std::to_string(i));
    if (state.baseline[i] < 0 || state.baseline[i] > stations[i].capacity)
      throw std::invalid_argument("baseline exceeds capacity at station " + std::to_string(i));
  }
}

}  // namespace rebal
