#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rebal {

using StationId = int;

enum class StationTag { Regular, Metro, SchoolCompany };

StationTag tag_from_string(const std::string& s);
std::string tag_to_string(StationTag tag);

struct Station {
  StationId id = 0;
  std::string name;
  double longitude = 0.0;
  double latitude = 0.0;
  int capacity = 1;  // c_i, rack size
  StationTag tag = StationTag::Regular;
};

/// Current stock and rebalancing targets for one time slot.
struct NetworkState {
  std::vector<int> current;   // b_i
  std::vector<int> baseline;  // B_i

  int size() const { return static_cast<int>(current.size()); }
};

/// Dense asymmetric road-distance matrix in meters. d(i,j) != d(j,i) in
/// general; never symmetrize.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double operator()(StationId i, StationId j) const {
    return d_[static_cast<std::size_t>(i) * n_ + j];
  }
  double& at(StationId i, StationId j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }

  bool operator==(const DistanceMatrix& other) const = default;

 private:
  int n_ = 0;
  std::vector<double> d_;
};

struct TruckSpec {
  int capacity_bikes = 1;         // C
  double max_distance_m = 1.0;    // D
  double battery_wh = 1.0;        // E
  double base_wh_per_m = 0.0;     // e
  double per_bike_wh_per_m = 0.0; // e'
  int fleet_limit = 1;            // V
};

struct CostParams {
  double yen_per_wh = 0.0;       // P
  double fixed_cost_yen = 0.0;   // F, per dispatched truck
  double handling_fee_yen = 0.0; // f, per bike loaded or unloaded
};

struct Metrics {
  double total_distance_m = 0.0;
  double total_energy_wh = 0.0;
  double total_cost_yen = 0.0;
  int trucks_used = 0;
  long long bikes_moved = 0;  // total bikes picked up
};

struct TruckRoute {
  std::vector<StationId> visits;   // depot (0) at start and at each return
  std::vector<int> load_after;     // bikes aboard after each visit
  double distance_m = 0.0;
  double energy_wh = 0.0;
  double cost_yen = 0.0;
  long long bikes_picked = 0;
  long long bikes_dropped = 0;
};

struct Plan {
  std::vector<TruckRoute> routes;
  Metrics totals;
  // Stations left short of baseline with their residual demand
  // (positive = surplus not collected, negative = deficit not filled).
  std::vector<std::pair<StationId, long long>> unserved;
};

/// current[i] - baseline[i]: positive means pickup needed, negative delivery.
long long station_demand(const NetworkState& state, StationId i);

/// Fleet constants: C=38, D=270 km, E=38700 Wh, e=0.1433 Wh/m,
/// e'=0.00327 Wh/m per bike, V=20.
TruckSpec default_truck_spec();

/// Business electricity rate 0.03356 yen/Wh, 2740 yen fixed per truck,
/// 100 yen per handling event.
CostParams default_cost_params();

void validate_stations(const std::vector<Station>& stations);
void validate_state(const NetworkState& state, const std::vector<Station>& stations,
                    double cap_factor = 1.2);

}  // namespace rebal
