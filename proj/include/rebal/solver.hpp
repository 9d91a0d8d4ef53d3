#pragma once

#include <string>
#include <vector>

#include "rebal/core.hpp"
#include "rebal/energy.hpp"

namespace rebal {

enum class Strategy { NearestDistance, MaxDemand, MinEnergy };

Strategy strategy_from_string(const std::string& s);
std::string strategy_to_string(Strategy strategy);

struct WorkQueues {
  std::vector<std::pair<StationId, long long>> overflow;   // surplus > 0
  std::vector<std::pair<StationId, long long>> underflow;  // deficit > 0
};

/// Split stations into pickup and delivery queues by baseline delta,
/// ascending id. Balanced stations appear in neither.
WorkQueues classify(const NetworkState& state);

/// Greedy fleet construction. Trucks are dispatched one at a time from the
/// depot (station 0); each visit picks up or drops as much as capacity
/// allows, the strategy metric choosing the next feasible station. Residual
/// demand left by a capacity-truncated visit is picked up by a later truck.
Plan solve(Strategy strategy, const std::vector<Station>& stations, const NetworkState& state,
           const DistanceMatrix& matrix, const TruckSpec& spec, const CostParams& params);

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  std::string summary() const;
};

/// Replay every route against the matrix and energy model and re-check the
/// model constraints: single service, load <= C, distance <= D, energy <= E,
/// served stations land exactly on baseline, fleet <= V, stored metrics
/// match the replay within 1e-6 relative.
ValidationReport validate(const Plan& plan, const std::vector<Station>& stations,
                          const NetworkState& state, const DistanceMatrix& matrix,
                          const TruckSpec& spec);

enum class OracleObjective { Distance, Energy };

struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive single-truck optimum for tiny instances (n <= 7): enumerates
/// every service order with a feasible load trajectory and returns the
/// objective-minimal plan. Test oracle; independent of the greedy path.
Plan brute_force_oracle(const std::vector<Station>& stations, const NetworkState& state,
                        const DistanceMatrix& matrix, const TruckSpec& spec,
                        const CostParams& params, OracleObjective objective);

}  // namespace rebal
