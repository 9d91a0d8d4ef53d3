#pragma once

#include <cstdint>
#include <vector>

#include "rebal/core.hpp"
#include "rebal/simulation.hpp"
#include "rebal/solver.hpp"

namespace rebal {

struct SweepResult {
  std::uint64_t seed = 0;
  Metrics metrics;
  bool valid = false;
  bool fully_served = false;
  long long bikes_total = 0;  // network bike count of the generated state
};

struct SweepOptions {
  Strategy strategy = Strategy::NearestDistance;
  std::string slot = "day";
  bool parallel = true;  // OpenMP over instances when available
};

/// Generate, solve and validate one seeded instance per entry of `seeds`.
/// Instances are independent, so the parallel path must produce results
/// identical to run_sweep_serial; tests hold it to that.
std::vector<SweepResult> run_sweep(const std::vector<Station>& stations,
                                   const DistanceMatrix& matrix, const TruckSpec& spec,
                                   const CostParams& params, const UtilizationProfile& profile,
                                   const std::vector<std::uint64_t>& seeds,
                                   const SweepOptions& options);

/// Reference implementation: same contract, plain loop, no threading.
std::vector<SweepResult> run_sweep_serial(const std::vector<Station>& stations,
                                          const DistanceMatrix& matrix, const TruckSpec& spec,
                                          const CostParams& params,
                                          const UtilizationProfile& profile,
                                          const std::vector<std::uint64_t>& seeds,
                                          const SweepOptions& options);

}  // namespace rebal
