#include "rebal/sweep.hpp"

#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rebal {
namespace {

SweepResult run_one(const std::vector<Station>& stations, const DistanceMatrix& matrix,
                    const TruckSpec& spec, const CostParams& params,
                    const UtilizationProfile& profile, std::uint64_t seed,
                    const SweepOptions& options) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.slot = options.slot;
  cfg.profile = profile;
  const NetworkState state = generate_state(stations, cfg);

  SweepResult result;
  result.seed = seed;
  result.bikes_total = std::accumulate(state.current.begin(), state.current.end(), 0LL);
  const Plan plan = solve(options.strategy, stations, state, matrix, spec, params);
  result.metrics = plan.totals;
  result.valid = validate(plan, stations, state, matrix, spec).all_pass();
  result.fully_served = plan.unserved.empty();
  return result;
}

}  // namespace

std::vector<SweepResult> run_sweep_serial(const std::vector<Station>& stations,
                                          const DistanceMatrix& matrix, const TruckSpec& spec,
                                          const CostParams& params,
                                          const UtilizationProfile& profile,
                                          const std::vector<std::uint64_t>& seeds,
                                          const SweepOptions& options) {
  std::vector<SweepResult> results(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i)
    results[i] = run_one(stations, matrix, spec, params, profile, seeds[i], options);
  return results;
}

std::vector<SweepResult> run_sweep(const std::vector<Station>& stations,
                                   const DistanceMatrix& matrix, const TruckSpec& spec,
                                   const CostParams& params, const UtilizationProfile& profile,
                                   const std::vector<std::uint64_t>& seeds,
                                   const SweepOptions& options) {
#ifdef _OPENMP
  if (options.parallel) {
    std::vector<SweepResult> results(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(seeds.size()); ++i)
      results[i] = run_one(stations, matrix, spec, params, profile, seeds[i], options);
    return results;
  }
#endif
  return run_sweep_serial(stations, matrix, spec, params, profile, seeds, options);
}

}  // namespace rebal
