#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "rebal/core.hpp"
#include "rebal/simulation.hpp"
#include "rebal/solver.hpp"

namespace rebal {

struct StrategyResult {
  Strategy strategy;
  Plan plan;
  ValidationReport validation;
};

struct ComparisonReport {
  std::array<StrategyResult, 3> results;  // nearest, demand, energy
  std::uint64_t seed = 0;
  std::string slot;
  std::string dataset_hash;  // hash of the state the strategies consumed

  Strategy winner_distance() const;
  Strategy winner_energy() const;
  Strategy winner_cost() const;
  std::string table_text() const;
};

/// Solve all three strategies on one shared state and validate each plan.
/// The strategies may run concurrently; they share only immutable inputs.
ComparisonReport run_compare(const std::vector<Station>& stations, const DistanceMatrix& matrix,
                             const NetworkState& state, const TruckSpec& spec,
                             const CostParams& params, bool parallel = true);

void save_comparison_json(const ComparisonReport& report, const std::filesystem::path& path);

}  // namespace rebal
