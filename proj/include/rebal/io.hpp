#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rebal/core.hpp"

namespace rebal {

/// Text matrix format: header line "n=<int>", then n comma-separated rows of
/// meters printed with at most one decimal place.
DistanceMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const DistanceMatrix& matrix, const std::filesystem::path& path);

/// Format one meters value the way save_matrix does (at most one decimal).
std::string format_meters(double v);

/// Station CSV: header "id,name,longitude,latitude,capacity,tag".
std::vector<Station> load_stations_csv(const std::filesystem::path& path);
void save_stations_csv(const std::vector<Station>& stations, const std::filesystem::path& path);

/// State CSV: header "id,current,baseline".
NetworkState load_state_csv(const std::filesystem::path& path);
void save_state_csv(const NetworkState& state, const std::filesystem::path& path);

/// Optional truck-spec override file (JSON with the TruckSpec field names).
TruckSpec load_truck_spec(const std::filesystem::path& path);

/// Bracketed route listing plus a metrics block.
std::string plan_to_text(const Plan& plan);
void save_plan_text(const Plan& plan, const std::filesystem::path& path);

/// Machine-readable plan: routes, load trajectories, per-truck metrics,
/// totals, unserved residuals.
void save_plan_json(const Plan& plan, const std::filesystem::path& path);
Plan load_plan_json(const std::filesystem::path& path);

/// FNV-1a over a file's bytes; recorded in comparison reports.
std::string file_hash_hex(const std::filesystem::path& path);

}  // namespace rebal
