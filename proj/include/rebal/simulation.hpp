#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rebal/core.hpp"
#include "rebal/rng.hpp"

namespace rebal {

/// Per-slot utilization fractions. "special" covers metro- and
/// school/company-adjacent stations; "regular" everything else.
struct SlotProfile {
  std::string label;
  double regular_util = 0.0;   // expected current stock as a fraction of capacity
  double special_util = 0.0;
  double regular_base = 0.0;   // baseline as a fraction of capacity
  double special_base = 0.0;
};

struct UtilizationProfile {
  std::vector<SlotProfile> slots;

  const SlotProfile& slot(const std::string& label) const;
};

/// "day" carries the documented 0.79/0.80 regular and 0.68/0.90 special
/// fractions; the other slots are non-normative defaults shaped like a
/// morning/evening commute curve.
UtilizationProfile default_profile();

UtilizationProfile load_profile(const std::filesystem::path& path);
void save_profile(const UtilizationProfile& profile, const std::filesystem::path& path);

struct SimConfig {
  std::uint64_t seed = 0;
  std::string slot = "day";
  double cap_factor = 1.2;  // current stock may not exceed cap_factor * capacity
  UtilizationProfile profile = default_profile();
};

/// Draw one network state: baselines from the percent rule, current stock
/// from Poisson draws, per-station surplus over capacity stripped and
/// redistributed multinomially (p_i proportional to capacity), everything
/// clamped at ceil(cap_factor * c_i). Total bike count is conserved.
NetworkState generate_state(const std::vector<Station>& stations, const SimConfig& config);

}  // namespace rebal
