#include "rebal/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace rebal {
namespace {

bool is_special(StationTag tag) { return tag != StationTag::Regular; }

int clamp_cap(int capacity, double cap_factor) {
  return static_cast<int>(std::ceil(cap_factor * capacity - 1e-9));
}

}  // namespace

const SlotProfile& UtilizationProfile::slot(const std::string& label) const {
  for (const auto& s : slots)
    if (s.label == label) return s;
  throw std::invalid_argument("unknown time slot: " + label);
}

UtilizationProfile default_profile() {
  UtilizationProfile p;
  // "day" is the documented slot; the rest are plausible commute-shaped
  // defaults and carry no external meaning.
  p.slots = {
      {"day", 0.79, 0.68, 0.80, 0.90},
      {"morning", 0.55, 0.95, 0.80, 0.90},
      {"evening", 0.70, 0.90, 0.80, 0.90},
      {"night", 0.85, 0.60, 0.80, 0.90},
  };
  return p;
}

UtilizationProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty profile file: " + path.string());
  UtilizationProfile profile;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    SlotProfile s;
    std::string field;
    auto next = [&](const char* what) {
      if (!std::getline(row, field, ',')) throw std::runtime_error(std::string("profile row missing ") + what);
      return field;
    };
    s.label = next("slot label");
    s.regular_util = std::stod(next("regular_util"));
    s.special_util = std::stod(next("special_util"));
    s.regular_base = std::stod(next("regular_base"));
    s.special_base = std::stod(next("special_base"));
    if (s.regular_util < 0 || s.special_util < 0 || s.regular_base < 0 || s.special_base < 0 ||
        s.regular_base > 1.0 || s.special_base > 1.0)
      throw std::runtime_error("profile fractions out of range in slot " + s.label);
    profile.slots.push_back(std::move(s));
  }
  if (profile.slots.empty()) throw std::runtime_error("profile file has no slots");
  return profile;
}

void save_profile(const UtilizationProfile& profile, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write profile file: " + path.string());
  out << "slot,regular_util,special_util,regular_base,special_base\n";
  for (const auto& s : profile.slots)
    out << s.label << ',' << s.regular_util << ',' << s.special_util << ',' << s.regular_base
        << ',' << s.special_base << '\n';
}

NetworkState generate_state(const std::vector<Station>& stations, const SimConfig& config) {
  validate_stations(stations);
  if (config.cap_factor < 1.0) throw std::invalid_argument("cap_factor must be >= 1");
  const SlotProfile& slot = config.profile.slot(config.slot);
  const int n = static_cast<int>(stations.size());
  Rng rng(config.seed);

  NetworkState state;
  state.current.resize(n);
  state.baseline.resize(n);

  double cap_sum = 0.0;
  for (const auto& s : stations) cap_sum += s.capacity;
  std::vector<double> probs(n);
  for (int i = 0; i < n; ++i) probs[i] = stations[i].capacity / cap_sum;
  // Exact renormalization so multinomial_sample's 1e-9 check never trips.
  const double psum = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= psum;

  long long pool = 0;
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    const bool special = is_special(stations[i].tag);
    const double base_pct = special ? slot.special_base : slot.regular_base;
    const double util = special ? slot.special_util : slot.regular_util;
    state.baseline[i] = static_cast<int>(std::floor(stations[i].capacity * base_pct + 0.5));
    const long long raw = poisson_sample(stations[i].capacity * util, rng);
    total += raw;
    // Surplus over rack capacity is stripped into the redistribution pool.
    const long long surplus = std::max<long long>(0, raw - stations[i].capacity);
    pool += surplus;
    state.current[i] = static_cast<int>(raw - surplus);
  }

  while (pool > 0) {
    const auto extra = multinomial_sample(pool, probs, rng);
    long long displaced = 0;
    for (int i = 0; i < n; ++i) {
      const int cap = clamp_cap(stations[i].capacity, config.cap_factor);
      long long cur = state.current[i] + extra[i];
      if (cur > cap) {
        displaced += cur - cap;
        cur = cap;
      }
      state.current[i] = static_cast<int>(cur);
    }
    if (displaced == pool) break;  // pass made no progress
    pool = displaced;
  }
  // Residue goes to whatever clamped headroom is left, ascending id.
  for (int i = 0; i < n && pool > 0; ++i) {
    const int cap = clamp_cap(stations[i].capacity, config.cap_factor);
    const long long take = std::min<long long>(pool, cap - state.current[i]);
    state.current[i] += static_cast<int>(take);
    pool -= take;
  }
  if (pool > 0)
    throw std::runtime_error("generate_state: network cannot absorb the drawn bike total");

  long long check = 0;
  for (int v : state.current) check += v;
  if (check != total) throw std::logic_error("generate_state: bike conservation broken");
  validate_state(state, stations, config.cap_factor);
  return state;
}

}  // namespace rebal
