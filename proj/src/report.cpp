#include "rebal/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rebal {
namespace {

constexpr std::array<Strategy, 3> kOrder = {Strategy::NearestDistance, Strategy::MaxDemand,
                                            Strategy::MinEnergy};

template <typename Key>
Strategy argmin(const std::array<StrategyResult, 3>& results, Key key) {
  Strategy best = results[0].strategy;
  double best_v = key(results[0].plan.totals);
  for (const auto& r : results) {
    const double v = key(r.plan.totals);
    if (v < best_v) {
      best_v = v;
      best = r.strategy;
    }
  }
  return best;
}

}  // namespace

Strategy ComparisonReport::winner_distance() const {
  return argmin(results, [](const Metrics& m) { return m.total_distance_m; });
}
Strategy ComparisonReport::winner_energy() const {
  return argmin(results, [](const Metrics& m) { return m.total_energy_wh; });
}
Strategy ComparisonReport::winner_cost() const {
  return argmin(results, [](const Metrics& m) { return m.total_cost_yen; });
}

std::string ComparisonReport::table_text() const {
  std::ostringstream out;
  char buf[64];
  out << "metric";
  for (const auto& r : results) out << '\t' << strategy_to_string(r.strategy);
  out << '\n';
  auto row = [&](const char* label, auto get) {
    out << label;
    for (const auto& r : results) {
      std::snprintf(buf, sizeof buf, "%.1f", static_cast<double>(get(r.plan.totals)));
      out << '\t' << buf;
    }
    out << '\n';
  };
  row("total_distance_m", [](const Metrics& m) { return m.total_distance_m; });
  row("total_energy_wh", [](const Metrics& m) { return m.total_energy_wh; });
  row("total_cost_yen", [](const Metrics& m) { return m.total_cost_yen; });
  out << "trucks_used";
  for (const auto& r : results) out << '\t' << r.plan.totals.trucks_used;
  out << "\nbikes_moved";
  for (const auto& r : results) out << '\t' << r.plan.totals.bikes_moved;
  out << '\n';
  out << "winner_distance: " << strategy_to_string(winner_distance()) << '\n';
  out << "winner_energy: " << strategy_to_string(winner_energy()) << '\n';
  out << "winner_cost: " << strategy_to_string(winner_cost()) << '\n';
  return out.str();
}

ComparisonReport run_compare(const std::vector<Station>& stations, const DistanceMatrix& matrix,
                             const NetworkState& state, const TruckSpec& spec,
                             const CostParams& params, bool parallel) {
  ComparisonReport report;
#ifdef _OPENMP
#pragma omp parallel for if (parallel) schedule(static)
#endif
  for (int i = 0; i < 3; ++i) {
    StrategyResult r;
    r.strategy = kOrder[i];
    r.plan = solve(kOrder[i], stations, state, matrix, spec, params);
    r.validation = validate(r.plan, stations, state, matrix, spec);
    report.results[i] = std::move(r);
  }
  return report;
}

void save_comparison_json(const ComparisonReport& report, const std::filesystem::path& path) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["slot"] = report.slot;
  j["dataset_hash"] = report.dataset_hash;
  for (const auto& r : report.results) {
    nlohmann::json js;
    js["total_distance_m"] = r.plan.totals.total_distance_m;
    js["total_energy_wh"] = r.plan.totals.total_energy_wh;
    js["total_cost_yen"] = r.plan.totals.total_cost_yen;
    js["trucks_used"] = r.plan.totals.trucks_used;
    js["bikes_moved"] = r.plan.totals.bikes_moved;
    js["valid"] = r.validation.all_pass();
    j["strategies"][strategy_to_string(r.strategy)] = std::move(js);
  }
  j["winner_distance"] = strategy_to_string(report.winner_distance());
  j["winner_energy"] = strategy_to_string(report.winner_energy());
  j["winner_cost"] = strategy_to_string(report.winner_cost());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write comparison file: " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace rebal
