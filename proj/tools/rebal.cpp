// Command-line front end: builds distance matrices, simulates network
// states, solves and validates rebalancing plans, and compares the three
// greedy strategies on one shared state.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rebal/fetch.hpp"
#include "rebal/io.hpp"
#include "rebal/report.hpp"
#include "rebal/simulation.hpp"
#include "rebal/solver.hpp"
#include "rebal/stitch.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitValidation = 3;

struct CommonArgs {
  std::string stations_path;
  std::string matrix_path;
  std::string out_dir = ".";
  std::string truck_spec_path;
  std::string profile_path;
  std::uint64_t seed = 0;
  std::string slot = "day";
};

rebal::TruckSpec load_spec(const CommonArgs& args) {
  return args.truck_spec_path.empty() ? rebal::default_truck_spec()
                                      : rebal::load_truck_spec(args.truck_spec_path);
}

rebal::UtilizationProfile load_prof(const CommonArgs& args) {
  return args.profile_path.empty() ? rebal::default_profile()
                                   : rebal::load_profile(args.profile_path);
}

rebal::NetworkState state_for(const CommonArgs& args, const std::vector<rebal::Station>& stations,
                              const std::string& state_path) {
  if (!state_path.empty()) {
    auto state = rebal::load_state_csv(state_path);
    rebal::validate_state(state, stations);
    return state;
  }
  rebal::SimConfig cfg;
  cfg.seed = args.seed;
  cfg.slot = args.slot;
  cfg.profile = load_prof(args);
  return rebal::generate_state(stations, cfg);
}

int cmd_matrix(const CommonArgs& args, const std::string& blocks_dir, const std::string& out,
               bool fetch, int batch_size) {
  const auto stations = rebal::load_stations_csv(args.stations_path);
  const int n = static_cast<int>(stations.size());

  if (fetch) {
    rebal::ApiConfig api;
    api.endpoint = "https://api.openrouteservice.org";
    if (const char* key = std::getenv("ROUTING_API_KEY")) api.api_key = key;
    api.cache_dir = std::filesystem::path(blocks_dir) / "cache";
    rebal::BlockCache cache(api.cache_dir);
    std::filesystem::create_directories(blocks_dir);
    int block_no = 0;
    for (int r0 = 0; r0 < n; r0 += batch_size) {
      for (int c0 = 0; c0 < n; c0 += batch_size) {
        std::vector<rebal::BatchPoint> rows, cols;
        for (int i = r0; i < std::min(n, r0 + batch_size); ++i)
          rows.push_back({stations[i].id, stations[i].longitude, stations[i].latitude});
        for (int j = c0; j < std::min(n, c0 + batch_size); ++j)
          cols.push_back({stations[j].id, stations[j].longitude, stations[j].latitude});
        const auto block = rebal::fetch_block(rows, cols, api, cache);
        char name[64];
        std::snprintf(name, sizeof name, "block_%03d.json", block_no++);
        rebal::save_block(block, std::filesystem::path(blocks_dir) / name);
      }
    }
  }

  rebal::StitchReport stitch_report;
  const auto blocks = rebal::load_blocks_dir(blocks_dir);
  const auto matrix = rebal::stitch(blocks, n, &stitch_report);
  rebal::save_matrix(matrix, out);
  std::cout << "stitched " << blocks.size() << " blocks into " << n << "x" << n << " matrix ("
            << stitch_report.overlap_writes << " overlapping cells, last write wins)\n"
            << "wrote " << out << '\n';
  return kExitOk;
}

int cmd_simulate(const CommonArgs& args, const std::string& out) {
  const auto stations = rebal::load_stations_csv(args.stations_path);
  rebal::SimConfig cfg;
  cfg.seed = args.seed;
  cfg.slot = args.slot;
  cfg.profile = load_prof(args);
  const auto state = rebal::generate_state(stations, cfg);
  rebal::save_state_csv(state, out);
  std::cout << "wrote " << out << " (seed " << args.seed << ", slot " << args.slot << ")\n";
  return kExitOk;
}

int cmd_solve(const CommonArgs& args, const std::string& strategy_name,
              const std::string& state_path) {
  const auto stations = rebal::load_stations_csv(args.stations_path);
  const auto matrix = rebal::load_matrix(args.matrix_path);
  if (matrix.size() != static_cast<int>(stations.size()))
    throw std::runtime_error("matrix dimension does not match station count");
  const auto strategy = rebal::strategy_from_string(strategy_name);
  const auto state = state_for(args, stations, state_path);
  const auto spec = load_spec(args);
  const auto params = rebal::default_cost_params();

  const auto plan = rebal::solve(strategy, stations, state, matrix, spec, params);
  const auto report = rebal::validate(plan, stations, state, matrix, spec);

  std::filesystem::create_directories(args.out_dir);
  const auto base = std::filesystem::path(args.out_dir) / ("plan_" + strategy_name);
  rebal::save_plan_text(plan, base.string() + ".txt");
  rebal::save_plan_json(plan, base.string() + ".json");
  std::ofstream vr(base.string() + ".validation.txt");
  vr << report.summary();

  std::cout << rebal::plan_to_text(plan);
  if (!report.all_pass()) {
    std::cerr << "validation failed:\n" << report.summary();
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_compare(const CommonArgs& args, const std::string& state_path) {
  const auto stations = rebal::load_stations_csv(args.stations_path);
  const auto matrix = rebal::load_matrix(args.matrix_path);
  if (matrix.size() != static_cast<int>(stations.size()))
    throw std::runtime_error("matrix dimension does not match station count");
  const auto state = state_for(args, stations, state_path);
  const auto spec = load_spec(args);
  const auto params = rebal::default_cost_params();

  std::filesystem::create_directories(args.out_dir);
  const auto state_file = std::filesystem::path(args.out_dir) / "state.csv";
  rebal::save_state_csv(state, state_file);

  auto report = rebal::run_compare(stations, matrix, state, spec, params);
  report.seed = args.seed;
  report.slot = args.slot;
  report.dataset_hash = rebal::file_hash_hex(state_file);

  for (const auto& r : report.results) {
    const auto base =
        std::filesystem::path(args.out_dir) / ("plan_" + rebal::strategy_to_string(r.strategy));
    rebal::save_plan_text(r.plan, base.string() + ".txt");
    rebal::save_plan_json(r.plan, base.string() + ".json");
  }
  rebal::save_comparison_json(report,
                              std::filesystem::path(args.out_dir) / "comparison.json");
  std::cout << "state hash: " << report.dataset_hash << '\n' << report.table_text();

  for (const auto& r : report.results) {
    if (!r.validation.all_pass()) {
      std::cerr << "validation failed for " << rebal::strategy_to_string(r.strategy) << ":\n"
                << r.validation.summary();
      return kExitValidation;
    }
  }
  return kExitOk;
}

int cmd_validate(const CommonArgs& args, const std::string& plan_path,
                 const std::string& state_path) {
  const auto stations = rebal::load_stations_csv(args.stations_path);
  const auto matrix = rebal::load_matrix(args.matrix_path);
  const auto state = rebal::load_state_csv(state_path);
  rebal::validate_state(state, stations);
  const auto plan = rebal::load_plan_json(plan_path);
  const auto spec = load_spec(args);
  const auto report = rebal::validate(plan, stations, state, matrix, spec);
  std::cout << report.summary();
  return report.all_pass() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bike-share rebalancing: simulate a network state and route "
               "capacity- and battery-constrained trucks back to baseline"};
  app.require_subcommand(1);

  CommonArgs common;
  app.add_option("--seed", common.seed, "RNG seed");
  app.add_option("--slot", common.slot, "time slot label");
  app.add_option("--stations", common.stations_path, "station CSV");
  app.add_option("--matrix", common.matrix_path, "distance matrix file");
  app.add_option("--out-dir", common.out_dir, "output directory");
  app.add_option("--truck-spec", common.truck_spec_path, "truck spec JSON override");
  app.add_option("--profile", common.profile_path, "utilization profile file");

  auto* matrix_cmd = app.add_subcommand("matrix", "stitch (and optionally fetch) block files");
  std::string blocks_dir, matrix_out;
  bool do_fetch = false;
  int batch_size = 50;
  matrix_cmd->add_option("--blocks-dir", blocks_dir, "directory of block JSON files")->required();
  matrix_cmd->add_option("--out", matrix_out, "output matrix file")->required();
  matrix_cmd->add_flag("--fetch", do_fetch, "fetch missing blocks via the routing API");
  matrix_cmd->add_option("--batch-size", batch_size, "points per API batch (max 50)");

  auto* simulate_cmd = app.add_subcommand("simulate", "generate a network state");
  std::string sim_out = "state.csv";
  simulate_cmd->add_option("--out", sim_out, "output state CSV");

  auto* solve_cmd = app.add_subcommand("solve", "solve one strategy");
  std::string strategy_name, state_path;
  solve_cmd->add_option("--strategy", strategy_name, "nearest|demand|energy")->required();
  solve_cmd->add_option("--state", state_path, "state CSV (otherwise simulated from --seed)");

  auto* compare_cmd = app.add_subcommand("compare", "compare all three strategies on one state");
  std::string cmp_state_path;
  compare_cmd->add_option("--state", cmp_state_path, "state CSV (otherwise simulated)");

  auto* validate_cmd = app.add_subcommand("validate", "re-check a stored plan");
  std::string plan_path, val_state_path;
  validate_cmd->add_option("--plan", plan_path, "plan JSON")->required();
  validate_cmd->add_option("--state", val_state_path, "state CSV the plan was solved on")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (matrix_cmd->parsed()) {
      if (batch_size < 1 || batch_size > 50) {
        std::cerr << "--batch-size must be in [1, 50]\n";
        return kExitUsage;
      }
      return cmd_matrix(common, blocks_dir, matrix_out, do_fetch, batch_size);
    }
    if (simulate_cmd->parsed()) return cmd_simulate(common, sim_out);
    if (solve_cmd->parsed()) return cmd_solve(common, strategy_name, state_path);
    if (compare_cmd->parsed()) return cmd_compare(common, cmp_state_path);
    if (validate_cmd->parsed()) return cmd_validate(common, plan_path, val_state_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
