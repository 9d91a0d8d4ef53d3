// Times the instance sweep (generate + solve + validate per seed) serial vs
// OpenMP and checks the two paths agree.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>

#include "rebal/io.hpp"
#include "rebal/sweep.hpp"

int main(int argc, char** argv) {
  CLI::App app{"benchmark the parallel instance sweep against the serial reference"};
  std::string stations_path = "data/stations.csv";
  std::string matrix_path = "data/matrix.txt";
  int instances = 200;
  std::string strategy_name = "nearest";
  app.add_option("--stations", stations_path);
  app.add_option("--matrix", matrix_path);
  app.add_option("--instances", instances);
  app.add_option("--strategy", strategy_name);
  CLI11_PARSE(app, argc, argv);

  const auto stations = rebal::load_stations_csv(stations_path);
  const auto matrix = rebal::load_matrix(matrix_path);
  const auto spec = rebal::default_truck_spec();
  const auto params = rebal::default_cost_params();
  const auto profile = rebal::default_profile();

  std::vector<std::uint64_t> seeds(instances);
  std::iota(seeds.begin(), seeds.end(), 1);

  rebal::SweepOptions options;
  options.strategy = rebal::strategy_from_string(strategy_name);

  using clock = std::chrono::steady_clock;
  auto time_run = [&](bool parallel) {
    options.parallel = parallel;
    const auto t0 = clock::now();
    auto results = rebal::run_sweep(stations, matrix, spec, params, profile, seeds, options);
    const auto t1 = clock::now();
    return std::pair{std::chrono::duration<double>(t1 - t0).count(), std::move(results)};
  };

  const auto [t_serial, serial] = time_run(false);
  const auto [t_parallel, parallel] = time_run(true);

  bool agree = serial.size() == parallel.size();
  for (std::size_t i = 0; agree && i < serial.size(); ++i)
    agree = serial[i].metrics.total_distance_m == parallel[i].metrics.total_distance_m &&
            serial[i].metrics.total_energy_wh == parallel[i].metrics.total_energy_wh &&
            serial[i].valid == parallel[i].valid;

  std::printf("instances: %d  strategy: %s\n", instances, strategy_name.c_str());
  std::printf("serial:   %.3f s (%.1f inst/s)\n", t_serial, instances / t_serial);
  std::printf("parallel: %.3f s (%.1f inst/s, %.2fx)\n", t_parallel, instances / t_parallel,
              t_serial / t_parallel);
  std::printf("results identical: %s\n", agree ? "yes" : "NO");
  return agree ? 0 : 1;
}
