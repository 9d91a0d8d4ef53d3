#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "rebal/io.hpp"
#include "rebal/rng.hpp"

using namespace rebal;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rebal_io_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("matrix save/load round-trip is exact") {
  TempDir tmp;
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(8));
    DistanceMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          // tenth-of-meter grid, the format's full resolution
          m.at(i, j) = std::round(rng.next_double() * 200000.0) / 10.0;
    const auto path = tmp.path / "m.txt";
    save_matrix(m, path);
    CHECK(load_matrix(path) == m);
  }
}

TEST_CASE("matrix load rejects malformed files") {
  TempDir tmp;
  const auto path = tmp.path / "bad.txt";

  SUBCASE("empty file") {
    std::ofstream(path.string());
    CHECK_THROWS(load_matrix(path));
  }
  SUBCASE("header dimension disagrees with row count") {
    std::ofstream out(path.string());
    out << "n=3\n0,1,2\n3,0,4\n";
    out.close();
    CHECK_THROWS_WITH_AS(load_matrix(path), doctest::Contains("truncated"), std::runtime_error);
  }
  SUBCASE("missing header") {
    std::ofstream out(path.string());
    out << "0,1\n2,0\n";
    out.close();
    CHECK_THROWS(load_matrix(path));
  }
  SUBCASE("ragged row") {
    std::ofstream out(path.string());
    out << "n=2\n0,1\n2\n";
    out.close();
    CHECK_THROWS(load_matrix(path));
  }
  SUBCASE("extra rows") {
    std::ofstream out(path.string());
    out << "n=2\n0,1\n2,0\n9,9\n";
    out.close();
    CHECK_THROWS(load_matrix(path));
  }
}

TEST_CASE("station csv round-trip") {
  TempDir tmp;
  std::vector<Station> stations{
      {0, "Roppongi First Building", 139.741476, 35.66241, 12, StationTag::Regular},
      {1, "Port 001", 139.75, 35.67, 8, StationTag::Metro},
      {2, "Port 002", 139.72, 35.65, 20, StationTag::SchoolCompany},
  };
  const auto path = tmp.path / "stations.csv";
  save_stations_csv(stations, path);
  const auto loaded = load_stations_csv(path);
  REQUIRE(loaded.size() == 3);
  CHECK(loaded[0].name == "Roppongi First Building");
  CHECK(loaded[1].tag == StationTag::Metro);
  CHECK(loaded[2].capacity == 20);
  CHECK(loaded[0].longitude == doctest::Approx(139.741476));
}

TEST_CASE("state csv round-trip and id check") {
  TempDir tmp;
  NetworkState state;
  state.current = {3, 0, 12};
  state.baseline = {4, 2, 10};
  const auto path = tmp.path / "state.csv";
  save_state_csv(state, path);
  const auto loaded = load_state_csv(path);
  CHECK(loaded.current == state.current);
  CHECK(loaded.baseline == state.baseline);

  std::ofstream out(path.string());
  out << "id,current,baseline\n0,1,1\n2,1,1\n";
  out.close();
  CHECK_THROWS(load_state_csv(path));
}

TEST_CASE("plan json round-trip") {
  TempDir tmp;
  Plan plan;
  TruckRoute r;
  r.visits = {0, 3, 1, 0, 2};
  r.load_after = {4, 0, 2, 2, 0};
  r.distance_m = 1234.5;
  r.energy_wh = 210.75;
  r.cost_yen = 3456.7;
  r.bikes_picked = 6;
  r.bikes_dropped = 6;
  plan.routes.push_back(r);
  plan.totals.total_distance_m = 1234.5;
  plan.totals.total_energy_wh = 210.75;
  plan.totals.total_cost_yen = 3456.7;
  plan.totals.trucks_used = 1;
  plan.totals.bikes_moved = 6;
  plan.unserved.emplace_back(5, -2);

  const auto path = tmp.path / "plan.json";
  save_plan_json(plan, path);
  const auto loaded = load_plan_json(path);
  CHECK(loaded.routes.size() == 1);
  CHECK(loaded.routes[0].visits == r.visits);
  CHECK(loaded.routes[0].load_after == r.load_after);
  CHECK(loaded.routes[0].energy_wh == r.energy_wh);
  CHECK(loaded.totals.bikes_moved == 6);
  REQUIRE(loaded.unserved.size() == 1);
  CHECK(loaded.unserved[0] == std::pair<StationId, long long>{5, -2});
}

TEST_CASE("plan text uses the bracketed listing") {
  Plan plan;
  TruckRoute r;
  r.visits = {0, 2, 3, 0, 5};
  r.load_after = {0, 2, 0, 0, 0};
  plan.routes.push_back(r);
  const auto text = plan_to_text(plan);
  CHECK(text.find("[0, 2, 3, 0, 5]") != std::string::npos);
  CHECK(text.find("total_distance_m") != std::string::npos);
}
