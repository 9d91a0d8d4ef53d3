// Generates the bundled synthetic dataset: a 150-station network shaped like
// a Tokyo bike-share deployment (depot at the Roppongi First Building
// coordinates, 11 metro-adjacent and 23 school/company-adjacent stations),
// the asymmetric road-distance matrix derived from great-circle distances
// with direction-dependent detour factors, and the <=50x50 block files that
// stitch back into that matrix bit-exactly.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rebal/io.hpp"
#include "rebal/rng.hpp"
#include "rebal/simulation.hpp"
#include "rebal/stitch.hpp"

namespace {

constexpr double kDepotLon = 139.741476;
constexpr double kDepotLat = 35.66241;

double haversine_m(double lon1, double lat1, double lon2, double lat2) {
  constexpr double kEarthRadiusM = 6371008.8;
  constexpr double kDeg = 3.14159265358979323846 / 180.0;
  const double dlat = (lat2 - lat1) * kDeg;
  const double dlon = (lon2 - lon1) * kDeg;
  const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * kDeg) * std::cos(lat2 * kDeg) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(a));
}

double quantize(double v) { return std::round(v * 10.0) / 10.0; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the bundled synthetic station/matrix dataset"};
  std::string out_dir = "data";
  int n = 150;
  double box_km = 26.0;
  int cap_min = 2, cap_max = 3;
  int special_cap_min = 0, special_cap_max = 0;  // 0 = same range as regular
  double detour_base = 1.3, detour_spread = 0.25;
  std::uint64_t seed = 6;
  app.add_option("--out-dir", out_dir);
  app.add_option("--n", n);
  app.add_option("--box-km", box_km, "side of the square the stations are scattered over");
  app.add_option("--cap-min", cap_min);
  app.add_option("--cap-max", cap_max);
  app.add_option("--special-cap-min", special_cap_min,
                 "capacity floor for metro/school stations (0 = regular range)");
  app.add_option("--special-cap-max", special_cap_max);
  app.add_option("--detour-base", detour_base, "road/great-circle ratio floor");
  app.add_option("--detour-spread", detour_spread, "random detour on top of the floor");
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  rebal::Rng rng(seed);
  std::vector<rebal::Station> stations(n);

  stations[0] = {0, "Roppongi First Building", kDepotLon, kDepotLat,
                 cap_min + static_cast<int>(rng.next_below(cap_max - cap_min + 1)),
                 rebal::StationTag::Regular};
  const double half_lat = box_km / 2.0 / 111.32;
  const double half_lon = box_km / 2.0 / (111.32 * std::cos(kDepotLat * 3.14159265 / 180.0));
  for (int i = 1; i < n; ++i) {
    rebal::Station s;
    s.id = i;
    char name[32];
    std::snprintf(name, sizeof name, "Port %03d", i);
    s.name = name;
    s.longitude = kDepotLon + (rng.next_double() * 2.0 - 1.0) * half_lon;
    s.latitude = kDepotLat + (rng.next_double() * 2.0 - 1.0) * half_lat;
    s.capacity = cap_min + static_cast<int>(rng.next_below(cap_max - cap_min + 1));
    s.tag = rebal::StationTag::Regular;
    stations[i] = std::move(s);
  }
  // 11 metro-adjacent and 23 school/company-adjacent stations.
  int metro_left = 11, school_left = 23;
  while (metro_left + school_left > 0) {
    const int i = 1 + static_cast<int>(rng.next_below(n - 1));
    if (stations[i].tag != rebal::StationTag::Regular) continue;
    if (metro_left > 0) {
      stations[i].tag = rebal::StationTag::Metro;
      --metro_left;
    } else {
      stations[i].tag = rebal::StationTag::SchoolCompany;
      --school_left;
    }
    if (special_cap_min > 0 && special_cap_max >= special_cap_min)
      stations[i].capacity =
          special_cap_min + static_cast<int>(rng.next_below(special_cap_max - special_cap_min + 1));
  }

  rebal::DistanceMatrix matrix(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double crow = haversine_m(stations[i].longitude, stations[i].latitude,
                                      stations[j].longitude, stations[j].latitude);
      const double detour = detour_base + detour_spread * rng.next_double();
      matrix.at(i, j) = quantize(crow * detour);
    }
  }

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir / "blocks");
  rebal::save_stations_csv(stations, dir / "stations.csv");
  rebal::save_matrix(matrix, dir / "matrix.txt");
  rebal::save_profile(rebal::default_profile(), dir / "profile.csv");

  int block_no = 0;
  for (int r0 = 0; r0 < n; r0 += rebal::kMaxBlockSide) {
    for (int c0 = 0; c0 < n; c0 += rebal::kMaxBlockSide) {
      rebal::MatrixBlock block;
      for (int i = r0; i < std::min(n, r0 + rebal::kMaxBlockSide); ++i)
        block.row_ids.push_back(i);
      for (int j = c0; j < std::min(n, c0 + rebal::kMaxBlockSide); ++j)
        block.col_ids.push_back(j);
      for (int i : block.row_ids) {
        std::vector<double> row;
        for (int j : block.col_ids) row.push_back(matrix(i, j));
        block.values.push_back(std::move(row));
      }
      char name[32];
      std::snprintf(name, sizeof name, "block_%03d.json", block_no++);
      rebal::save_block(block, dir / "blocks" / name);
    }
  }

  std::cout << "wrote " << n << " stations, matrix and " << block_no << " blocks under "
            << out_dir << '\n';
  return 0;
}
