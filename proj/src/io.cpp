#include "rebal/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rebal {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("malformed ") + what + ": '" + s + "'");
  }
}

long long parse_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("malformed ") + what + ": '" + s + "'");
  }
}

}  // namespace

std::string format_meters(double v) {
  const double r = std::round(v * 10.0) / 10.0;
  char buf[64];
  if (r == std::floor(r))
    std::snprintf(buf, sizeof buf, "%.0f", r);
  else
    std::snprintf(buf, sizeof buf, "%.1f", r);
  return buf;
}

DistanceMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty matrix file: " + path.string());
  if (header.rfind("n=", 0) != 0)
    throw std::runtime_error("matrix file missing n= header: " + path.string());
  const long long n = parse_int(header.substr(2), "matrix dimension");
  if (n <= 0) throw std::runtime_error("matrix dimension must be positive");
  DistanceMatrix m(static_cast<int>(n));
  std::string line;
  for (long long i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("matrix file truncated: expected " + std::to_string(n) +
                               " rows, got " + std::to_string(i));
    const auto fields = split_csv_line(line);
    if (static_cast<long long>(fields.size()) != n)
      throw std::runtime_error("matrix row " + std::to_string(i) + " has " +
                               std::to_string(fields.size()) + " columns, expected " +
                               std::to_string(n));
    for (long long j = 0; j < n; ++j) {
      const double v = parse_double(fields[j], "matrix entry");
      if (!std::isfinite(v) || v < 0.0)
        throw std::runtime_error("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") must be finite and >= 0");
      m.at(static_cast<StationId>(i), static_cast<StationId>(j)) = v;
    }
  }
  while (std::getline(in, line))
    if (!line.empty())
      throw std::runtime_error("matrix file has extra rows beyond n=" + std::to_string(n));
  for (int i = 0; i < m.size(); ++i)
    if (m(i, i) != 0.0) throw std::runtime_error("matrix diagonal must be zero");
  return m;
}

void save_matrix(const DistanceMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path.string());
  out << "n=" << matrix.size() << '\n';
  for (int i = 0; i < matrix.size(); ++i) {
    for (int j = 0; j < matrix.size(); ++j) {
      if (j) out << ',';
      out << format_meters(matrix(i, j));
    }
    out << '\n';
  }
}

std::vector<Station> load_stations_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open station file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty station file: " + path.string());
  std::vector<Station> stations;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6)
      throw std::runtime_error("station row needs 6 fields, got " + std::to_string(f.size()));
    Station s;
    s.id = static_cast<StationId>(parse_int(f[0], "station id"));
    s.name = f[1];
    s.longitude = parse_double(f[2], "longitude");
    s.latitude = parse_double(f[3], "latitude");
    s.capacity = static_cast<int>(parse_int(f[4], "capacity"));
    s.tag = tag_from_string(f[5]);
    stations.push_back(std::move(s));
  }
  validate_stations(stations);
  return stations;
}

void save_stations_csv(const std::vector<Station>& stations, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write station file: " + path.string());
  out << "id,name,longitude,latitude,capacity,tag\n";
  char buf[64];
  for (const auto& s : stations) {
    std::snprintf(buf, sizeof buf, "%.6f", s.longitude);
    out << s.id << ',' << s.name << ',' << buf << ',';
    std::snprintf(buf, sizeof buf, "%.6f", s.latitude);
    out << buf << ',' << s.capacity << ',' << tag_to_string(s.tag) << '\n';
  }
}

NetworkState load_state_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty state file: " + path.string());
  NetworkState state;
  long long expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3)
      throw std::runtime_error("state row needs 3 fields, got " + std::to_string(f.size()));
    if (parse_int(f[0], "station id") != expected++)
      throw std::runtime_error("state ids must be contiguous from 0");
    state.current.push_back(static_cast<int>(parse_int(f[1], "current")));
    state.baseline.push_back(static_cast<int>(parse_int(f[2], "baseline")));
  }
  return state;
}

void save_state_csv(const NetworkState& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write state file: " + path.string());
  out << "id,current,baseline\n";
  for (int i = 0; i < state.size(); ++i)
    out << i << ',' << state.current[i] << ',' << state.baseline[i] << '\n';
}

TruckSpec load_truck_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open truck spec: " + path.string());
  nlohmann::json j;
  in >> j;
  TruckSpec spec = default_truck_spec();
  if (j.contains("capacity_bikes")) spec.capacity_bikes = j["capacity_bikes"].get<int>();
  if (j.contains("max_distance_m")) spec.max_distance_m = j["max_distance_m"].get<double>();
  if (j.contains("battery_wh")) spec.battery_wh = j["battery_wh"].get<double>();
  if (j.contains("base_wh_per_m")) spec.base_wh_per_m = j["base_wh_per_m"].get<double>();
  if (j.contains("per_bike_wh_per_m")) spec.per_bike_wh_per_m = j["per_bike_wh_per_m"].get<double>();
  if (j.contains("fleet_limit")) spec.fleet_limit = j["fleet_limit"].get<int>();
  if (spec.capacity_bikes < 1 || spec.max_distance_m <= 0 || spec.battery_wh <= 0 ||
      spec.base_wh_per_m <= 0 || spec.per_bike_wh_per_m <= 0 || spec.fleet_limit < 1)
    throw std::runtime_error("truck spec values out of range");
  return spec;
}

std::string plan_to_text(const Plan& plan) {
  std::ostringstream out;
  char buf[64];
  for (const auto& r : plan.routes) {
    out << '[';
    for (std::size_t k = 0; k < r.visits.size(); ++k) {
      if (k) out << ", ";
      out << r.visits[k];
    }
    out << "]\n";
  }
  auto line = [&](const char* label, double v) {
    std::snprintf(buf, sizeof buf, "%.1f", v);
    out << label << ": " << buf << '\n';
  };
  line("total_distance_m", plan.totals.total_distance_m);
  line("total_energy_wh", plan.totals.total_energy_wh);
  line("total_cost_yen", plan.totals.total_cost_yen);
  out << "trucks_used: " << plan.totals.trucks_used << '\n';
  out << "bikes_moved: " << plan.totals.bikes_moved << '\n';
  if (!plan.unserved.empty()) {
    out << "unserved:";
    for (const auto& [id, residual] : plan.unserved) out << ' ' << id << ':' << residual;
    out << '\n';
  }
  return out.str();
}

void save_plan_text(const Plan& plan, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plan file: " + path.string());
  out << plan_to_text(plan);
}

void save_plan_json(const Plan& plan, const std::filesystem::path& path) {
  nlohmann::json j;
  j["routes"] = nlohmann::json::array();
  for (const auto& r : plan.routes) {
    nlohmann::json jr;
    jr["visits"] = r.visits;
    jr["load_after"] = r.load_after;
    jr["distance_m"] = r.distance_m;
    jr["energy_wh"] = r.energy_wh;
    jr["cost_yen"] = r.cost_yen;
    jr["bikes_picked"] = r.bikes_picked;
    jr["bikes_dropped"] = r.bikes_dropped;
    j["routes"].push_back(std::move(jr));
  }
  j["totals"] = {{"total_distance_m", plan.totals.total_distance_m},
                 {"total_energy_wh", plan.totals.total_energy_wh},
                 {"total_cost_yen", plan.totals.total_cost_yen},
                 {"trucks_used", plan.totals.trucks_used},
                 {"bikes_moved", plan.totals.bikes_moved}};
  j["unserved"] = nlohmann::json::array();
  for (const auto& [id, residual] : plan.unserved)
    j["unserved"].push_back({{"id", id}, {"residual", residual}});
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plan file: " + path.string());
  out << j.dump(2) << '\n';
}

Plan load_plan_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file: " + path.string());
  nlohmann::json j;
  in >> j;
  Plan plan;
  for (const auto& jr : j.at("routes")) {
    TruckRoute r;
    r.visits = jr.at("visits").get<std::vector<StationId>>();
    r.load_after = jr.at("load_after").get<std::vector<int>>();
    r.distance_m = jr.at("distance_m").get<double>();
    r.energy_wh = jr.at("energy_wh").get<double>();
    r.cost_yen = jr.at("cost_yen").get<double>();
    r.bikes_picked = jr.at("bikes_picked").get<long long>();
    r.bikes_dropped = jr.at("bikes_dropped").get<long long>();
    plan.routes.push_back(std::move(r));
  }
  const auto& jt = j.at("totals");
  plan.totals.total_distance_m = jt.at("total_distance_m").get<double>();
  plan.totals.total_energy_wh = jt.at("total_energy_wh").get<double>();
  plan.totals.total_cost_yen = jt.at("total_cost_yen").get<double>();
  plan.totals.trucks_used = jt.at("trucks_used").get<int>();
  plan.totals.bikes_moved = jt.at("bikes_moved").get<long long>();
  for (const auto& ju : j.at("unserved"))
    plan.unserved.emplace_back(ju.at("id").get<StationId>(), ju.at("residual").get<long long>());
  return plan;
}

std::string file_hash_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char ch;
  while (in.get(ch)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rebal
