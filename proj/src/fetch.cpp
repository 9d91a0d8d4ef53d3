#include "rebal/fetch.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#ifdef REBAL_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

namespace rebal {
namespace {

void append_points(std::string& s, std::vector<BatchPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const BatchPoint& a, const BatchPoint& b) {
    return std::tie(a.longitude, a.latitude) < std::tie(b.longitude, b.latitude);
  });
  char buf[64];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f;", p.longitude, p.latitude);
    s += buf;
  }
}

}  // namespace

BlockCache::BlockCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string BlockCache::key_for(const std::vector<BatchPoint>& rows,
                                const std::vector<BatchPoint>& cols) const {
  std::string canonical = "rows:";
  append_points(canonical, rows);
  canonical += "cols:";
  append_points(canonical, cols);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<MatrixBlock> BlockCache::lookup(const std::string& key) const {
  const auto path = dir_ / (key + ".json");
  if (!std::filesystem::exists(path)) return std::nullopt;
  return load_block(path);
}

void BlockCache::store(const std::string& key, const MatrixBlock& block) {
  std::lock_guard lock(write_mutex_);
  const auto path = dir_ / (key + ".json");
  const auto tmp = dir_ / (key + ".json.tmp");
  save_block(block, tmp);
  std::filesystem::rename(tmp, path);
}

MatrixBlock fetch_block(const std::vector<BatchPoint>& rows, const std::vector<BatchPoint>& cols,
                        const ApiConfig& config, BlockCache& cache, int* network_calls) {
  if (rows.empty() || cols.empty()) throw std::invalid_argument("fetch_block: empty batch");
  if (rows.size() > kMaxBlockSide || cols.size() > kMaxBlockSide)
    throw std::invalid_argument("fetch_block: batch exceeds the 50-point API limit");

  const std::string key = cache.key_for(rows, cols);
  if (auto cached = cache.lookup(key)) return *cached;
  if (config.offline())
    throw UncachedOffline("fetch_block: batch " + key + " not cached and no API key set");

  nlohmann::json body;
  auto& locations = body["locations"];
  std::vector<int> sources, destinations;
  for (const auto& p : rows) {
    sources.push_back(static_cast<int>(locations.size()));
    locations.push_back({p.longitude, p.latitude});
  }
  for (const auto& p : cols) {
    destinations.push_back(static_cast<int>(locations.size()));
    locations.push_back({p.longitude, p.latitude});
  }
  body["sources"] = sources;
  body["destinations"] = destinations;
  body["metrics"] = {"distance"};

  httplib::Client client(config.endpoint);
  client.set_connection_timeout(15);
  client.set_read_timeout(60);
  httplib::Headers headers{{"Authorization", config.api_key}};
  const auto res =
      client.Post("/v2/matrix/" + config.profile, headers, body.dump(), "application/json");
  if (network_calls) ++*network_calls;
  if (!res) throw NetworkError("fetch_block: no response from " + config.endpoint);
  if (res->status == 429 || res->status == 403)
    throw QuotaExceeded("fetch_block: API quota exhausted (HTTP " + std::to_string(res->status) +
                        ")");
  if (res->status != 200)
    throw NetworkError("fetch_block: HTTP " + std::to_string(res->status) + ": " + res->body);

  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(res->body);
  } catch (const std::exception& e) {
    throw NetworkError(std::string("fetch_block: unparseable response: ") + e.what());
  }

  MatrixBlock block;
  for (const auto& p : rows) block.row_ids.push_back(p.id);
  for (const auto& p : cols) block.col_ids.push_back(p.id);
  block.values = parsed.at("distances").get<std::vector<std::vector<double>>>();
  validate_block(block);
  cache.store(key, block);
  return block;
}

}  // namespace rebal
