#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rebal/core.hpp"
#include "rebal/stitch.hpp"

namespace rebal {

struct ApiConfig {
  std::string endpoint;     // e.g. https://api.openrouteservice.org
  std::string api_key;      // empty = offline, cache only
  std::filesystem::path cache_dir;
  std::string profile = "driving-car";

  bool offline() const { return api_key.empty(); }
};

struct NetworkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QuotaExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UncachedOffline : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One point of a matrix request: a station id plus its coordinates.
struct BatchPoint {
  StationId id;
  double longitude;
  double latitude;
};

/// Disk cache of MatrixBlock responses keyed by the sorted batch coordinates.
/// Writes are serialized per cache instance.
class BlockCache {
 public:
  explicit BlockCache(std::filesystem::path dir);

  std::string key_for(const std::vector<BatchPoint>& rows,
                      const std::vector<BatchPoint>& cols) const;
  std::optional<MatrixBlock> lookup(const std::string& key) const;
  void store(const std::string& key, const MatrixBlock& block);

 private:
  std::filesystem::path dir_;
  mutable std::mutex write_mutex_;
};

/// Fetch the rows x cols distance block, serving from cache when possible.
/// Batches are limited to 50 points per side. In offline mode a cache miss
/// raises UncachedOffline. `network_calls`, when given, counts actual HTTP
/// requests made.
MatrixBlock fetch_block(const std::vector<BatchPoint>& rows, const std::vector<BatchPoint>& cols,
                        const ApiConfig& config, BlockCache& cache, int* network_calls = nullptr);

}  // namespace rebal
