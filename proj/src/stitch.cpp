#include "rebal/stitch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace rebal {

CoverageGap::CoverageGap(StationId i, StationId j)
    : std::runtime_error("stitch: cell (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") never covered by any block"),
      row(i),
      col(j) {}

void validate_block(const MatrixBlock& block) {
  if (block.row_ids.empty() || block.col_ids.empty())
    throw std::invalid_argument("block: empty row or column id list");
  if (block.row_ids.size() > kMaxBlockSide || block.col_ids.size() > kMaxBlockSide)
    throw std::invalid_argument("block: exceeds the 50x50 routing-API limit");
  if (block.values.size() != block.row_ids.size())
    throw std::invalid_argument("block: row count does not match row_ids");
  for (const auto& row : block.values) {
    if (row.size() != block.col_ids.size())
      throw std::invalid_argument("block: column count does not match col_ids");
    for (double v : row)
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("block: distances must be finite and >= 0");
  }
}

DistanceMatrix stitch(const std::vector<MatrixBlock>& blocks, int n, StitchReport* report) {
  if (n <= 0) throw std::invalid_argument("stitch: n must be positive");
  DistanceMatrix m(n);
  std::vector<char> written(static_cast<std::size_t>(n) * n, 0);
  int overlaps = 0;
  for (const auto& block : blocks) {
    validate_block(block);
    for (StationId id : block.row_ids)
      if (id < 0 || id >= n) throw DimensionMismatch("block row id " + std::to_string(id) +
                                                     " outside matrix of size " + std::to_string(n));
    for (StationId id : block.col_ids)
      if (id < 0 || id >= n) throw DimensionMismatch("block col id " + std::to_string(id) +
                                                     " outside matrix of size " + std::to_string(n));
    for (std::size_t r = 0; r < block.row_ids.size(); ++r) {
      for (std::size_t c = 0; c < block.col_ids.size(); ++c) {
        const StationId i = block.row_ids[r];
        const StationId j = block.col_ids[c];
        auto& flag = written[static_cast<std::size_t>(i) * n + j];
        if (flag) ++overlaps;
        flag = 1;
        m.at(i, j) = block.values[r][c];
      }
    }
  }
  for (StationId i = 0; i < n; ++i) {
    for (StationId j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!written[static_cast<std::size_t>(i) * n + j]) throw CoverageGap(i, j);
    }
  }
  for (StationId i = 0; i < n; ++i) m.at(i, i) = 0.0;
  if (report) report->overlap_writes = overlaps;
  return m;
}

MatrixBlock load_block(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open block file: " + path.string());
  nlohmann::json j;
  in >> j;
  MatrixBlock block;
  block.row_ids = j.at("rows").get<std::vector<StationId>>();
  block.col_ids = j.at("cols").get<std::vector<StationId>>();
  block.values = j.at("values").get<std::vector<std::vector<double>>>();
  validate_block(block);
  return block;
}

void save_block(const MatrixBlock& block, const std::filesystem::path& path) {
  validate_block(block);
  nlohmann::json j;
  j["rows"] = block.row_ids;
  j["cols"] = block.col_ids;
  j["values"] = block.values;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write block file: " + path.string());
  out << j.dump() << '\n';
}

std::vector<MatrixBlock> load_blocks_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  std::vector<MatrixBlock> blocks;
  blocks.reserve(paths.size());
  for (const auto& p : paths) blocks.push_back(load_block(p));
  return blocks;
}

}  // namespace rebal
