#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "rebal/core.hpp"

namespace rebal {

inline constexpr int kMaxBlockSide = 50;  // routing API solves at most 50x50

/// One routing-API response: a |rows| x |cols| slice of the full matrix.
struct MatrixBlock {
  std::vector<StationId> row_ids;
  std::vector<StationId> col_ids;
  std::vector<std::vector<double>> values;
};

struct CoverageGap : std::runtime_error {
  CoverageGap(StationId i, StationId j);
  StationId row;
  StationId col;
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

void validate_block(const MatrixBlock& block);

struct StitchReport {
  int overlap_writes = 0;  // cells written more than once (last write wins)
};

/// Assemble an n x n matrix from blocks. Every off-diagonal cell must be
/// covered; overlaps resolve last-write-wins; the diagonal is forced to 0.
DistanceMatrix stitch(const std::vector<MatrixBlock>& blocks, int n,
                      StitchReport* report = nullptr);

MatrixBlock load_block(const std::filesystem::path& path);
void save_block(const MatrixBlock& block, const std::filesystem::path& path);

/// Load every *.json block in a directory, sorted by filename.
std::vector<MatrixBlock> load_blocks_dir(const std::filesystem::path& dir);

}  // namespace rebal
