// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmp/kzg.hpp"
#include "pmp/multiproof.hpp"
#include "pmp/poly.hpp"
#include "pmp/wire.hpp"

namespace pmp {

/// Bytes of payload per scalar; 31 bytes always sit below the modulus.
inline constexpr std::size_t kChunkBytes = 31;

struct GridDims {
  std::uint32_t rows = 1;
  std::uint32_t cols = 1;  // before extension
  std::uint32_t extension_factor = 2;

  std::uint32_t extended_cols() const { return cols * extension_factor; }
  std::uint64_t extended_cells() const { return std::uint64_t{rows} * extended_cols(); }
  std::uint64_t capacity_bytes() const { return std::uint64_t{rows} * cols * kChunkBytes; }
  void validate() const;
};

/// Row-wise Reed-Solomon extended grid with one KZG commitment per row.
/// Row r's first `cols` cells carry the data; the rest are evaluations of
/// the same degree < cols polynomial over the remaining domain points.
struct DataGrid {
  GridDims dims;
  EvaluationDomain row_domain;
  std::vector<std::vector<Scalar>> cells;  // rows x extended_cols
  std::vector<Polynomial> row_polys;
  std::vector<Commitment> row_commitments;

  const Scalar& at(const Coordinate& c) const { return cells[c.row][c.col]; }
};

/// Throws std::invalid_argument when data exceeds rows*cols*31 bytes or the
/// row polynomial degree (cols - 1) exceeds the SRS bound.
DataGrid build_grid(const SRS& srs, std::span<const std::uint8_t> data, const GridDims& dims);

/// Contiguous blocks [j*g, (j+1)*g). Throws when g does not divide |domain|.
std::vector<MicroDomain> partition_micro_domains(const EvaluationDomain& row_domain, std::size_t g);

struct GroupId {
  std::uint32_t band = 0;
  std::uint32_t micro = 0;
  friend auto operator<=>(const GroupId&, const GroupId&) = default;
};

/// (row / rows_per_group, col / g). Throws std::out_of_range off-grid.
GroupId coordinate_to_group(const Coordinate& c, const GridDims& dims, std::uint32_t g,
                            std::uint32_t rows_per_group);

struct RowRange {
  std::uint32_t start = 0;
  std::uint32_t end = 0;  // exclusive
};

/// Region covered by a group; the last band is short when rows_per_group
/// does not divide rows.
wire::GCellBlock group_block(const GroupId& id, const GridDims& dims, std::uint32_t g,
                             std::uint32_t rows_per_group);

/// Full evaluation vectors of rows [band.start, band.end) on md.
OpenedGroup build_opened_group(const DataGrid& grid, const RowRange& band, const MicroDomain& md);

/// Scalar holding up to 31 payload bytes in its low bytes.
Scalar chunk_to_scalar(std::span<const std::uint8_t> chunk);

}  // namespace pmp
