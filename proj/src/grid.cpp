// SPDX-License-Identifier: Apache-2.0
#include "pmp/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmp {

void GridDims::validate() const {
  if (rows == 0 || cols == 0) throw std::invalid_argument("GridDims: rows and cols must be positive");
  if (extension_factor < 2) throw std::invalid_argument("GridDims: extension factor must be at least 2");
}

Scalar chunk_to_scalar(std::span<const std::uint8_t> chunk) {
  if (chunk.size() > kChunkBytes) throw std::invalid_argument("chunk_to_scalar: chunk exceeds 31 bytes");
  Bytes32 le{};
  std::copy(chunk.begin(), chunk.end(), le.begin());
  return *Scalar::from_canonical(le);
}

DataGrid build_grid(const SRS& srs, std::span<const std::uint8_t> data, const GridDims& dims) {
  dims.validate();
  if (data.size() > dims.capacity_bytes()) throw std::invalid_argument("build_grid: data exceeds grid capacity");
  if (dims.cols - 1 > srs.degree_bound())
    throw std::invalid_argument("build_grid: row polynomial degree exceeds SRS bound");

  DataGrid grid{dims, EvaluationDomain::for_size(dims.extended_cols()), {}, {}, {}};
  const auto systematic = grid.row_domain.points().first(dims.cols);
  grid.cells.resize(dims.rows);
  grid.row_polys.reserve(dims.rows);
  grid.row_commitments.reserve(dims.rows);

  std::size_t offset = 0;
  for (std::uint32_t r = 0; r < dims.rows; ++r) {
    std::vector<Scalar> original(dims.cols);
    for (auto& s : original) {
      if (offset < data.size()) {
        const std::size_t n = std::min(kChunkBytes, data.size() - offset);
        s = chunk_to_scalar(data.subspan(offset, n));
        offset += n;
      }
    }
    Polynomial f = interpolate(systematic, original);
    auto& row = grid.cells[r];
    row.reserve(dims.extended_cols());
    row.insert(row.end(), original.begin(), original.end());
    for (std::size_t c = dims.cols; c < dims.extended_cols(); ++c) row.push_back(f(grid.row_domain[c]));
    grid.row_commitments.push_back(commit(srs, f));
    grid.row_polys.push_back(std::move(f));
  }
  return grid;
}

std::vector<MicroDomain> partition_micro_domains(const EvaluationDomain& row_domain, std::size_t g) {
  if (g == 0 || row_domain.size() % g != 0)
    throw std::invalid_argument("partition_micro_domains: g must divide the row domain size");
  std::vector<MicroDomain> out;
  out.reserve(row_domain.size() / g);
  for (std::size_t off = 0; off < row_domain.size(); off += g) out.emplace_back(row_domain, off, g);
  return out;
}

GroupId coordinate_to_group(const Coordinate& c, const GridDims& dims, std::uint32_t g,
                            std::uint32_t rows_per_group) {
  if (g == 0 || rows_per_group == 0) throw std::invalid_argument("coordinate_to_group: zero group size");
  if (c.row >= dims.rows || c.col >= dims.extended_cols())
    throw std::out_of_range("coordinate_to_group: coordinate outside the extended grid");
  return {c.row / rows_per_group, c.col / g};
}

wire::GCellBlock group_block(const GroupId& id, const GridDims& dims, std::uint32_t g,
                             std::uint32_t rows_per_group) {
  const std::uint32_t rs = id.band * rows_per_group;
  const std::uint32_t cs = id.micro * g;
  if (rs >= dims.rows || cs + g > dims.extended_cols())
    throw std::out_of_range("group_block: group outside the extended grid");
  return {rs, std::min(rs + rows_per_group, dims.rows), cs, cs + g};
}

OpenedGroup build_opened_group(const DataGrid& grid, const RowRange& band, const MicroDomain& md) {
  if (band.start >= band.end || band.end > grid.dims.rows)
    throw std::invalid_argument("build_opened_group: band outside the grid");
  if (md.offset() + md.size() > grid.row_domain.size() ||
      !std::equal(md.points().begin(), md.points().end(), grid.row_domain.points().begin() + md.offset()))
    throw std::invalid_argument("build_opened_group: micro-domain is not part of the row domain");

  OpenedGroup group{{}, {}, md};
  for (std::uint32_t r = band.start; r < band.end; ++r) {
    group.commitments.push_back(grid.row_commitments[r]);
    const auto& row = grid.cells[r];
    group.values.emplace_back(row.begin() + md.offset(), row.begin() + md.offset() + md.size());
  }
  return group;
}

}  // namespace pmp
