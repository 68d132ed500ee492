// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmp/field.hpp"

namespace pmp {

/// (row, col) in the extended grid.
struct Coordinate {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

namespace wire {

inline constexpr std::size_t kProofSize = 48;
inline constexpr std::size_t kScalarSize = 32;
inline constexpr std::size_t kBlockSize = 16;
inline constexpr std::size_t kCountSize = 4;
inline constexpr std::size_t kBaselineCellSize = kProofSize + kScalarSize;

using ProofBytes = std::array<std::uint8_t, kProofSize>;
using ScalarBytes = std::array<std::uint8_t, kScalarSize>;

class DecodeError : public std::runtime_error {
 public:
  enum class Kind { Truncated, CountMismatch, NonCanonicalScalar, EmptyGroup, BadBlock, BadMagic };

  DecodeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Covered region [rows_start, rows_end) x [cols_start, cols_end).
struct GCellBlock {
  std::uint32_t rows_start = 0;
  std::uint32_t rows_end = 0;
  std::uint32_t cols_start = 0;
  std::uint32_t cols_end = 0;

  std::uint32_t row_count() const { return rows_end - rows_start; }
  std::uint32_t col_count() const { return cols_end - cols_start; }
  std::uint64_t cell_count() const { return std::uint64_t{row_count()} * col_count(); }
  bool valid() const { return rows_start <= rows_end && cols_start <= cols_end; }
  bool contains(const Coordinate& c) const {
    return c.row >= rows_start && c.row < rows_end && c.col >= cols_start && c.col < cols_end;
  }
  /// Row-major list of every covered coordinate.
  std::vector<Coordinate> coordinates() const;

  friend bool operator==(const GCellBlock&, const GCellBlock&) = default;
};

std::array<std::uint8_t, kBlockSize> encode_block(const GCellBlock& b);
GCellBlock decode_block(std::span<const std::uint8_t> bytes);

/// Grouped retrieval object: one aggregated proof over full value vectors.
/// Scalars are row-major over the block: scalars[i * g + j] is row
/// rows_start + i at micro-domain position j.
struct MCell {
  ProofBytes proof{};
  GCellBlock block;
  std::vector<ScalarBytes> scalars;

  std::uint32_t count() const { return static_cast<std::uint32_t>(scalars.size()); }
  std::size_t encoded_size() const { return kProofSize + kBlockSize + kCountSize + kScalarSize * scalars.size(); }
  friend bool operator==(const MCell&, const MCell&) = default;
};

std::vector<std::uint8_t> encode_mcell(const MCell& m);
/// Rejects trailing bytes, short input, count/block disagreement and
/// scalars at or above the field modulus, each with its own Kind.
MCell decode_mcell(std::span<const std::uint8_t> bytes);

/// Per-cell object: an independent opening proof and the 32-byte entry.
struct BaselineCell {
  ProofBytes proof{};
  ScalarBytes data{};
  friend bool operator==(const BaselineCell&, const BaselineCell&) = default;
};

std::array<std::uint8_t, kBaselineCellSize> encode_baseline(const BaselineCell& c);
BaselineCell decode_baseline(std::span<const std::uint8_t> bytes);

/// Grouped transport without aggregation: block, count, then count
/// BaselineCell records (row-major, same order as MCell scalars).
struct GroupedCell {
  GCellBlock block;
  std::vector<BaselineCell> cells;

  std::size_t encoded_size() const { return kBlockSize + kCountSize + kBaselineCellSize * cells.size(); }
  friend bool operator==(const GroupedCell&, const GroupedCell&) = default;
};

std::vector<std::uint8_t> encode_grouped(const GroupedCell& c);
GroupedCell decode_grouped(std::span<const std::uint8_t> bytes);

/// Canonical little-endian scalar bytes; throws DecodeError on >= modulus.
Scalar decode_scalar(std::span<const std::uint8_t, kScalarSize> bytes);

/// Proof-amortization view of stored bytes: data and proofs only, no
/// GCellBlock, count or framing. The on-wire MCell size is reported
/// alongside in mcell_wire_total_bytes.
struct StorageReport {
  std::uint64_t entries = 0;
  std::uint64_t group_size = 0;
  std::uint64_t baseline_cell_bytes = kBaselineCellSize;
  std::uint64_t baseline_total_bytes = 0;
  std::uint64_t grouped_object_bytes = 0;
  std::uint64_t grouped_object_count = 0;
  std::uint64_t grouped_total_bytes = 0;
  /// amortized bytes per entry = amortized_numerator / amortized_denominator (reduced).
  std::uint64_t amortized_numerator = 0;
  std::uint64_t amortized_denominator = 1;
  std::uint64_t mcell_wire_object_bytes = 0;
  std::uint64_t mcell_wire_total_bytes = 0;

  bool amortized_is_integer() const { return amortized_denominator == 1; }
  double amortized_bytes_per_entry() const {
    return static_cast<double>(amortized_numerator) / static_cast<double>(amortized_denominator);
  }
};

/// Throws std::invalid_argument if g == 0 or g does not divide entries.
StorageReport storage_report(std::uint64_t entries, std::uint64_t g);

}  // namespace wire
}  // namespace pmp
