// SPDX-License-Identifier: Apache-2.0
#include "pmp/wire.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace pmp::wire {

namespace {

std::uint32_t read_u32_le(std::span<const std::uint8_t> b, std::size_t off) {
  return std::uint32_t{b[off]} | (std::uint32_t{b[off + 1]} << 8) |
         (std::uint32_t{b[off + 2]} << 16) | (std::uint32_t{b[off + 3]} << 24);
}

void write_u32_le(std::uint8_t* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

void need(std::span<const std::uint8_t> b, std::size_t n, const char* what) {
  if (b.size() < n) throw DecodeError(DecodeError::Kind::Truncated, std::string(what) + ": truncated input");
}

void check_scalar(const ScalarBytes& s) {
  if (!Scalar::from_canonical(s))
    throw DecodeError(DecodeError::Kind::NonCanonicalScalar, "scalar is not below the field modulus");
}

}  // namespace

std::vector<Coordinate> GCellBlock::coordinates() const {
  std::vector<Coordinate> out;
  out.reserve(cell_count());
  for (std::uint32_t r = rows_start; r < rows_end; ++r)
    for (std::uint32_t c = cols_start; c < cols_end; ++c) out.push_back({r, c});
  return out;
}

std::array<std::uint8_t, kBlockSize> encode_block(const GCellBlock& b) {
  std::array<std::uint8_t, kBlockSize> out;
  write_u32_le(out.data(), b.rows_start);
  write_u32_le(out.data() + 4, b.rows_end);
  write_u32_le(out.data() + 8, b.cols_start);
  write_u32_le(out.data() + 12, b.cols_end);
  return out;
}

GCellBlock decode_block(std::span<const std::uint8_t> bytes) {
  need(bytes, kBlockSize, "GCellBlock");
  GCellBlock b{read_u32_le(bytes, 0), read_u32_le(bytes, 4), read_u32_le(bytes, 8),
               read_u32_le(bytes, 12)};
  if (!b.valid()) throw DecodeError(DecodeError::Kind::BadBlock, "GCellBlock: start exceeds end");
  return b;
}

std::vector<std::uint8_t> encode_mcell(const MCell& m) {
  if (m.scalars.empty()) throw std::invalid_argument("encode_mcell: empty group");
  if (!m.block.valid() || m.block.cell_count() != m.scalars.size())
    throw std::invalid_argument("encode_mcell: scalar count does not cover the block");
  std::vector<std::uint8_t> out(m.encoded_size());
  std::uint8_t* p = out.data();
  std::memcpy(p, m.proof.data(), kProofSize);
  p += kProofSize;
  const auto blk = encode_block(m.block);
  std::memcpy(p, blk.data(), kBlockSize);
  p += kBlockSize;
  write_u32_le(p, m.count());
  p += kCountSize;
  for (const auto& s : m.scalars) {
    std::memcpy(p, s.data(), kScalarSize);
    p += kScalarSize;
  }
  return out;
}

MCell decode_mcell(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t kHeader = kProofSize + kBlockSize + kCountSize;
  need(bytes, kHeader, "MCell");
  MCell m;
  std::copy_n(bytes.begin(), kProofSize, m.proof.begin());
  m.block = decode_block(bytes.subspan(kProofSize, kBlockSize));
  const std::uint32_t count = read_u32_le(bytes, kProofSize + kBlockSize);
  if (count == 0) throw DecodeError(DecodeError::Kind::EmptyGroup, "MCell: count is zero");
  const std::size_t body = std::size_t{count} * kScalarSize;
  need(bytes, kHeader + body, "MCell");
  if (bytes.size() != kHeader + body)
    throw DecodeError(DecodeError::Kind::CountMismatch, "MCell: length disagrees with count");
  if (m.block.cell_count() != count)
    throw DecodeError(DecodeError::Kind::CountMismatch, "MCell: count does not cover the block");
  m.scalars.resize(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    std::copy_n(bytes.begin() + kHeader + i * kScalarSize, kScalarSize, m.scalars[i].begin());
    check_scalar(m.scalars[i]);
  }
  return m;
}

std::array<std::uint8_t, kBaselineCellSize> encode_baseline(const BaselineCell& c) {
  std::array<std::uint8_t, kBaselineCellSize> out;
  std::copy(c.proof.begin(), c.proof.end(), out.begin());
  std::copy(c.data.begin(), c.data.end(), out.begin() + kProofSize);
  return out;
}

BaselineCell decode_baseline(std::span<const std::uint8_t> bytes) {
  need(bytes, kBaselineCellSize, "BaselineCell");
  if (bytes.size() != kBaselineCellSize)
    throw DecodeError(DecodeError::Kind::CountMismatch, "BaselineCell: trailing bytes");
  BaselineCell c;
  std::copy_n(bytes.begin(), kProofSize, c.proof.begin());
  std::copy_n(bytes.begin() + kProofSize, kScalarSize, c.data.begin());
  check_scalar(c.data);
  return c;
}

std::vector<std::uint8_t> encode_grouped(const GroupedCell& c) {
  if (c.cells.empty()) throw std::invalid_argument("encode_grouped: empty group");
  if (!c.block.valid() || c.block.cell_count() != c.cells.size())
    throw std::invalid_argument("encode_grouped: cell count does not cover the block");
  std::vector<std::uint8_t> out;
  out.reserve(c.encoded_size());
  const auto blk = encode_block(c.block);
  out.insert(out.end(), blk.begin(), blk.end());
  std::array<std::uint8_t, 4> cnt;
  write_u32_le(cnt.data(), static_cast<std::uint32_t>(c.cells.size()));
  out.insert(out.end(), cnt.begin(), cnt.end());
  for (const auto& cell : c.cells) {
    const auto enc = encode_baseline(cell);
    out.insert(out.end(), enc.begin(), enc.end());
  }
  return out;
}

GroupedCell decode_grouped(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t kHeader = kBlockSize + kCountSize;
  need(bytes, kHeader, "GroupedCell");
  GroupedCell g;
  g.block = decode_block(bytes.first(kBlockSize));
  const std::uint32_t count = read_u32_le(bytes, kBlockSize);
  if (count == 0) throw DecodeError(DecodeError::Kind::EmptyGroup, "GroupedCell: count is zero");
  const std::size_t body = std::size_t{count} * kBaselineCellSize;
  need(bytes, kHeader + body, "GroupedCell");
  if (bytes.size() != kHeader + body)
    throw DecodeError(DecodeError::Kind::CountMismatch, "GroupedCell: length disagrees with count");
  if (g.block.cell_count() != count)
    throw DecodeError(DecodeError::Kind::CountMismatch, "GroupedCell: count does not cover the block");
  g.cells.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i)
    g.cells.push_back(decode_baseline(bytes.subspan(kHeader + i * kBaselineCellSize, kBaselineCellSize)));
  return g;
}

Scalar decode_scalar(std::span<const std::uint8_t, kScalarSize> bytes) {
  auto s = Scalar::from_canonical(bytes);
  if (!s) throw DecodeError(DecodeError::Kind::NonCanonicalScalar, "scalar is not below the field modulus");
  return *s;
}

StorageReport storage_report(std::uint64_t entries, std::uint64_t g) {
  if (g == 0) throw std::invalid_argument("storage_report: group size must be positive");
  if (entries % g != 0) throw std::invalid_argument("storage_report: group size must divide entries");
  StorageReport r;
  r.entries = entries;
  r.group_size = g;
  r.baseline_total_bytes = entries * kBaselineCellSize;
  r.grouped_object_bytes = kScalarSize * g + kProofSize;
  r.grouped_object_count = entries / g;
  r.grouped_total_bytes = r.grouped_object_count * r.grouped_object_bytes;
  const std::uint64_t div = std::gcd(r.grouped_object_bytes, g);
  r.amortized_numerator = r.grouped_object_bytes / div;
  r.amortized_denominator = g / div;
  r.mcell_wire_object_bytes = kProofSize + kBlockSize + kCountSize + kScalarSize * g;
  r.mcell_wire_total_bytes = r.grouped_object_count * r.mcell_wire_object_bytes;
  return r;
}

}  // namespace pmp::wire
