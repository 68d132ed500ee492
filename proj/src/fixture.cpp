// SPDX-License-Identifier: Apache-2.0
#include "pmp/fixture.hpp"

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace pmp::fixture {

namespace {

using wire::DecodeError;
using Kind_ = DecodeError::Kind;

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t off) {
  if (off + 4 > b.size()) throw DecodeError(Kind_::Truncated, "fixture: truncated integer");
  return std::uint32_t{b[off]} | (std::uint32_t{b[off + 1]} << 8) | (std::uint32_t{b[off + 2]} << 16) |
         (std::uint32_t{b[off + 3]} << 24);
}

std::vector<std::uint8_t> u32s(std::initializer_list<std::uint32_t> vals) {
  ByteWriter w;
  for (auto v : vals) w.put_u32_le(v);
  return std::move(w).bytes();
}

void expect_sections(const Container& c, std::size_t n) {
  if (c.sections.size() != n) throw DecodeError(Kind_::CountMismatch, "fixture: unexpected section count");
}

GridDims read_dims(std::span<const std::uint8_t> s) {
  if (s.size() != 12) throw DecodeError(Kind_::CountMismatch, "fixture: bad dims section");
  GridDims d{read_u32(s, 0), read_u32(s, 4), read_u32(s, 8)};
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw DecodeError(Kind_::BadBlock, e.what());
  }
  return d;
}

}  // namespace

std::vector<std::uint8_t> encode_container(const Container& c) {
  ByteWriter w;
  w.put_ascii("PMPD");
  w.put_u8(kVersion);
  w.put_u8(static_cast<std::uint8_t>(c.kind));
  w.put_u32_le(static_cast<std::uint32_t>(c.sections.size()));
  for (const auto& s : c.sections) {
    w.put_u32_le(static_cast<std::uint32_t>(s.size()));
    w.put_bytes(s);
  }
  return std::move(w).bytes();
}

Container decode_container(std::span<const std::uint8_t> bytes, Kind expected) {
  if (bytes.size() < 10) throw DecodeError(Kind_::Truncated, "fixture: truncated header");
  if (!std::equal(bytes.begin(), bytes.begin() + 4, "PMPD") || bytes[4] != kVersion)
    throw DecodeError(Kind_::BadMagic, "fixture: bad magic or version");
  if (bytes[5] != static_cast<std::uint8_t>(expected))
    throw DecodeError(Kind_::BadMagic, "fixture: unexpected fixture kind");
  Container c{expected, {}};
  const std::uint32_t n = read_u32(bytes, 6);
  std::size_t off = 10;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t len = read_u32(bytes, off);
    off += 4;
    if (off + len > bytes.size()) throw DecodeError(Kind_::Truncated, "fixture: truncated section");
    c.sections.emplace_back(bytes.begin() + off, bytes.begin() + off + len);
    off += len;
  }
  if (off != bytes.size()) throw DecodeError(Kind_::CountMismatch, "fixture: trailing bytes");
  return c;
}

std::vector<std::uint8_t> encode_srs(const SRS& srs) {
  Container c{Kind::Srs, {u32s({static_cast<std::uint32_t>(srs.degree_bound())}), {}, {}}};
  for (const auto& p : srs.g1_powers()) {
    const auto b = p.compress();
    c.sections[1].insert(c.sections[1].end(), b.begin(), b.end());
  }
  for (const auto& p : srs.g2_powers()) {
    const auto b = p.compress();
    c.sections[2].insert(c.sections[2].end(), b.begin(), b.end());
  }
  return encode_container(c);
}

SRS decode_srs(std::span<const std::uint8_t> bytes) {
  const auto c = decode_container(bytes, Kind::Srs);
  expect_sections(c, 3);
  const std::size_t n = std::size_t{read_u32(c.sections[0], 0)} + 1;
  if (c.sections[1].size() != n * G1::kCompressedSize || c.sections[2].size() != n * G2::kCompressedSize)
    throw DecodeError(Kind_::CountMismatch, "fixture: SRS power count mismatch");
  std::vector<G1> g1;
  std::vector<G2> g2;
  for (std::size_t i = 0; i < n; ++i) {
    g1.push_back(G1::decompress(std::span<const std::uint8_t, 48>(c.sections[1].data() + i * 48, 48)));
    g2.push_back(G2::decompress(std::span<const std::uint8_t, 96>(c.sections[2].data() + i * 96, 96)));
  }
  return SRS::from_powers(std::move(g1), std::move(g2));
}

std::vector<std::uint8_t> encode_grid(const DataGrid& grid) {
  Container c{Kind::Grid, {u32s({grid.dims.rows, grid.dims.cols, grid.dims.extension_factor}), {}}};
  for (const auto& row : grid.cells)
    for (const auto& s : row) {
      const auto b = s.to_bytes();
      c.sections[1].insert(c.sections[1].end(), b.begin(), b.end());
    }
  return encode_container(c);
}

DataGrid decode_grid(std::span<const std::uint8_t> bytes, const SRS& srs) {
  const auto c = decode_container(bytes, Kind::Grid);
  expect_sections(c, 2);
  const GridDims dims = read_dims(c.sections[0]);
  if (c.sections[1].size() != dims.extended_cells() * wire::kScalarSize)
    throw DecodeError(Kind_::CountMismatch, "fixture: grid cell count mismatch");
  if (dims.cols - 1 > srs.degree_bound()) throw std::invalid_argument("decode_grid: grid exceeds SRS degree bound");

  DataGrid grid{dims, EvaluationDomain::for_size(dims.extended_cols()), {}, {}, {}};
  const auto systematic = grid.row_domain.points().first(dims.cols);
  std::size_t off = 0;
  for (std::uint32_t r = 0; r < dims.rows; ++r) {
    std::vector<Scalar> row;
    for (std::uint32_t col = 0; col < dims.extended_cols(); ++col, off += wire::kScalarSize)
      row.push_back(wire::decode_scalar(std::span<const std::uint8_t, 32>(c.sections[1].data() + off, 32)));
    Polynomial f = interpolate(systematic, std::span<const Scalar>(row).first(dims.cols));
    for (std::uint32_t col = dims.cols; col < dims.extended_cols(); ++col)
      if (!(f(grid.row_domain[col]) == row[col]))
        throw std::invalid_argument("decode_grid: row is not a consistent Reed-Solomon codeword");
    grid.row_commitments.push_back(commit(srs, f));
    grid.row_polys.push_back(std::move(f));
    grid.cells.push_back(std::move(row));
  }
  return grid;
}

std::vector<std::uint8_t> encode_header(const BlockHeader& h) {
  Container c{Kind::Header,
              {std::vector<std::uint8_t>(h.block_id.begin(), h.block_id.end()),
               u32s({h.dims.rows, h.dims.cols, h.dims.extension_factor}),
               {}}};
  for (const auto& cm : h.row_commitments) {
    const auto b = cm.to_bytes();
    c.sections[2].insert(c.sections[2].end(), b.begin(), b.end());
  }
  return encode_container(c);
}

BlockHeader decode_header(std::span<const std::uint8_t> bytes) {
  const auto c = decode_container(bytes, Kind::Header);
  expect_sections(c, 3);
  if (c.sections[0].size() != 32) throw DecodeError(Kind_::CountMismatch, "fixture: bad block id");
  BlockHeader h;
  std::copy(c.sections[0].begin(), c.sections[0].end(), h.block_id.begin());
  h.dims = read_dims(c.sections[1]);
  if (c.sections[2].size() != std::size_t{h.dims.rows} * G1::kCompressedSize)
    throw DecodeError(Kind_::CountMismatch, "fixture: header commitment count mismatch");
  for (std::uint32_t r = 0; r < h.dims.rows; ++r)
    h.row_commitments.push_back(
        Commitment::from_bytes(std::span<const std::uint8_t, 48>(c.sections[2].data() + r * 48, 48)));
  return h;
}

std::vector<std::uint8_t> encode_mcells(const MCellSet& set) {
  Container c{Kind::MCells, {u32s({set.layout.g, set.layout.rows_per_group})}};
  for (const auto& r : set.records) c.sections.push_back(r);
  return encode_container(c);
}

MCellSet decode_mcells(std::span<const std::uint8_t> bytes) {
  auto c = decode_container(bytes, Kind::MCells);
  if (c.sections.empty() || c.sections[0].size() != 8)
    throw DecodeError(Kind_::CountMismatch, "fixture: missing MCell layout section");
  MCellSet set;
  set.layout = {read_u32(c.sections[0], 0), read_u32(c.sections[0], 4)};
  set.records.assign(std::make_move_iterator(c.sections.begin() + 1), std::make_move_iterator(c.sections.end()));
  return set;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& p, std::span<const std::uint8_t> bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace pmp::fixture
