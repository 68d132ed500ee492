// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "pmp/fixture.hpp"

using namespace pmp;
using namespace pmp::fixture;
using wire::DecodeError;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.dims = {3, 4, 2};
  c.srs_degree = 8;
  return c;
}

DecodeError::Kind decode_kind(auto&& f) {
  try {
    f();
  } catch (const DecodeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected DecodeError";
  return DecodeError::Kind::BadBlock;
}

}  // namespace

TEST(Fixture, SrsRoundTrip) {
  const auto block = make_block(small_config());
  const auto bytes = encode_srs(block.srs);
  const auto back = decode_srs(bytes);
  EXPECT_EQ(back.id(), block.srs.id());
  EXPECT_EQ(back.degree_bound(), 8u);
  EXPECT_EQ(encode_srs(back), bytes);
}

TEST(Fixture, GridRoundTripRederivesCommitments) {
  const auto block = make_block(small_config());
  const auto bytes = encode_grid(block.grid);
  const auto back = decode_grid(bytes, block.srs);
  EXPECT_EQ(back.cells, block.grid.cells);
  EXPECT_EQ(back.row_commitments, block.grid.row_commitments);
  EXPECT_EQ(encode_grid(back), bytes);
}

TEST(Fixture, GridWithBrokenCodewordRejected) {
  const auto block = make_block(small_config());
  auto grid = block.grid;
  grid.cells[1][6] += Scalar::one();  // parity cell
  EXPECT_THROW(decode_grid(encode_grid(grid), block.srs), std::invalid_argument);
}

TEST(Fixture, HeaderRoundTrip) {
  const auto block = make_block(small_config());
  const auto bytes = encode_header(block.header);
  const auto back = decode_header(bytes);
  EXPECT_EQ(back.block_id, block.header.block_id);
  EXPECT_EQ(back.dims.rows, 3u);
  EXPECT_EQ(back.dims.extended_cols(), 8u);
  EXPECT_EQ(back.row_commitments, block.header.row_commitments);
  EXPECT_EQ(encode_header(back), bytes);
}

TEST(Fixture, MCellSetRoundTrip) {
  const auto block = make_block(small_config());
  const Layout layout{4, 2};
  MCellSet set{layout, {}};
  for (auto& o : build_objects(block.srs, block.grid, block.header.block_id, layout, ConfigMode::PMP))
    set.records.push_back(o.bytes);
  ASSERT_EQ(set.records.size(), 4u);  // 2 bands x 2 micro-domains
  const auto bytes = encode_mcells(set);
  const auto back = decode_mcells(bytes);
  EXPECT_EQ(back.layout.g, 4u);
  EXPECT_EQ(back.layout.rows_per_group, 2u);
  EXPECT_EQ(back.records, set.records);
  for (std::uint32_t band = 0; band < 2; ++band)
    for (std::uint32_t micro = 0; micro < 2; ++micro)
      EXPECT_TRUE(verify_mcell_bytes(block.srs, block.header, layout, {band, micro}, back.records[band * 2 + micro]));
}

TEST(Fixture, ContainerErrors) {
  const auto block = make_block(small_config());
  const auto bytes = encode_header(block.header);

  EXPECT_EQ(decode_kind([&] { decode_srs(bytes); }), DecodeError::Kind::BadMagic);
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_EQ(decode_kind([&] { decode_header(magic); }), DecodeError::Kind::BadMagic);
  auto version = bytes;
  version[4] = 0x02;
  EXPECT_EQ(decode_kind([&] { decode_header(version); }), DecodeError::Kind::BadMagic);
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_EQ(decode_kind([&] { decode_header(trailing); }), DecodeError::Kind::CountMismatch);
  for (std::size_t n = 0; n < bytes.size(); n += 7)
    EXPECT_THROW(decode_header(std::span(bytes.data(), n)), DecodeError) << n;
}

TEST(Fixture, FileRoundTrip) {
  const auto path = std::filesystem::path(::testing::TempDir()) / "pmp_fixture_file.bin";
  const std::vector<std::uint8_t> data{0, 1, 2, 255};
  write_file(path, data);
  EXPECT_EQ(read_file(path), data);
  std::filesystem::remove(path);
  EXPECT_THROW(read_file(path), std::runtime_error);
}
