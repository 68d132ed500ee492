// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pmp/grid.hpp"
#include "support/oracle.hpp"

using namespace pmp;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng());
  return v;
}

const SRS& shared_srs() {
  static const SRS srs = SRS::generate(16, Scalar(0x5eed));
  return srs;
}

}  // namespace

TEST(BuildGrid, EmptyData) {
  const auto grid = build_grid(shared_srs(), {}, {1, 2, 2});
  ASSERT_EQ(grid.cells.size(), 1u);
  ASSERT_EQ(grid.cells[0].size(), 4u);
  for (const auto& s : grid.cells[0]) EXPECT_TRUE(s.is_zero());
  EXPECT_TRUE(grid.row_commitments[0].point.is_identity());
}

TEST(BuildGrid, SingleChunkHandInterpolation) {
  const std::vector<std::uint8_t> data(31, 0x01);
  const auto grid = build_grid(shared_srs(), data, {1, 2, 2});
  Bytes32 le{};
  std::fill(le.begin(), le.begin() + 31, 0x01);
  const Scalar a = *Scalar::from_canonical(le);
  EXPECT_EQ(grid.cells[0][0], a);
  EXPECT_TRUE(grid.cells[0][1].is_zero());
  // Line through (w0, a) and (w1, 0): f(x) = a (x - w1) / (w0 - w1)
  const auto& dom = grid.row_domain;
  for (std::size_t c = 0; c < 4; ++c)
    EXPECT_EQ(grid.cells[0][c], a * (dom[c] - dom[1]) * (dom[0] - dom[1]).inverse()) << c;
}

TEST(BuildGrid, RowConsistencyOnRandomBlock) {
  std::mt19937_64 rng(61);
  const GridDims dims{4, 8, 2};
  const auto data = random_bytes(dims.capacity_bytes(), rng);
  const auto grid = build_grid(shared_srs(), data, dims);
  EXPECT_EQ(grid.row_domain.size(), 16u);
  EXPECT_EQ(grid.row_domain[1].pow(16), Scalar::one());
  for (std::uint32_t r = 0; r < dims.rows; ++r) {
    const auto systematic = grid.row_domain.points().first(8);
    const auto f = interpolate(systematic, std::span(grid.cells[r]).first(8));
    EXPECT_LE(f.degree(), 7);
    for (std::size_t c = 0; c < 16; ++c) EXPECT_EQ(pmp::testing::power_sum(f, grid.row_domain[c]), grid.cells[r][c]);
    EXPECT_EQ(grid.row_commitments[r], commit(shared_srs(), f));
  }
  // chunks land in row-major order
  EXPECT_EQ(grid.cells[0][1], chunk_to_scalar(std::span(data).subspan(31, 31)));
  EXPECT_EQ(grid.cells[1][0], chunk_to_scalar(std::span(data).subspan(8 * 31, 31)));
}

TEST(BuildGrid, AnyColsSubsetReconstructs) {
  std::mt19937_64 rng(62);
  const GridDims dims{2, 4, 2};
  const auto grid = build_grid(shared_srs(), random_bytes(dims.capacity_bytes(), rng), dims);
  // every 4-subset of the 8 extended positions
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    for (std::uint32_t r = 0; r < dims.rows; ++r) {
      std::vector<Scalar> pts, vals;
      for (unsigned c = 0; c < 8; ++c)
        if (mask & (1u << c)) {
          pts.push_back(grid.row_domain[c]);
          vals.push_back(grid.cells[r][c]);
        }
      for (unsigned c = 0; c < 8; ++c)
        EXPECT_EQ(pmp::testing::lagrange_at(pts, vals, grid.row_domain[c]), grid.cells[r][c]);
    }
  }
}

TEST(BuildGrid, Errors) {
  std::mt19937_64 rng(63);
  EXPECT_THROW(build_grid(shared_srs(), random_bytes(63, rng), {1, 2, 2}), std::invalid_argument);
  EXPECT_THROW(build_grid(shared_srs(), {}, {0, 2, 2}), std::invalid_argument);
  EXPECT_THROW(build_grid(shared_srs(), {}, {1, 2, 1}), std::invalid_argument);
  EXPECT_THROW(build_grid(shared_srs(), {}, {1, 32, 2}), std::invalid_argument);
}

TEST(BuildGrid, NonPowerOfTwoWidthUsesConsecutivePoints) {
  std::mt19937_64 rng(64);
  const GridDims dims{1, 3, 2};
  const auto grid = build_grid(shared_srs(), random_bytes(90, rng), dims);
  EXPECT_EQ(grid.row_domain[0], Scalar(1));
  EXPECT_EQ(grid.row_domain[5], Scalar(6));
  const auto f = interpolate(grid.row_domain.points().first(3), std::span(grid.cells[0]).first(3));
  for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(f(grid.row_domain[c]), grid.cells[0][c]);
}

TEST(Partition, WorkedExample) {
  const auto dom = EvaluationDomain::for_size(8);
  const auto parts = partition_micro_domains(dom, 4);
  ASSERT_EQ(parts.size(), 2u);
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(parts[0].points()[j], dom[j]);
    EXPECT_EQ(parts[1].points()[j], dom[4 + j]);
  }
  EXPECT_EQ(parts[1].offset(), 4u);
}

TEST(Partition, WholeDomainAndErrors) {
  const auto dom = EvaluationDomain::for_size(8);
  const auto one = partition_micro_domains(dom, 8);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].domain(), dom);
  EXPECT_THROW(partition_micro_domains(dom, 3), std::invalid_argument);
  EXPECT_THROW(partition_micro_domains(dom, 0), std::invalid_argument);
}

TEST(Partition, ExactCover) {
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    const auto dom = EvaluationDomain::for_size(n);
    for (std::size_t g = 1; g <= n; g *= 2) {
      std::vector<Scalar> concat;
      for (const auto& md : partition_micro_domains(dom, g))
        concat.insert(concat.end(), md.points().begin(), md.points().end());
      EXPECT_EQ(EvaluationDomain(concat), dom);
    }
  }
}

TEST(CoordinateToGroup, Examples) {
  const GridDims dims{8, 8, 2};
  EXPECT_EQ(coordinate_to_group({0, 0}, dims, 4, 1), (GroupId{0, 0}));
  EXPECT_EQ(coordinate_to_group({5, 7}, dims, 4, 2), (GroupId{2, 1}));
  for (std::uint32_t c = 0; c < 16; ++c)
    EXPECT_EQ(coordinate_to_group({3, c}, dims, 4, 1).micro, c / 4);
  EXPECT_THROW(coordinate_to_group({8, 0}, dims, 4, 1), std::out_of_range);
  EXPECT_THROW(coordinate_to_group({0, 16}, dims, 4, 1), std::out_of_range);
}

TEST(OpenedGroup, WorkedExampleTwoRows) {
  std::mt19937_64 rng(65);
  const GridDims dims{2, 4, 2};
  const auto grid = build_grid(shared_srs(), random_bytes(dims.capacity_bytes(), rng), dims);
  const auto parts = partition_micro_domains(grid.row_domain, 4);
  ASSERT_EQ(parts.size(), 2u);
  const auto group = build_opened_group(grid, {0, 2}, parts[1]);
  ASSERT_EQ(group.values.size(), 2u);
  std::size_t total = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    ASSERT_EQ(group.values[i].size(), 4u);
    total += group.values[i].size();
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(group.values[i][j], grid.row_polys[i](parts[1].points()[j]));
  }
  EXPECT_EQ(total, 8u);
  EXPECT_EQ(group.commitments[0], grid.row_commitments[0]);
  EXPECT_EQ(group.commitments[1], grid.row_commitments[1]);

  const auto block = group_block({0, 1}, dims, 4, 2);
  EXPECT_EQ(block, (wire::GCellBlock{0, 2, 4, 8}));
  const auto proof = open_group(shared_srs(), grid.row_polys, group.commitments, parts[1], block);
  EXPECT_TRUE(verify_group(shared_srs(), group, block, proof));
}

TEST(OpenedGroup, SingleValue) {
  std::mt19937_64 rng(66);
  const GridDims dims{1, 2, 2};
  const auto grid = build_grid(shared_srs(), random_bytes(40, rng), dims);
  const auto parts = partition_micro_domains(grid.row_domain, 1);
  const auto group = build_opened_group(grid, {0, 1}, parts[3]);
  ASSERT_EQ(group.values.size(), 1u);
  ASSERT_EQ(group.values[0].size(), 1u);
  EXPECT_EQ(group.values[0][0], grid.cells[0][3]);
}

TEST(OpenedGroup, Errors) {
  const GridDims dims{2, 4, 2};
  const auto grid = build_grid(shared_srs(), {}, dims);
  const auto parts = partition_micro_domains(grid.row_domain, 4);
  EXPECT_THROW(build_opened_group(grid, {1, 1}, parts[0]), std::invalid_argument);
  EXPECT_THROW(build_opened_group(grid, {0, 3}, parts[0]), std::invalid_argument);
  const auto other = EvaluationDomain::consecutive(8);
  EXPECT_THROW(build_opened_group(grid, {0, 1}, MicroDomain(other, 0, 4)), std::invalid_argument);
}

TEST(OpenedGroup, ExhaustiveSweepVerifies) {
  std::mt19937_64 rng(67);
  const GridDims dims{4, 8, 2};
  const auto grid = build_grid(shared_srs(), random_bytes(900, rng), dims);
  for (std::uint32_t rpg : {1u, 2u}) {
    for (const auto& md : partition_micro_domains(grid.row_domain, 4)) {
      for (std::uint32_t band = 0; band * rpg < dims.rows; ++band) {
        const RowRange rows{band * rpg, std::min(dims.rows, (band + 1) * rpg)};
        const auto group = build_opened_group(grid, rows, md);
        const auto block = group_block({band, static_cast<std::uint32_t>(md.offset() / 4)}, dims, 4, rpg);
        const std::span<const Polynomial> polys(grid.row_polys.begin() + rows.start, rows.end - rows.start);
        const auto proof = open_group(shared_srs(), polys, group.commitments, md, block);
        EXPECT_TRUE(verify_group(shared_srs(), group, block, proof));
      }
    }
  }
}

TEST(OpenedGroup, EveryCoordinateInExactlyOneGroup) {
  std::mt19937_64 rng(68);
  const GridDims dims{4, 4, 2};
  const auto grid = build_grid(shared_srs(), random_bytes(300, rng), dims);
  const std::uint32_t g = 4, rpg = 2;
  const auto parts = partition_micro_domains(grid.row_domain, g);
  std::set<GroupId> groups;
  for (std::uint32_t r = 0; r < dims.rows; ++r) {
    for (std::uint32_t c = 0; c < dims.extended_cols(); ++c) {
      const auto id = coordinate_to_group({r, c}, dims, g, rpg);
      groups.insert(id);
      int containing = 0;
      for (std::uint32_t b = 0; b < 2; ++b)
        for (std::uint32_t m = 0; m < 2; ++m)
          containing += group_block({b, m}, dims, g, rpg).contains({r, c}) ? 1 : 0;
      EXPECT_EQ(containing, 1);
      const auto block = group_block(id, dims, g, rpg);
      EXPECT_TRUE(block.contains({r, c}));
      const auto group = build_opened_group(grid, {block.rows_start, block.rows_end}, parts[id.micro]);
      EXPECT_EQ(group.values[r - block.rows_start][c - block.cols_start], grid.at({r, c}));
    }
  }
  EXPECT_EQ(groups.size(), 4u);
}

TEST(GroupBlock, LastBandMayBeShort) {
  const GridDims dims{3, 4, 2};
  EXPECT_EQ(group_block({1, 0}, dims, 4, 2), (wire::GCellBlock{2, 3, 0, 4}));
  EXPECT_THROW(group_block({2, 0}, dims, 4, 2), std::out_of_range);
  EXPECT_THROW(group_block({0, 2}, dims, 4, 2), std::out_of_range);
}
