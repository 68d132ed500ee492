// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "pmp/wire.hpp"

using namespace pmp;
using namespace pmp::wire;

namespace {

ProofBytes random_proof(std::mt19937_64& rng) {
  ProofBytes p;
  for (auto& b : p) b = static_cast<std::uint8_t>(rng());
  return p;
}

MCell random_mcell(std::mt19937_64& rng) {
  MCell m;
  m.proof = random_proof(rng);
  const std::uint32_t rs = static_cast<std::uint32_t>(rng() % 1000);
  const std::uint32_t cs = static_cast<std::uint32_t>(rng() % 1000);
  m.block = {rs, rs + 1 + static_cast<std::uint32_t>(rng() % 3), cs,
             cs + 1 + static_cast<std::uint32_t>(rng() % 16)};
  for (std::uint64_t i = 0; i < m.block.cell_count(); ++i) m.scalars.push_back(Scalar::random(rng).to_bytes());
  return m;
}

BaselineCell random_baseline(std::mt19937_64& rng) {
  return {random_proof(rng), Scalar::random(rng).to_bytes()};
}

template <typename F>
DecodeError::Kind decode_kind(F&& f) {
  try {
    f();
  } catch (const DecodeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected DecodeError";
  return DecodeError::Kind::BadMagic;
}

}  // namespace

TEST(Block, EncodesSixteenBytesLittleEndian) {
  const GCellBlock b{1, 2, 0x01020304, 0xa0b0c0d0};
  const auto e = encode_block(b);
  EXPECT_EQ(e[0], 1);
  EXPECT_EQ(e[4], 2);
  EXPECT_EQ(e[8], 0x04);
  EXPECT_EQ(e[11], 0x01);
  EXPECT_EQ(e[15], 0xa0);
  EXPECT_EQ(decode_block(e), b);
}

TEST(Block, HalfOpenRanges) {
  const GCellBlock b{2, 4, 4, 8};
  EXPECT_EQ(b.cell_count(), 8u);
  EXPECT_TRUE(b.contains({3, 7}));
  EXPECT_FALSE(b.contains({4, 7}));
  EXPECT_FALSE(b.contains({3, 8}));
  const auto coords = b.coordinates();
  ASSERT_EQ(coords.size(), 8u);
  EXPECT_EQ(coords.front(), (Coordinate{2, 4}));
  EXPECT_EQ(coords[4], (Coordinate{3, 4}));
}

TEST(Block, InvertedRangeRejected) {
  const auto e = encode_block({5, 4, 0, 4});
  EXPECT_EQ(decode_kind([&] { decode_block(e); }), DecodeError::Kind::BadBlock);
}

TEST(MCell, WorkedSize) {
  std::mt19937_64 rng(1);
  MCell m;
  m.proof = random_proof(rng);
  m.block = {0, 1, 0, 4};
  for (int i = 0; i < 4; ++i) m.scalars.push_back(Scalar::random(rng).to_bytes());
  EXPECT_EQ(encode_mcell(m).size(), 196u);
}

TEST(MCell, EmptyGroupRejected) {
  MCell m;
  m.block = {0, 0, 0, 0};
  EXPECT_THROW(encode_mcell(m), std::invalid_argument);
  std::vector<std::uint8_t> bytes(68, 0);
  EXPECT_EQ(decode_kind([&] { decode_mcell(bytes); }), DecodeError::Kind::EmptyGroup);
}

TEST(MCell, FuzzRoundTrip) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10000; ++i) {
    const auto m = random_mcell(rng);
    const auto bytes = encode_mcell(m);
    ASSERT_EQ(bytes.size(), 48 + 16 + 4 + 32 * m.scalars.size());
    const auto back = decode_mcell(bytes);
    ASSERT_EQ(back, m);
    ASSERT_EQ(encode_mcell(back), bytes);
  }
}

TEST(MCell, EveryTruncationRejected) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto bytes = encode_mcell(random_mcell(rng));
    for (std::size_t n = 0; n < bytes.size(); ++n) {
      const std::span<const std::uint8_t> cut(bytes.data(), n);
      EXPECT_THROW(decode_mcell(cut), DecodeError) << n;
    }
  }
}

TEST(MCell, ErrorKinds) {
  std::mt19937_64 rng(4);
  MCell m;
  m.proof = random_proof(rng);
  m.block = {0, 1, 0, 2};
  m.scalars = {Scalar(1).to_bytes(), Scalar(2).to_bytes()};
  const auto good = encode_mcell(m);

  const std::span<const std::uint8_t> half(good.data(), good.size() - 1);
  EXPECT_EQ(decode_kind([&] { decode_mcell(half); }), DecodeError::Kind::Truncated);

  auto extra = good;
  extra.push_back(0);
  EXPECT_EQ(decode_kind([&] { decode_mcell(extra); }), DecodeError::Kind::CountMismatch);

  auto count = good;
  count[64] = 1;  // claims one scalar for a 2-cell block
  count.resize(good.size() - 32);
  EXPECT_EQ(decode_kind([&] { decode_mcell(count); }), DecodeError::Kind::CountMismatch);

  auto noncanon = good;
  std::fill(noncanon.begin() + 68, noncanon.begin() + 100, 0xff);
  EXPECT_EQ(decode_kind([&] { decode_mcell(noncanon); }), DecodeError::Kind::NonCanonicalScalar);
}

TEST(Baseline, EightyBytesAndFuzz) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const auto c = random_baseline(rng);
    const auto bytes = encode_baseline(c);
    ASSERT_EQ(bytes.size(), 80u);
    ASSERT_EQ(decode_baseline(bytes), c);
  }
  const auto bytes = encode_baseline(random_baseline(rng));
  for (std::size_t n = 0; n < bytes.size(); ++n)
    EXPECT_EQ(decode_kind([&] { decode_baseline(std::span(bytes.data(), n)); }), DecodeError::Kind::Truncated);
  auto bad = bytes;
  std::fill(bad.begin() + 48, bad.end(), 0xff);
  EXPECT_EQ(decode_kind([&] { decode_baseline(bad); }), DecodeError::Kind::NonCanonicalScalar);
}

TEST(Grouped, RoundTripAndTruncation) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 500; ++i) {
    GroupedCell g;
    const std::uint32_t cs = static_cast<std::uint32_t>(rng() % 64);
    g.block = {0, 1, cs, cs + 1 + static_cast<std::uint32_t>(rng() % 8)};
    for (std::uint64_t j = 0; j < g.block.cell_count(); ++j) g.cells.push_back(random_baseline(rng));
    const auto bytes = encode_grouped(g);
    ASSERT_EQ(bytes.size(), 20 + 80 * g.cells.size());
    ASSERT_EQ(decode_grouped(bytes), g);
    if (i < 10)
      for (std::size_t n = 0; n < bytes.size(); ++n)
        EXPECT_THROW(decode_grouped(std::span(bytes.data(), n)), DecodeError);
  }
}

TEST(Storage, SixtyFourEntries) {
  const auto r4 = storage_report(64, 4);
  EXPECT_EQ(r4.baseline_total_bytes, 5120u);
  EXPECT_EQ(r4.grouped_object_bytes, 176u);
  EXPECT_TRUE(r4.amortized_is_integer());
  EXPECT_EQ(r4.amortized_numerator, 44u);
  EXPECT_EQ(r4.grouped_total_bytes, 2816u);
  EXPECT_EQ(r4.grouped_object_count, 16u);
  EXPECT_EQ(r4.mcell_wire_object_bytes, 196u);
  EXPECT_EQ(r4.mcell_wire_total_bytes, 16u * 196u);

  const auto r1 = storage_report(64, 1);
  EXPECT_EQ(r1.baseline_total_bytes, 5120u);
  EXPECT_EQ(r1.grouped_object_bytes, 80u);
}

TEST(Storage, SingleGroup) {
  const auto r = storage_report(4, 4);
  EXPECT_EQ(r.grouped_object_count, 1u);
  EXPECT_EQ(r.grouped_total_bytes, 176u);
}

TEST(Storage, Errors) {
  EXPECT_THROW(storage_report(64, 3), std::invalid_argument);
  EXPECT_THROW(storage_report(64, 0), std::invalid_argument);
}

TEST(Storage, AmortizationDecreasesTowardThirtyTwo) {
  double prev = 1e9;
  for (std::uint64_t g = 1; g <= 1024; ++g) {
    const auto r = storage_report(g * 6, g);
    const double a = r.amortized_bytes_per_entry();
    EXPECT_LT(a, prev) << g;
    EXPECT_GT(a, 32.0) << g;
    EXPECT_EQ(r.grouped_total_bytes, r.grouped_object_count * (48 + 32 * g));
    prev = a;
  }
  const auto r5 = storage_report(5, 5);
  EXPECT_FALSE(r5.amortized_is_integer());
  EXPECT_EQ(r5.amortized_numerator, 208u);
  EXPECT_EQ(r5.amortized_denominator, 5u);
}
