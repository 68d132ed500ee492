// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "pmp/kzg.hpp"
#include "support/oracle.hpp"

using namespace pmp;
using pmp::testing::KnownSecret;
using pmp::testing::power_sum;

TEST(Srs, SecretOneGivesGenerators) {
  const auto srs = SRS::generate(1, Scalar::one());
  ASSERT_EQ(srs.g1_powers().size(), 2u);
  ASSERT_EQ(srs.g2_powers().size(), 2u);
  EXPECT_EQ(srs.g1_powers()[0], G1::generator());
  EXPECT_EQ(srs.g1_powers()[1], G1::generator());
  EXPECT_EQ(srs.g2_powers()[1], G2::generator());
}

TEST(Srs, SecretTwoCube) {
  const auto srs = SRS::generate(4, Scalar(2));
  EXPECT_EQ(srs.g1_powers()[3], G1::generator() * Scalar(8));
  EXPECT_EQ(srs.g2_powers()[4], G2::generator() * Scalar(16));
  EXPECT_EQ(srs.degree_bound(), 4u);
}

TEST(Srs, RejectsDegenerateSetup) {
  EXPECT_THROW(SRS::generate(0, Scalar(3)), std::invalid_argument);
  EXPECT_THROW(SRS::generate(4, Scalar::zero()), std::invalid_argument);
}

TEST(Srs, IdDependsOnPowers) {
  const auto a = SRS::generate(4, Scalar(2));
  const auto b = SRS::generate(4, Scalar(2));
  const auto c = SRS::generate(4, Scalar(3));
  const auto d = SRS::generate(5, Scalar(2));
  EXPECT_EQ(a.id(), b.id());
  EXPECT_NE(a.id(), c.id());
  EXPECT_NE(a.id(), d.id());
}

TEST(Srs, FromPowersValidatesGenerators) {
  const auto a = SRS::generate(3, Scalar(5));
  std::vector<G1> g1(a.g1_powers().begin(), a.g1_powers().end());
  std::vector<G2> g2(a.g2_powers().begin(), a.g2_powers().end());
  EXPECT_EQ(SRS::from_powers(g1, g2).id(), a.id());
  std::swap(g1[0], g1[1]);
  EXPECT_THROW(SRS::from_powers(g1, g2), std::invalid_argument);
}

TEST(Srs, FreshCacheIsIndependent) {
  const auto a = SRS::generate(2, Scalar(5));
  Digest32 key{};
  a.store_g2(key, G2::generator());
  EXPECT_TRUE(a.cached_g2(key).has_value());
  const auto b = a.with_fresh_cache();
  EXPECT_FALSE(b.cached_g2(key).has_value());
  EXPECT_EQ(a.id(), b.id());
  a.clear_cache();
  EXPECT_FALSE(a.cached_g2(key).has_value());
}

TEST(Commit, TrivialPolynomials) {
  const auto srs = SRS::generate(4, Scalar(9));
  EXPECT_TRUE(commit(srs, Polynomial{}).point.is_identity());
  EXPECT_EQ(commit(srs, Polynomial::constant(Scalar::one())).point, G1::generator());
}

TEST(Commit, DegreeOverflow) {
  const auto srs = SRS::generate(4, Scalar(9));
  std::mt19937_64 rng(1);
  EXPECT_THROW(commit(srs, Polynomial::random(5, rng)), std::invalid_argument);
}

TEST(Commit, MatchesKnownSecretOracle) {
  std::mt19937_64 rng(21);
  const auto ks = KnownSecret::make(16, rng);
  for (int i = 0; i < 20; ++i) {
    const auto p = Polynomial::random(rng() % 17, rng);
    EXPECT_EQ(commit(ks.srs, p).point, ks.commitment(p));
  }
}

TEST(OpenSingle, ConstantPolynomialHasIdentityWitness) {
  std::mt19937_64 rng(22);
  const auto srs = SRS::generate(4, Scalar(9));
  const auto [v, pi] = open_single(srs, Polynomial::constant(Scalar(42)), Scalar::random(rng));
  EXPECT_EQ(v, Scalar(42));
  EXPECT_TRUE(pi.witness.is_identity());
}

TEST(OpenSingle, IdentityPolynomial) {
  const auto srs = SRS::generate(4, Scalar(9));
  const auto [v, pi] = open_single(srs, Polynomial({Scalar::zero(), Scalar::one()}), Scalar(3));
  EXPECT_EQ(v, Scalar(3));
  EXPECT_EQ(pi.witness, G1::generator());
}

TEST(OpenSingle, WitnessMatchesOracleAndVerifies) {
  std::mt19937_64 rng(23);
  const auto ks = KnownSecret::make(16, rng);
  for (int i = 0; i < 20; ++i) {
    const auto p = Polynomial::random(rng() % 17, rng);
    const Scalar z = Scalar::random(rng);
    const auto [v, pi] = open_single(ks.srs, p, z);
    EXPECT_EQ(v, power_sum(p, z));
    // (p(tau) - p(z)) / (tau - z)
    EXPECT_EQ(pi.witness, ks.g1_of((power_sum(p, ks.tau) - v) * (ks.tau - z).inverse()));
    const auto cm = commit(ks.srs, p);
    EXPECT_TRUE(verify_single(ks.srs, cm, z, v, pi));
    EXPECT_FALSE(verify_single(ks.srs, cm, z, v + Scalar::one(), pi));
    auto bytes = v.to_bytes();
    bytes[0] ^= 0x01;
    EXPECT_FALSE(verify_single(ks.srs, cm, z, *Scalar::from_canonical(bytes), pi));
  }
}

TEST(VerifySingle, IdentityWitnessRejectsWrongValue) {
  std::mt19937_64 rng(24);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  const auto p = Polynomial::random(5, rng);
  const Scalar z = Scalar::random(rng);
  EXPECT_FALSE(verify_single(srs, commit(srs, p), z, p(z) + Scalar(1), OpeningProof{G1{}}));
}

TEST(VerifySingle, CountsTwoPairings) {
  std::mt19937_64 rng(25);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  const auto p = Polynomial::random(5, rng);
  const Scalar z = Scalar::random(rng);
  const auto [v, pi] = open_single(srs, p, z);
  OpCounters ops;
  verify_single(srs, commit(srs, p), z, v, pi, &ops);
  EXPECT_EQ(ops.pairings, 2u);
  EXPECT_EQ(ops.interpolations, 0u);
  verify_single(srs, commit(srs, p), z, v + Scalar::one(), pi, &ops);
  EXPECT_EQ(ops.pairings, 4u);
}

TEST(Encoding, CompressedRoundTripAndRejection) {
  std::mt19937_64 rng(26);
  const auto srs = SRS::generate(4, Scalar::random(rng));
  const auto cm = commit(srs, Polynomial::random(4, rng));
  const auto bytes = cm.to_bytes();
  EXPECT_EQ(Commitment::from_bytes(bytes), cm);

  auto bad = bytes;
  bad[0] &= 0x7f;  // clear compression flag
  EXPECT_THROW(Commitment::from_bytes(bad), EncodingError);

  // x = 0 with compression bit set is not on the curve y^2 = x^3 + 4 as a valid encoding
  std::array<std::uint8_t, 48> junk{};
  junk[0] = 0x80;
  EXPECT_THROW(OpeningProof::from_bytes(junk), EncodingError);

  junk.fill(0xff);
  EXPECT_THROW(OpeningProof::from_bytes(junk), EncodingError);

  std::array<std::uint8_t, 48> inf{};
  inf[0] = 0xc0;
  EXPECT_TRUE(OpeningProof::from_bytes(inf).witness.is_identity());
}

TEST(Encoding, RejectsPointsOutsideSubgroup) {
  // Search small x for a point on E(Fp) whose compressed form decodes but is not
  // in the prime-order subgroup (cofactor > 1 makes most curve points fail).
  int rejected = 0;
  for (std::uint8_t x = 1; x < 40 && rejected == 0; ++x) {
    std::array<std::uint8_t, 48> enc{};
    enc[0] = 0x80;
    enc[47] = x;
    blst_p1_affine aff;
    if (blst_p1_uncompress(&aff, enc.data()) != BLST_SUCCESS) continue;
    if (blst_p1_affine_in_g1(&aff)) continue;
    EXPECT_THROW(G1::decompress(enc), EncodingError);
    ++rejected;
  }
  EXPECT_EQ(rejected, 1);
}

namespace {

std::vector<SingleOpening> honest_openings(const SRS& srs, std::size_t n, std::mt19937_64& rng) {
  std::vector<SingleOpening> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = Polynomial::random(1 + rng() % srs.degree_bound(), rng);
    const Scalar z = Scalar::random(rng);
    const auto [v, pi] = open_single(srs, p, z);
    out.push_back({commit(srs, p), z, v, pi});
  }
  return out;
}

}  // namespace

TEST(BatchVerify, EmptyBatchThrows) {
  const auto srs = SRS::generate(2, Scalar(3));
  EXPECT_THROW(verify_batch_independent(srs, {}, Scalar::one()), std::invalid_argument);
}

TEST(BatchVerify, HonestBatchAccepts) {
  std::mt19937_64 rng(31);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  const auto batch = honest_openings(srs, 10, rng);
  EXPECT_TRUE(verify_batch_independent(srs, batch, derive_batch_rho(srs, batch)));
  OpCounters ops;
  verify_batch_independent(srs, batch, Scalar(5), &ops);
  EXPECT_EQ(ops.pairings, 2u);
  EXPECT_EQ(ops.g1_scalar_mults, 31u);
}

TEST(BatchVerify, OneTamperedValueRejectsForEveryRho) {
  std::mt19937_64 rng(32);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  auto batch = honest_openings(srs, 10, rng);
  batch[6].value += Scalar::one();
  for (int t = 0; t < 100; ++t) {
    Scalar rho = Scalar::random(rng);
    EXPECT_FALSE(verify_batch_independent(srs, batch, rho));
  }
  EXPECT_FALSE(verify_batch_independent(srs, batch, derive_batch_rho(srs, batch)));
}

TEST(BatchVerify, BatchOfOneMatchesSingle) {
  std::mt19937_64 rng(33);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  for (int t = 0; t < 200; ++t) {
    auto one = honest_openings(srs, 1, rng);
    switch (t % 4) {
      case 1: one[0].value += Scalar::one(); break;
      case 2: one[0].point += Scalar::one(); break;
      case 3: one[0].proof.witness += G1::generator(); break;
      default: break;
    }
    const auto& o = one[0];
    const bool single = verify_single(srs, o.commitment, o.point, o.value, o.proof);
    EXPECT_EQ(single, t % 4 == 0);
    EXPECT_EQ(verify_batch_independent(srs, one, derive_batch_rho(srs, one)), single);
  }
}

TEST(BatchVerify, RhoBindsEveryOpening) {
  std::mt19937_64 rng(34);
  const auto srs = SRS::generate(4, Scalar::random(rng));
  auto batch = honest_openings(srs, 3, rng);
  const Scalar rho = derive_batch_rho(srs, batch);
  EXPECT_EQ(rho, derive_batch_rho(srs, batch));
  std::swap(batch[0], batch[1]);
  EXPECT_NE(rho, derive_batch_rho(srs, batch));
}
