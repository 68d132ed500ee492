// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "pmp/multiproof.hpp"
#include "pmp/transcript.hpp"
#include "support/oracle.hpp"

using namespace pmp;
using pmp::testing::KnownSecret;
using pmp::testing::power_sum;

namespace {

struct Instance {
  std::vector<Polynomial> polys;
  std::vector<Commitment> commitments;
  EvaluationDomain domain;
  MicroDomain md;
  OpenedGroup group;
};

Instance make_instance(const SRS& srs, std::size_t k, std::size_t g, std::size_t deg, std::mt19937_64& rng) {
  const std::size_t n = g * 2;
  auto domain = EvaluationDomain::for_size(n);
  MicroDomain md(domain, g * (rng() % 2), g);
  std::vector<Polynomial> polys;
  std::vector<Commitment> cms;
  std::vector<std::vector<Scalar>> values;
  for (std::size_t i = 0; i < k; ++i) {
    polys.push_back(Polynomial::random(deg, rng));
    cms.push_back(commit(srs, polys.back()));
    std::vector<Scalar> row;
    for (const auto& z : md.points()) row.push_back(polys.back()(z));
    values.push_back(std::move(row));
  }
  OpenedGroup group{cms, values, md};
  return {std::move(polys), std::move(cms), std::move(domain), md, std::move(group)};
}

Transcript fixed_transcript() {
  Transcript t;
  t.srs_id.fill(0x11);
  t.commitments.push_back(G1::generator().compress());
  t.commitments.push_back((G1::generator() * Scalar(2)).compress());
  t.micro_domain = {Scalar(1), Scalar(2), Scalar(3), Scalar(4)};
  t.block = {0, 2, 0, 4};
  t.coords = t.block.coordinates();
  return t;
}

}  // namespace

TEST(Transcript, SerializationLayout) {
  const auto t = fixed_transcript();
  const auto bytes = t.serialize();
  const std::size_t expected = 10 + 32 + 4 + 2 * 48 + 4 + 4 * 32 + 4 + 8 * 8 + 16;
  ASSERT_EQ(bytes.size(), expected);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 10), "PMP-DAS-v1");
  // commitment count, big-endian
  EXPECT_EQ(bytes[42], 0);
  EXPECT_EQ(bytes[45], 2);
}

TEST(Transcript, GoldenGamma) {
  EXPECT_EQ(derive_gamma(fixed_transcript()).to_hex(),
            "5011ddec319f2be89df2855a38366910055ecabfbb021b07e4c8fbd6f8c4cb68");
}

TEST(Transcript, GammaSensitiveToEveryComponent) {
  const auto base = fixed_transcript();
  const Scalar g0 = derive_gamma(base);
  EXPECT_EQ(g0, derive_gamma(base));
  EXPECT_FALSE(g0.is_zero());

  auto t = base;
  std::swap(t.commitments[0], t.commitments[1]);
  EXPECT_NE(derive_gamma(t), g0);

  t = base;
  t.block.rows_start = 1;
  EXPECT_NE(derive_gamma(t), g0);

  t = base;
  t.srs_id[31] ^= 1;
  EXPECT_NE(derive_gamma(t), g0);

  t = base;
  t.micro_domain[3] = Scalar(5);
  EXPECT_NE(derive_gamma(t), g0);

  t = base;
  t.coords.pop_back();
  EXPECT_NE(derive_gamma(t), g0);
}

TEST(OpenShared, ReducesToSingleOpening) {
  std::mt19937_64 rng(41);
  const auto srs = SRS::generate(16, Scalar::random(rng));
  for (int t = 0; t < 10; ++t) {
    const auto p = Polynomial::random(1 + rng() % 16, rng);
    const auto dom = EvaluationDomain::for_size(8);
    const MicroDomain md(dom, rng() % 8, 1);
    const std::vector<Polynomial> polys{p};
    const auto proof = open_shared(srs, polys, md, Scalar::random(rng));
    EXPECT_EQ(proof.witness, open_single(srs, p, md.points()[0]).proof.witness);
  }
}

TEST(OpenShared, ZeroPolynomialContributesNothing) {
  std::mt19937_64 rng(42);
  const auto srs = SRS::generate(16, Scalar::random(rng));
  const auto dom = EvaluationDomain::for_size(8);
  const MicroDomain md(dom, 4, 4);
  const auto f = Polynomial::random(12, rng);
  const Scalar gamma = Scalar::random(rng);
  const std::vector<Polynomial> one{f};
  const std::vector<Polynomial> two{f, Polynomial{}};
  EXPECT_EQ(open_shared(srs, two, md, gamma), open_shared(srs, one, md, gamma));
}

TEST(OpenShared, Errors) {
  std::mt19937_64 rng(43);
  const auto srs = SRS::generate(4, Scalar::random(rng));
  const auto dom = EvaluationDomain::for_size(4);
  const MicroDomain md(dom, 0, 2);
  EXPECT_THROW(open_shared(srs, {}, md, Scalar(1)), std::invalid_argument);
  const std::vector<Polynomial> big{Polynomial::random(5, rng)};
  EXPECT_THROW(open_shared(srs, big, md, Scalar(1)), std::invalid_argument);
  const std::vector<Polynomial> ok{Polynomial::random(3, rng)};
  EXPECT_THROW(open_shared(srs, ok, md, Scalar::zero()), std::invalid_argument);
}

TEST(OpenShared, MatchesKnownSecretOracleAndVerifies) {
  std::mt19937_64 rng(44);
  const auto ks = KnownSecret::make(16, rng);
  auto inst = make_instance(ks.srs, 3, 4, 16, rng);
  const Scalar gamma = Scalar::random(rng);
  const auto proof = open_shared(ks.srs, inst.polys, inst.md, gamma);

  std::vector<std::vector<Scalar>> sets(3, std::vector<Scalar>(inst.md.points().begin(), inst.md.points().end()));
  EXPECT_EQ(proof.witness, ks.generic_witness(inst.polys, sets, gamma));
  EXPECT_TRUE(verify_shared(ks.srs, inst.group, proof, gamma));
}

TEST(VerifyShared, PairingCheckReproducesInScalarField) {
  std::mt19937_64 rng(45);
  const auto ks = KnownSecret::make(16, rng);
  auto inst = make_instance(ks.srs, 4, 4, 15, rng);
  const Scalar gamma = Scalar::random(rng);
  std::vector<std::vector<Scalar>> sets(4, std::vector<Scalar>(inst.md.points().begin(), inst.md.points().end()));
  // h(tau) from the pointwise oracle, then check both pairing sides in Fr
  Scalar h;
  Scalar w = Scalar::one();
  for (std::size_t i = 0; i < 4; ++i) {
    const Scalar num = power_sum(inst.polys[i], ks.tau) -
                       pmp::testing::lagrange_at(sets[i], inst.group.values[i], ks.tau);
    h += w * num * pmp::testing::vanishing_at(sets[i], ks.tau).inverse();
    w *= gamma;
  }
  EXPECT_TRUE(ks.shared_check(inst.polys, sets[0], inst.group.values, h, gamma));
  auto tampered = inst.group.values;
  tampered[2][1] += Scalar::one();
  EXPECT_FALSE(ks.shared_check(inst.polys, sets[0], tampered, h, gamma));
  EXPECT_EQ(open_shared(ks.srs, inst.polys, inst.md, gamma).witness, ks.g1_of(h));
}

TEST(VerifyShared, TamperSweepOverAllValues) {
  std::mt19937_64 rng(46);
  const auto srs = SRS::generate(16, Scalar::random(rng));
  auto inst = make_instance(srs, 3, 4, 16, rng);
  const Scalar gamma = Scalar::random(rng);
  const auto proof = open_shared(srs, inst.polys, inst.md, gamma);
  ASSERT_TRUE(verify_shared(srs, inst.group, proof, gamma));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      auto g = inst.group;
      g.values[i][j] += Scalar::one();
      EXPECT_FALSE(verify_shared(srs, g, proof, gamma)) << i << "," << j;
    }
  }
}

TEST(VerifyShared, GammaBindingDependsOnK) {
  std::mt19937_64 rng(47);
  const auto srs = SRS::generate(16, Scalar::random(rng));
  const Scalar gamma = Scalar::random(rng);
  auto multi = make_instance(srs, 2, 4, 10, rng);
  const auto proof = open_shared(srs, multi.polys, multi.md, gamma);
  EXPECT_FALSE(verify_shared(srs, multi.group, proof, gamma + Scalar::one()));

  auto single = make_instance(srs, 1, 4, 10, rng);
  const auto p1 = open_shared(srs, single.polys, single.md, gamma);
  for (int t = 0; t < 10; ++t) EXPECT_TRUE(verify_shared(srs, single.group, p1, Scalar::random(rng)));
}

TEST(VerifyShared, ShapeViolations) {
  std::mt19937_64 rng(48);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  auto inst = make_instance(srs, 2, 4, 6, rng);
  const auto proof = open_shared(srs, inst.polys, inst.md, Scalar(3));
  auto g = inst.group;
  g.values[1].pop_back();
  EXPECT_THROW(verify_shared(srs, g, proof, Scalar(3)), std::invalid_argument);
  g = inst.group;
  g.values.pop_back();
  EXPECT_THROW(verify_shared(srs, g, proof, Scalar(3)), std::invalid_argument);
  g = inst.group;
  g.commitments.clear();
  g.values.clear();
  EXPECT_THROW(verify_shared(srs, g, proof, Scalar(3)), std::invalid_argument);
}

TEST(OpenGeneric, SharedSetsMatchSpecialization) {
  std::mt19937_64 rng(49);
  const auto srs = SRS::generate(32, Scalar::random(rng));
  for (int t = 0; t < 10; ++t) {
    auto inst = make_instance(srs, 1 + t % 4, 4, 20 + t, rng);
    const Scalar gamma = Scalar::random(rng);
    std::vector<EvaluationDomain> sets(inst.polys.size(), inst.md.domain());
    EXPECT_EQ(open_generic(srs, inst.polys, sets, inst.group.values, gamma),
              open_shared(srs, inst.polys, inst.md, gamma));
  }
}

TEST(OpenGeneric, SinglePointIsKzgWitness) {
  std::mt19937_64 rng(50);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  const auto p = Polynomial::random(8, rng);
  const Scalar z = Scalar::random(rng);
  const std::vector<Polynomial> polys{p};
  const std::vector<EvaluationDomain> sets{EvaluationDomain({z})};
  const std::vector<std::vector<Scalar>> vals{{p(z)}};
  EXPECT_EQ(open_generic(srs, polys, sets, vals, Scalar(7)).witness, open_single(srs, p, z).proof.witness);
}

TEST(OpenGeneric, MixedSetsMatchOracle) {
  std::mt19937_64 rng(51);
  const auto ks = KnownSecret::make(16, rng);
  std::vector<Polynomial> polys;
  std::vector<EvaluationDomain> sets;
  std::vector<std::vector<Scalar>> pts, vals;
  for (std::size_t sz : {1u, 3u, 5u, 2u}) {
    polys.push_back(Polynomial::random(16, rng));
    pts.push_back(pmp::testing::random_distinct_points(sz, rng));
    sets.emplace_back(pts.back());
    std::vector<Scalar> v;
    for (const auto& z : pts.back()) v.push_back(polys.back()(z));
    vals.push_back(v);
  }
  const Scalar gamma = Scalar::random(rng);
  OpCounters ops;
  EXPECT_EQ(open_generic(ks.srs, polys, sets, vals, gamma, &ops).witness,
            ks.generic_witness(polys, pts, gamma));
  EXPECT_EQ(ops.interpolations, 4u);
}

TEST(OpenGeneric, DishonestValuesAreAnError) {
  std::mt19937_64 rng(52);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  auto inst = make_instance(srs, 2, 4, 8, rng);
  auto vals = inst.group.values;
  vals[1][0] += Scalar::one();
  std::vector<EvaluationDomain> sets(2, inst.md.domain());
  EXPECT_THROW(open_generic(srs, inst.polys, sets, vals, Scalar(3)), std::invalid_argument);
}

TEST(Multiproof, SpecializationProperty) {
  std::mt19937_64 rng(53);
  const auto ks = KnownSecret::make(64, rng);
  const std::size_t ks_[] = {1, 2, 4, 8};
  const std::size_t gs[] = {1, 4, 8, 16};
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = ks_[t % 4];
    const std::size_t g = gs[(t / 4) % 4];
    const std::size_t d = g + rng() % (65 - g);
    auto inst = make_instance(ks.srs, k, g, d, rng);
    const Scalar gamma = Scalar::random(rng);
    const auto proof = open_shared(ks.srs, inst.polys, inst.md, gamma);
    ASSERT_TRUE(verify_shared(ks.srs, inst.group, proof, gamma)) << t;
    std::vector<EvaluationDomain> sets(k, inst.md.domain());
    EXPECT_EQ(proof, open_generic(ks.srs, inst.polys, sets, inst.group.values, gamma)) << t;
    std::vector<std::vector<Scalar>> pts(k, std::vector<Scalar>(inst.md.points().begin(), inst.md.points().end()));
    EXPECT_EQ(proof.witness, ks.generic_witness(inst.polys, pts, gamma)) << t;
  }
}

TEST(Multiproof, ReductionToSingleKzg) {
  std::mt19937_64 rng(54);
  const auto srs = SRS::generate(16, Scalar::random(rng));
  const auto dom = EvaluationDomain::for_size(16);
  for (int t = 0; t < 100; ++t) {
    const auto p = Polynomial::random(1 + rng() % 16, rng);
    const MicroDomain md(dom, rng() % 16, 1);
    const Scalar z = md.points()[0];
    const auto cm = commit(srs, p);
    const auto single = open_single(srs, p, z);
    Scalar v = single.value;
    OpeningProof pi = single.proof;
    if (t % 3 == 1) v += Scalar::one();
    if (t % 3 == 2) pi.witness += G1::generator();
    const OpenedGroup group{{cm}, {{v}}, md};
    EXPECT_EQ(verify_shared(srs, group, AggregatedProof{pi.witness}, Scalar::random(rng)),
              verify_single(srs, cm, z, v, pi));
  }
}

TEST(Multiproof, OperationAccounting) {
  std::mt19937_64 rng(55);
  const std::size_t d = 32;
  const auto srs = SRS::generate(d, Scalar::random(rng));
  for (std::size_t k : {1u, 2u, 5u}) {
    for (std::size_t g : {1u, 4u, 8u}) {
      auto inst = make_instance(srs, k, g, d, rng);
      const Scalar gamma = Scalar::random(rng);
      OpCounters open_ops;
      const auto proof = open_shared(srs, inst.polys, inst.md, gamma, &open_ops);
      EXPECT_EQ(open_ops, (OpCounters{d + 1 - g, 0, 0, 0}));

      srs.clear_cache();
      OpCounters cold;
      ASSERT_TRUE(verify_shared(srs, inst.group, proof, gamma, &cold));
      EXPECT_EQ(cold, (OpCounters{k + g + 1, g + 1, 2, 1}));

      OpCounters warm;
      ASSERT_TRUE(verify_shared(srs, inst.group, proof, gamma, &warm));
      EXPECT_EQ(warm, (OpCounters{k + g + 1, 0, 2, 1}));
    }
  }
}

TEST(Multiproof, AggregatedProofEncoding) {
  std::mt19937_64 rng(56);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  auto inst = make_instance(srs, 2, 4, 8, rng);
  const auto proof = open_shared(srs, inst.polys, inst.md, Scalar(9));
  const auto bytes = proof.to_bytes();
  EXPECT_EQ(bytes.size(), 48u);
  EXPECT_EQ(AggregatedProof::from_bytes(bytes), proof);
}

TEST(Multiproof, TranscriptBinding) {
  std::mt19937_64 rng(57);
  const auto srs = SRS::generate(16, Scalar::random(rng));
  const auto dom = EvaluationDomain::for_size(8);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 2 + rng() % 3;
    std::vector<Polynomial> polys;
    std::vector<Commitment> cms;
    for (std::size_t i = 0; i < k; ++i) {
      polys.push_back(Polynomial::random(4 + rng() % 12, rng));
      cms.push_back(commit(srs, polys.back()));
    }
    const std::uint32_t micro = rng() % 2;
    const MicroDomain md(dom, micro * 4, 4);
    const wire::GCellBlock block{0, static_cast<std::uint32_t>(k), micro * 4, micro * 4 + 4};
    OpenedGroup group{cms, {}, md};
    for (const auto& f : polys) {
      std::vector<Scalar> row;
      for (const auto& z : md.points()) row.push_back(f(z));
      group.values.push_back(row);
    }
    const auto proof = open_group(srs, polys, cms, md, block);
    ASSERT_TRUE(verify_group(srs, group, block, proof));

    auto tr = group_transcript(srs, cms, md, block);
    switch (t % 4) {
      case 0: std::swap(tr.commitments[0], tr.commitments[1]); break;
      case 1: tr.micro_domain[0] = dom[(md.offset() + 4) % 8]; break;
      case 2: tr.coords.pop_back(); break;
      default: tr.block.rows_end += 1; break;
    }
    EXPECT_FALSE(verify_shared(srs, group, proof, derive_gamma(tr))) << t;
  }
}

TEST(Multiproof, VerifyGroupRejectsPermutedCommitments) {
  std::mt19937_64 rng(58);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  auto inst = make_instance(srs, 3, 4, 8, rng);
  const wire::GCellBlock block{0, 3, static_cast<std::uint32_t>(inst.md.offset()),
                               static_cast<std::uint32_t>(inst.md.offset() + 4)};
  const auto proof = open_group(srs, inst.polys, inst.commitments, inst.md, block);
  EXPECT_TRUE(verify_group(srs, inst.group, block, proof));
  auto g = inst.group;
  std::swap(g.commitments[0], g.commitments[2]);
  std::swap(g.values[0], g.values[2]);
  EXPECT_FALSE(verify_group(srs, g, block, proof));
  auto shifted = block;
  shifted.rows_start += 1;
  shifted.rows_end += 1;
  EXPECT_FALSE(verify_group(srs, inst.group, shifted, proof));
  auto inverted = block;
  inverted.rows_start = inverted.rows_end + 1;
  EXPECT_FALSE(verify_group(srs, inst.group, inverted, proof));
  EXPECT_THROW(open_group(srs, inst.polys, inst.commitments, inst.md, inverted), std::invalid_argument);
}
