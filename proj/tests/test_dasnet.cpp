// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pmp/dasnet.hpp"

using namespace pmp;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;  // 4 x 8 grid, 64 extended cells
  cfg.light_clients = 2;
  cfg.samples = 8;
  return cfg;
}

const ExperimentContext& context() {
  static const ExperimentContext ctx = make_context(small_config());
  return ctx;
}

std::vector<Coordinate> all_coordinates(const GridDims& dims) {
  std::vector<Coordinate> out;
  for (std::uint32_t r = 0; r < dims.rows; ++r)
    for (std::uint32_t c = 0; c < dims.extended_cols(); ++c) out.push_back({r, c});
  return out;
}

struct Published {
  SimDht dht;
  PublishResult result;
};

Published publish_mode(ConfigMode mode, std::uint64_t seed = 5) {
  const auto& ctx = context();
  SimDht dht(ctx.config.peers, ctx.config.replication, seed);
  auto r = publish_objects(ctx.objects.at(mode), dht);
  return {std::move(dht), std::move(r)};
}

}  // namespace

TEST(SimDht, PlacesReplicasOnDistinctPeers) {
  SimDht dht(50, 5, 1);
  const Digest32 key = sha256(std::vector<std::uint8_t>{1, 2, 3});
  const std::vector<std::uint8_t> value{9, 9};
  ASSERT_TRUE(dht.put(key, value));
  const auto h = dht.holders(key);
  EXPECT_EQ(h.size(), 5u);
  EXPECT_EQ(std::set<PeerIndex>(h.begin(), h.end()).size(), 5u);
  EXPECT_EQ(*dht.get(key), value);
  EXPECT_EQ(dht.object_count(), 1u);
}

TEST(SimDht, GetSucceedsIffSomeReplicaLive) {
  SimDht dht(20, 3, 2);
  const Digest32 key = sha256(std::vector<std::uint8_t>{7});
  const std::vector<std::uint8_t> value{1};
  ASSERT_TRUE(dht.put(key, value));
  const auto h = dht.holders(key);
  dht.kill(h[0]);
  dht.kill(h[1]);
  EXPECT_TRUE(dht.get(key).has_value());
  dht.kill(h[2]);
  EXPECT_FALSE(dht.get(key).has_value());
  dht.revive(h[1]);
  EXPECT_TRUE(dht.get(key).has_value());
  EXPECT_FALSE(dht.get(sha256(std::vector<std::uint8_t>{8})).has_value());
}

TEST(SimDht, KillFractionCountsAndValidation) {
  SimDht dht(50, 5, 3);
  std::mt19937_64 rng(1);
  const auto dead = dht.kill_fraction(0.2, rng);
  EXPECT_EQ(dead.size(), 10u);
  EXPECT_EQ(dht.live_count(), 40u);
  SimDht other(50, 5, 3);
  EXPECT_EQ(other.kill_fraction(0.11, rng).size(), 6u);
  EXPECT_THROW(other.kill_fraction(1.0, rng), std::invalid_argument);
  EXPECT_THROW(other.kill_fraction(-0.1, rng), std::invalid_argument);
  EXPECT_THROW(SimDht(5, 6, 1), std::invalid_argument);
}

TEST(SimDht, InjectedPutFailureSurfaces) {
  SimDht dht(10, 2, 4);
  const auto& objs = context().objects.at(ConfigMode::PMP);
  dht.inject_put_failure(objs[3].key);
  const auto r = publish_objects(objs, dht);
  ASSERT_EQ(r.failed_puts.size(), 1u);
  EXPECT_EQ(r.failed_puts[0], objs[3].key);
  EXPECT_EQ(r.objects_stored, objs.size() - 1);
}

TEST(UniformBelow, StaysInRange) {
  std::mt19937_64 rng(9);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) ++hist[uniform_below(rng, 7)];
  for (int h : hist) EXPECT_GT(h, 850);
  EXPECT_THROW(uniform_below(rng, 0), std::invalid_argument);
}

TEST(Publish, ObjectCounts) {
  EXPECT_EQ(publish_mode(ConfigMode::Vanilla).result.objects_stored, 64u);
  EXPECT_EQ(publish_mode(ConfigMode::BatchedSingle).result.objects_stored, 64u);
  EXPECT_EQ(publish_mode(ConfigMode::GroupedOnly).result.objects_stored, 16u);
  EXPECT_EQ(publish_mode(ConfigMode::PMP).result.objects_stored, 16u);
  SimDht dht(5, 1, 1);
  EXPECT_EQ(publish_objects({}, dht).objects_stored, 0u);
}

TEST(Publish, StorageViewsMatchReport) {
  const auto report = wire::storage_report(64, 4);
  const auto v = publish_mode(ConfigMode::Vanilla).result;
  EXPECT_EQ(v.object_bytes, report.baseline_total_bytes);
  EXPECT_EQ(v.proof_bytes, 64u * 48u);
  EXPECT_EQ(v.wire_bytes, 64u * 80u);
  const auto p = publish_mode(ConfigMode::PMP).result;
  EXPECT_EQ(p.object_bytes, report.grouped_total_bytes);
  EXPECT_EQ(p.proof_bytes, p.objects_stored * 48u);
  EXPECT_EQ(p.wire_bytes, report.mcell_wire_total_bytes);
  const auto g = publish_mode(ConfigMode::GroupedOnly).result;
  EXPECT_EQ(g.proof_bytes, 64u * 48u);
  EXPECT_EQ(g.object_bytes, report.baseline_total_bytes);
}

TEST(Publish, RowsPerGroupTwo) {
  auto cfg = small_config();
  cfg.layout.rows_per_group = 2;
  const auto ctx = make_context(cfg);
  const auto& objs = ctx.objects.at(ConfigMode::PMP);
  ASSERT_EQ(objs.size(), 8u);
  const auto m = wire::decode_mcell(objs[0].bytes);
  EXPECT_EQ(m.count(), 8u);
  EXPECT_EQ(m.block, (wire::GCellBlock{0, 2, 0, 4}));
}

TEST(Plan, DistinctAndReproducible) {
  const GridDims dims{4, 8, 2};
  const auto a = make_plan(dims, 64, 17);
  const auto b = make_plan(dims, 64, 17);
  EXPECT_EQ(a.coordinates, b.coordinates);
  EXPECT_EQ(std::set<Coordinate>(a.coordinates.begin(), a.coordinates.end()).size(), 64u);
  EXPECT_NE(make_plan(dims, 16, 18).coordinates, make_plan(dims, 16, 17).coordinates);
  EXPECT_THROW(make_plan(dims, 65, 1), std::invalid_argument);
}

TEST(SampleAndVerify, HonestNoChurnAllModesVerify) {
  const auto& ctx = context();
  const SamplingPlan plan{0, all_coordinates(ctx.config.dims)};
  RetrievalConfig rc;
  rc.window_ticks = 0;  // unbounded
  for (auto mode : kAllModes) {
    auto pub = publish_mode(mode);
    const auto out = sample_and_verify(ctx.srs.with_fresh_cache(), ctx.header, plan, ctx.config.layout, mode,
                                       pub.dht, rc);
    EXPECT_EQ(out.count(SampleStatus::Verified), 64u) << mode_name(mode);
    EXPECT_EQ(out.hits(), 64u);
    EXPECT_EQ(out.retries, 0u);
    EXPECT_EQ(out.lookups, is_grouped(mode) ? 16u : 64u);
    EXPECT_EQ(out.distinct_groups, is_grouped(mode) ? 16u : 64u);
    EXPECT_EQ(out.effective_independent_samples, is_grouped(mode) ? 16u : 64u);
  }
}

TEST(SampleAndVerify, VerifierOpCounts) {
  const auto& ctx = context();
  const SamplingPlan plan{0, {{0, 0}, {0, 1}, {2, 9}}};
  RetrievalConfig rc;
  std::map<ConfigMode, OpCounters> ops;
  for (auto mode : kAllModes) {
    auto pub = publish_mode(mode);
    ops[mode] = sample_and_verify(ctx.srs.with_fresh_cache(), ctx.header, plan, ctx.config.layout, mode, pub.dht, rc)
                    .verifier_ops;
  }
  EXPECT_EQ(ops[ConfigMode::Vanilla], (OpCounters{3, 3, 6, 0}));
  EXPECT_EQ(ops[ConfigMode::BatchedSingle], (OpCounters{10, 0, 2, 0}));
  // two groups, four cells each
  EXPECT_EQ(ops[ConfigMode::GroupedOnly], (OpCounters{8, 8, 16, 0}));
  // two groups, k = 1, g = 4: cold Z for each distinct micro-domain
  EXPECT_EQ(ops[ConfigMode::PMP], (OpCounters{2 * 6, 2 * 5, 4, 2}));
}

TEST(SampleAndVerify, TamperedMCellFailsOnlyItsGroup) {
  const auto& ctx = context();
  auto pub = publish_mode(ConfigMode::PMP);
  const GroupId bad{1, 2};
  pub.dht.tamper(group_key(ctx.header.block_id, bad), [](std::vector<std::uint8_t>& b) { b[68 + 32 + 3] ^= 1; });
  const SamplingPlan plan{0, all_coordinates(ctx.config.dims)};
  RetrievalConfig rc;
  rc.window_ticks = 0;
  const auto out = sample_and_verify(ctx.srs, ctx.header, plan, ctx.config.layout, ConfigMode::PMP, pub.dht, rc);
  for (std::size_t i = 0; i < plan.coordinates.size(); ++i) {
    const auto id = coordinate_to_group(plan.coordinates[i], ctx.config.dims, 4, 1);
    EXPECT_EQ(out.status[i], id == bad ? SampleStatus::VerifyFailed : SampleStatus::Verified);
  }
  EXPECT_EQ(out.count(SampleStatus::VerifyFailed), 4u);
  EXPECT_EQ(out.retries, 3u);  // every replica tried within the budget
}

TEST(SampleAndVerify, SingleBadReplicaRecoveredByRetry) {
  const auto& ctx = context();
  for (auto mode : kAllModes) {
    auto pub = publish_mode(mode);
    const Coordinate c{2, 5};
    const auto key = is_grouped(mode) ? group_key(ctx.header.block_id, coordinate_to_group(c, ctx.config.dims, 4, 1))
                                      : cell_key(ctx.header.block_id, c);
    pub.dht.tamper_replica(key, pub.dht.holders(key)[0], [](std::vector<std::uint8_t>& b) { b.back() ^= 0x40; });
    const SamplingPlan plan{0, {c, {0, 0}}};
    const auto out = sample_and_verify(ctx.srs, ctx.header, plan, ctx.config.layout, mode, pub.dht, {});
    EXPECT_EQ(out.status[0], SampleStatus::Verified) << mode_name(mode);
    EXPECT_EQ(out.status[1], SampleStatus::Verified) << mode_name(mode);
    EXPECT_EQ(out.retries, 1u) << mode_name(mode);
  }
}

TEST(SampleAndVerify, TamperedBaselineCellFailsVanillaAndBatched) {
  const auto& ctx = context();
  for (auto mode : {ConfigMode::Vanilla, ConfigMode::BatchedSingle, ConfigMode::GroupedOnly}) {
    auto pub = publish_mode(mode);
    const Coordinate c{3, 14};
    const auto key = is_grouped(mode) ? group_key(ctx.header.block_id, coordinate_to_group(c, ctx.config.dims, 4, 1))
                                      : cell_key(ctx.header.block_id, c);
    pub.dht.tamper(key, [](std::vector<std::uint8_t>& b) { b[b.size() - 20] ^= 1; });
    const SamplingPlan plan{0, {{0, 0}, c, {1, 1}}};
    const auto out = sample_and_verify(ctx.srs, ctx.header, plan, ctx.config.layout, mode, pub.dht, {});
    EXPECT_EQ(out.status[0], SampleStatus::Verified) << mode_name(mode);
    EXPECT_EQ(out.status[1], SampleStatus::VerifyFailed) << mode_name(mode);
    EXPECT_EQ(out.status[2], SampleStatus::Verified) << mode_name(mode);
  }
}

TEST(SampleAndVerify, DeadReplicasFetchFailAfterBudget) {
  const auto& ctx = context();
  auto pub = publish_mode(ConfigMode::PMP);
  const GroupId dead{0, 3};
  const auto key = group_key(ctx.header.block_id, dead);
  for (PeerIndex p : pub.dht.holders(key)) pub.dht.kill(p);
  const SamplingPlan plan{0, {{0, 12}, {0, 13}, {1, 0}}};
  RetrievalConfig rc;
  rc.window_ticks = 0;
  const auto out = sample_and_verify(ctx.srs, ctx.header, plan, ctx.config.layout, ConfigMode::PMP, pub.dht, rc);
  EXPECT_EQ(out.status[0], SampleStatus::FetchFailed);
  EXPECT_EQ(out.status[1], SampleStatus::FetchFailed);
  EXPECT_FALSE(out.fetched[0]);
  EXPECT_EQ(out.lookups, 2u);
  // 1 attempt + retry budget of 3 against the dead group
  EXPECT_EQ(out.attempts, 4u + 1u);
}

TEST(SampleAndVerify, MemoReplaysIdenticalOutcomes) {
  const auto& ctx = context();
  for (auto mode : kAllModes) {
    auto pub = publish_mode(mode);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 15; ++i) pub.dht.kill(static_cast<PeerIndex>(uniform_below(rng, 50)));
    const auto bad = ctx.objects.at(mode)[5].key;
    pub.dht.tamper_replica(bad, pub.dht.holders(bad)[0], [](std::vector<std::uint8_t>& b) { b.back() ^= 1; });
    VerifyMemo memo;
    for (std::uint64_t client = 0; client < 6; ++client) {
      const auto plan = make_plan(ctx.config.dims, 16, 40 + client);
      const auto plain = sample_and_verify(ctx.srs.with_fresh_cache(), ctx.header, plan, ctx.config.layout, mode,
                                           pub.dht, {});
      const auto memoized = sample_and_verify(ctx.srs.with_fresh_cache(), ctx.header, plan, ctx.config.layout,
                                              mode, pub.dht, {}, &memo);
      EXPECT_EQ(plain.status, memoized.status) << mode_name(mode);
      EXPECT_EQ(plain.fetched, memoized.fetched);
      EXPECT_EQ(plain.verifier_ops, memoized.verifier_ops) << mode_name(mode) << " client " << client;
      EXPECT_EQ(plain.retries, memoized.retries);
    }
    if (mode != ConfigMode::BatchedSingle) EXPECT_GT(memo.size(), 0u);
  }
}

TEST(SampleAndVerify, WindowBoundsLookups) {
  const auto& ctx = context();
  auto pub = publish_mode(ConfigMode::Vanilla);
  const SamplingPlan plan{0, all_coordinates(ctx.config.dims)};
  RetrievalConfig rc;
  rc.window_ticks = 10 * (rc.rtt_ticks + 2);  // exactly ten 80-byte fetches
  const auto out = sample_and_verify(ctx.srs, ctx.header, plan, ctx.config.layout, ConfigMode::Vanilla, pub.dht, rc);
  EXPECT_EQ(out.hits(), 10u);
  EXPECT_EQ(out.count(SampleStatus::Verified), 10u);
  EXPECT_EQ(out.ticks_used, rc.window_ticks);
}

TEST(Soundness, EffectiveSamples) {
  EXPECT_EQ(effective_samples(8, 4), 2u);
  EXPECT_EQ(effective_samples(7, 4), 1u);
  EXPECT_EQ(effective_samples(13, 1), 13u);
  EXPECT_THROW(effective_samples(4, 0), std::invalid_argument);
}

TEST(Soundness, RequiredSamples) {
  EXPECT_EQ(required_samples(10, 4).coordinate_samples, 40u);
  EXPECT_EQ(required_samples(10, 4).distinct_groups, 10u);
  EXPECT_EQ(required_samples(10, 1).coordinate_samples, 10u);
  for (std::uint64_t t = 0; t <= 16; ++t)
    for (std::uint64_t g = 1; g <= 8; ++g)
      EXPECT_GE(effective_samples(required_samples(t, g).coordinate_samples, g), t);
}

TEST(Experiment, NoChurnFullHitRate) {
  for (auto mode : kAllModes) {
    const auto m = run_experiment(context(), mode, 0.0, 3);
    EXPECT_EQ(m.hit_rate, 1.0) << mode_name(mode);
    EXPECT_EQ(m.verify_failures, 0u);
    EXPECT_EQ(m.verified, m.samples);
    EXPECT_EQ(m.samples, 16u);
  }
}

TEST(Experiment, AllPeersDead) {
  auto cfg = small_config();
  cfg.peers = 10;
  cfg.replication = 3;
  const auto ctx = make_context(cfg);
  for (auto mode : kAllModes) EXPECT_EQ(run_experiment(ctx, mode, 0.95, 4).hit_rate, 0.0) << mode_name(mode);
}

TEST(Experiment, Deterministic) {
  for (auto mode : kAllModes) {
    const auto a = run_experiment(context(), mode, 0.2, 11);
    const auto b = run_experiment(context(), mode, 0.2, 11);
    EXPECT_EQ(a.to_kv(), b.to_kv()) << mode_name(mode);
  }
}

TEST(Experiment, BatchedMatchesVanillaHits) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto v = run_experiment(context(), ConfigMode::Vanilla, 0.3, seed);
    const auto b = run_experiment(context(), ConfigMode::BatchedSingle, 0.3, seed);
    EXPECT_EQ(v.hits, b.hits) << seed;
    EXPECT_EQ(v.objects_stored, b.objects_stored);
    EXPECT_EQ(v.proof_bytes, b.proof_bytes);
  }
}

TEST(Experiment, ProofByteIdentity) {
  for (auto mode : kAllModes) {
    const auto m = run_experiment(context(), mode, 0.0, 1);
    const std::uint64_t proofs_per_object = mode == ConfigMode::GroupedOnly ? 4 : 1;
    EXPECT_EQ(m.proof_bytes, m.objects_stored * proofs_per_object * 48) << mode_name(mode);
  }
}

TEST(Experiment, KeyValueOrder) {
  const auto kv = run_experiment(context(), ConfigMode::PMP, 0.1, 2).to_kv();
  const std::vector<std::string> head{"mode",     "seed",     "churn",           "objects_stored",
                                      "proof_bytes", "object_bytes", "hit_rate", "verify_failures",
                                      "g1_mults", "g2_mults", "pairings",        "interpolations"};
  ASSERT_GE(kv.size(), head.size());
  for (std::size_t i = 0; i < head.size(); ++i) EXPECT_EQ(kv[i].first, head[i]);
  EXPECT_EQ(kv[0].second, "pmp");
  EXPECT_EQ(kv[2].second, "0.1000");
}

TEST(Modes, NamesRoundTrip) {
  for (auto m : kAllModes) EXPECT_EQ(parse_mode(mode_name(m)), m);
  EXPECT_FALSE(parse_mode("PMP").has_value());
}
