// SPDX-License-Identifier: Apache-2.0
#include "pmp/dasnet.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pmp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kChurnSalt = 0x43485552ULL;   // "CHUR"
constexpr std::uint64_t kClientSalt = 0x434c4e54ULL;  // "CLNT"

std::string fmt_double(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return b == 0 ? 0 : (a + b - 1) / b; }

struct GroupGeometry {
  std::uint32_t bands = 0;
  std::vector<MicroDomain> micro_domains;
};

GroupGeometry geometry(const DataGrid& grid, const Layout& layout) {
  if (layout.g == 0 || layout.rows_per_group == 0) throw std::invalid_argument("Layout: zero group size");
  return {static_cast<std::uint32_t>(ceil_div(grid.dims.rows, layout.rows_per_group)),
          partition_micro_domains(grid.row_domain, layout.g)};
}

wire::BaselineCell baseline_cell(const SRS& srs, const DataGrid& grid, const Coordinate& c, OpCounters* ops) {
  const auto opening = open_single(srs, grid.row_polys[c.row], grid.row_domain[c.col], ops);
  return {opening.proof.to_bytes(), grid.at(c).to_bytes()};
}

}  // namespace

std::string_view mode_name(ConfigMode m) {
  switch (m) {
    case ConfigMode::Vanilla: return "vanilla";
    case ConfigMode::BatchedSingle: return "batched";
    case ConfigMode::GroupedOnly: return "grouped";
    case ConfigMode::PMP: return "pmp";
  }
  return "unknown";
}

std::optional<ConfigMode> parse_mode(std::string_view s) {
  for (auto m : kAllModes)
    if (mode_name(m) == s) return m;
  return std::nullopt;
}

BlockHeader make_header(const DataGrid& grid, const Digest32& block_id) {
  return {block_id, grid.dims, grid.row_commitments};
}

DhtKey cell_key(const Digest32& block_id, const Coordinate& c) {
  ByteWriter w;
  w.put_ascii("PMP-DAS-v1/cell");
  w.put_bytes(block_id);
  w.put_u32_be(c.row);
  w.put_u32_be(c.col);
  return sha256(w.bytes());
}

DhtKey group_key(const Digest32& block_id, const GroupId& id) {
  ByteWriter w;
  w.put_ascii("PMP-DAS-v1/group");
  w.put_bytes(block_id);
  w.put_u32_be(id.band);
  w.put_u32_be(id.micro);
  return sha256(w.bytes());
}

std::vector<StoredObject> build_objects(const SRS& srs, const DataGrid& grid, const Digest32& block_id,
                                        const Layout& layout, ConfigMode mode, OpCounters* ops) {
  std::vector<StoredObject> out;
  if (grid.cells.empty()) return out;

  if (!is_grouped(mode)) {
    for (std::uint32_t r = 0; r < grid.dims.rows; ++r) {
      for (std::uint32_t c = 0; c < grid.dims.extended_cols(); ++c) {
        const auto cell = baseline_cell(srs, grid, {r, c}, ops);
        const auto enc = wire::encode_baseline(cell);
        out.push_back({cell_key(block_id, {r, c}), {enc.begin(), enc.end()}, wire::kProofSize,
                       wire::kBaselineCellSize});
      }
    }
    return out;
  }

  const auto geo = geometry(grid, layout);
  for (std::uint32_t band = 0; band < geo.bands; ++band) {
    for (std::uint32_t micro = 0; micro < geo.micro_domains.size(); ++micro) {
      const GroupId id{band, micro};
      const auto block = group_block(id, grid.dims, layout.g, layout.rows_per_group);
      StoredObject obj{group_key(block_id, id), {}, 0, 0};
      if (mode == ConfigMode::GroupedOnly) {
        wire::GroupedCell gc{block, {}};
        for (const auto& c : block.coordinates()) gc.cells.push_back(baseline_cell(srs, grid, c, ops));
        obj.bytes = wire::encode_grouped(gc);
        obj.proof_bytes = wire::kProofSize * gc.cells.size();
        obj.amortized_bytes = wire::kBaselineCellSize * gc.cells.size();
      } else {
        const auto& md = geo.micro_domains[micro];
        const auto group = build_opened_group(grid, {block.rows_start, block.rows_end}, md);
        std::span<const Polynomial> polys(grid.row_polys.data() + block.rows_start, block.row_count());
        const auto proof = open_group(srs, polys, group.commitments, md, block, ops);
        wire::MCell m{proof.to_bytes(), block, {}};
        for (const auto& row : group.values)
          for (const auto& v : row) m.scalars.push_back(v.to_bytes());
        obj.bytes = wire::encode_mcell(m);
        obj.proof_bytes = wire::kProofSize;
        obj.amortized_bytes = wire::kProofSize + wire::kScalarSize * m.scalars.size();
      }
      out.push_back(std::move(obj));
    }
  }
  return out;
}

PublishResult publish_objects(std::span<const StoredObject> objects, SimDht& dht) {
  PublishResult r;
  for (const auto& o : objects) {
    if (!dht.put(o.key, o.bytes)) {
      r.failed_puts.push_back(o.key);
      continue;
    }
    ++r.objects_stored;
    r.proof_bytes += o.proof_bytes;
    r.object_bytes += o.amortized_bytes;
    r.wire_bytes += o.bytes.size();
  }
  return r;
}

PublishResult publish(const SRS& srs, const DataGrid& grid, const Digest32& block_id, const Layout& layout,
                      ConfigMode mode, SimDht& dht) {
  return publish_objects(build_objects(srs, grid, block_id, layout, mode), dht);
}

SamplingPlan make_plan(const GridDims& dims, std::uint32_t samples, std::uint64_t seed) {
  const std::uint64_t cells = dims.extended_cells();
  if (samples > cells) throw std::invalid_argument("make_plan: more samples than cells");
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> idx(cells);
  std::iota(idx.begin(), idx.end(), 0);
  SamplingPlan plan{seed, {}};
  plan.coordinates.reserve(samples);
  for (std::uint32_t i = 0; i < samples; ++i) {
    std::swap(idx[i], idx[i + uniform_below(rng, cells - i)]);
    plan.coordinates.push_back({static_cast<std::uint32_t>(idx[i] / dims.extended_cols()),
                                static_cast<std::uint32_t>(idx[i] % dims.extended_cols())});
  }
  return plan;
}

std::uint64_t RetrievalOutcome::count(SampleStatus s) const {
  return static_cast<std::uint64_t>(std::count(status.begin(), status.end(), s));
}

std::uint64_t RetrievalOutcome::hits() const {
  return static_cast<std::uint64_t>(std::count(fetched.begin(), fetched.end(), true));
}

namespace {

/// One client's lookup engine: replica iteration, retry budget, tick window.
class Fetcher {
 public:
  Fetcher(const SimDht& dht, const RetrievalConfig& rc, RetrievalOutcome& out) : dht_(dht), rc_(rc), out_(out) {}

  struct Lookup {
    DhtKey key{};
    std::vector<PeerIndex> holders;
    std::size_t next = 0;
    std::uint32_t attempts = 0;
    bool fetched_any = false;
  };

  Lookup start(const DhtKey& key) {
    ++out_.lookups;
    return {key, dht_.holders(key)};
  }

  /// Next copy of the object from a live replica, or nullopt once the retry
  /// budget, the replica list or the window is exhausted.
  std::optional<std::span<const std::uint8_t>> next(Lookup& l) {
    while (!exhausted_ && l.attempts < 1 + rc_.retry_budget) {
      const bool no_holder = l.next >= l.holders.size();
      if (no_holder && l.attempts > 0) break;
      ++l.attempts;
      ++out_.attempts;
      if (l.attempts > 1) ++out_.retries;
      std::optional<std::span<const std::uint8_t>> bytes;
      if (!no_holder) bytes = dht_.fetch(l.key, l.holders[l.next++]);
      const std::uint64_t cost =
          bytes ? rc_.rtt_ticks + ceil_div(bytes->size(), rc_.bytes_per_tick) : rc_.timeout_ticks;
      if (rc_.window_ticks != 0 && out_.ticks_used + cost > rc_.window_ticks) {
        out_.ticks_used = rc_.window_ticks;
        exhausted_ = true;
        break;
      }
      out_.ticks_used += cost;
      if (bytes) {
        l.fetched_any = true;
        return bytes;
      }
      if (no_holder) break;
    }
    return std::nullopt;
  }

 private:
  const SimDht& dht_;
  const RetrievalConfig& rc_;
  RetrievalOutcome& out_;
  bool exhausted_ = false;
};

struct Resolution {
  SampleStatus status = SampleStatus::FetchFailed;
  bool fetched = false;
};

using ObjectCheck = std::function<bool(std::span<const std::uint8_t>, OpCounters*)>;

/// Runs check on bytes, consulting memo first. Decode and encoding errors
/// are verification failures.
bool checked(VerifyMemo* memo, ConfigMode mode, std::uint32_t a, std::uint32_t b,
             std::span<const std::uint8_t> bytes, OpCounters* ops, const ObjectCheck& check) {
  auto run = [&](OpCounters* o) {
    try {
      return check(bytes, o);
    } catch (const wire::DecodeError&) {
    } catch (const EncodingError&) {
    }
    return false;
  };
  if (!memo) return run(ops);
  ByteWriter w;
  w.put_ascii("PMP-DAS-v1/memo");
  w.put_u8(static_cast<std::uint8_t>(mode));
  w.put_u32_be(a);
  w.put_u32_be(b);
  w.put_bytes(sha256(bytes));
  const Digest32 key = sha256(w.bytes());
  if (const auto* hit = memo->find(key)) {
    *ops += hit->ops;
    return hit->ok;
  }
  OpCounters delta;
  const bool ok = run(&delta);
  *ops += delta;
  memo->insert(key, {ok, delta});
  return ok;
}

Resolution resolve(Fetcher& f, Fetcher::Lookup& l, const std::function<bool(std::span<const std::uint8_t>)>& verify) {
  while (auto bytes = f.next(l))
    if (verify(*bytes)) return {SampleStatus::Verified, true};
  return {l.fetched_any ? SampleStatus::VerifyFailed : SampleStatus::FetchFailed, l.fetched_any};
}

bool verify_baseline_bytes(const SRS& srs, const BlockHeader& h, const EvaluationDomain& domain,
                           const Coordinate& c, std::span<const std::uint8_t> bytes, OpCounters* ops) {
  const auto cell = wire::decode_baseline(bytes);
  return verify_single(srs, h.row_commitments[c.row], domain[c.col], wire::decode_scalar(cell.data),
                       OpeningProof::from_bytes(cell.proof), ops);
}

}  // namespace

const VerifyMemo::Entry* VerifyMemo::find(const Digest32& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

bool verify_mcell_bytes(const SRS& srs, const BlockHeader& header, const Layout& layout, const GroupId& id,
                        std::span<const std::uint8_t> bytes, OpCounters* ops) {
  const auto& dims = header.dims;
  const auto block = group_block(id, dims, layout.g, layout.rows_per_group);
  const auto m = wire::decode_mcell(bytes);
  if (!(m.block == block)) return false;
  const auto domain = EvaluationDomain::for_size(dims.extended_cols());
  OpenedGroup group{{}, {}, MicroDomain(domain, std::size_t{id.micro} * layout.g, layout.g)};
  for (std::uint32_t r = block.rows_start; r < block.rows_end; ++r) {
    group.commitments.push_back(header.row_commitments[r]);
    std::vector<Scalar> row;
    row.reserve(layout.g);
    for (std::uint32_t j = 0; j < layout.g; ++j)
      row.push_back(wire::decode_scalar(m.scalars[(r - block.rows_start) * layout.g + j]));
    group.values.push_back(std::move(row));
  }
  return verify_group(srs, group, block, AggregatedProof::from_bytes(m.proof), ops);
}

RetrievalOutcome sample_and_verify(const SRS& srs, const BlockHeader& header, const SamplingPlan& plan,
                                   const Layout& layout, ConfigMode mode, const SimDht& dht,
                                   const RetrievalConfig& rc, VerifyMemo* memo) {
  const auto& dims = header.dims;
  if (header.row_commitments.size() != dims.rows)
    throw std::invalid_argument("sample_and_verify: header commitments do not match grid rows");
  const auto domain = EvaluationDomain::for_size(dims.extended_cols());
  const std::size_t n = plan.coordinates.size();

  RetrievalOutcome out;
  out.status.assign(n, SampleStatus::FetchFailed);
  out.fetched.assign(n, false);
  out.effective_independent_samples = effective_samples(n, layout.cells_per_object(mode));
  OpCounters* ops = &out.verifier_ops;
  Fetcher fetcher(dht, rc, out);

  auto cell_check = [&](const Coordinate& c) {
    return [&, c](std::span<const std::uint8_t> b) {
      return checked(memo, mode, c.row, c.col, b, ops, [&](std::span<const std::uint8_t> bytes, OpCounters* o) {
        return verify_baseline_bytes(srs, header, domain, c, bytes, o);
      });
    };
  };

  if (mode == ConfigMode::Vanilla) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = plan.coordinates[i];
      auto lookup = fetcher.start(cell_key(header.block_id, c));
      const auto r = resolve(fetcher, lookup, cell_check(c));
      out.status[i] = r.status;
      out.fetched[i] = r.fetched;
    }
    out.distinct_groups = n;
    return out;
  }

  if (mode == ConfigMode::BatchedSingle) {
    // Phase 1: first decodable copy of every sampled cell.
    std::vector<Fetcher::Lookup> lookups;
    std::vector<std::optional<SingleOpening>> candidate(n);
    lookups.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = plan.coordinates[i];
      lookups.push_back(fetcher.start(cell_key(header.block_id, c)));
      while (auto bytes = fetcher.next(lookups[i])) {
        try {
          const auto cell = wire::decode_baseline(*bytes);
          candidate[i] = SingleOpening{header.row_commitments[c.row], domain[c.col],
                                       wire::decode_scalar(cell.data), OpeningProof::from_bytes(cell.proof)};
          break;
        } catch (const wire::DecodeError&) {
        } catch (const EncodingError&) {
        }
      }
      out.fetched[i] = lookups[i].fetched_any;
    }

    std::vector<SingleOpening> batch;
    for (const auto& cand : candidate)
      if (cand) batch.push_back(*cand);
    bool all_ok = false;
    if (!batch.empty()) all_ok = verify_batch_independent(srs, batch, derive_batch_rho(srs, batch), ops);

    // Phase 2: on a failed batch, isolate bad cells and keep retrying them alone.
    for (std::size_t i = 0; i < n; ++i) {
      if (!candidate[i]) {
        out.status[i] = lookups[i].fetched_any ? SampleStatus::VerifyFailed : SampleStatus::FetchFailed;
        continue;
      }
      const auto& o = *candidate[i];
      if (all_ok || verify_single(srs, o.commitment, o.point, o.value, o.proof, ops)) {
        out.status[i] = SampleStatus::Verified;
        continue;
      }
      out.status[i] = resolve(fetcher, lookups[i], cell_check(plan.coordinates[i])).status;
    }
    out.distinct_groups = n;
    return out;
  }

  // Grouped modes: one lookup per distinct group, verified over the whole
  // transported micro-domain no matter how many of its cells were sampled.
  const auto micro_domains = partition_micro_domains(domain, layout.g);
  std::map<GroupId, Resolution> resolved;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = plan.coordinates[i];
    const GroupId id = coordinate_to_group(c, dims, layout.g, layout.rows_per_group);
    auto it = resolved.find(id);
    if (it == resolved.end()) {
      const auto block = group_block(id, dims, layout.g, layout.rows_per_group);
      const auto& md = micro_domains[id.micro];
      auto lookup = fetcher.start(group_key(header.block_id, id));
      ObjectCheck check;
      if (mode == ConfigMode::GroupedOnly) {
        check = [&](std::span<const std::uint8_t> b, OpCounters* o) {
          const auto gc = wire::decode_grouped(b);
          if (!(gc.block == block)) return false;
          const auto coords = block.coordinates();
          for (std::size_t k = 0; k < coords.size(); ++k) {
            const auto& cc = coords[k];
            if (!verify_single(srs, header.row_commitments[cc.row], domain[cc.col],
                               wire::decode_scalar(gc.cells[k].data), OpeningProof::from_bytes(gc.cells[k].proof), o))
              return false;
          }
          return true;
        };
      } else {
        check = [&](std::span<const std::uint8_t> b, OpCounters* o) {
          return verify_mcell_bytes(srs, header, layout, id, b, o);
        };
      }
      auto verify = [&](std::span<const std::uint8_t> b) {
        // [Z(x)]_2 lives in this client's SRS cache, so its cost is charged
        // here rather than replayed from another client's check.
        if (mode == ConfigMode::PMP) vanishing_commitment_g2(srs, md, ops);
        return checked(memo, mode, id.band, id.micro, b, ops, check);
      };
      it = resolved.emplace(id, resolve(fetcher, lookup, verify)).first;
    }
    out.status[i] = it->second.status;
    out.fetched[i] = it->second.fetched;
  }
  out.distinct_groups = resolved.size();
  return out;
}

std::uint64_t effective_samples(std::uint64_t s, std::uint64_t g) {
  if (g == 0) throw std::invalid_argument("effective_samples: group size must be positive");
  return s / g;
}

SampleBudget required_samples(std::uint64_t target, std::uint64_t g) { return {target * g, target}; }

BlockFixture make_block(const ExperimentConfig& config) {
  config.dims.validate();
  if (config.srs_degree < config.dims.cols - 1 || config.srs_degree < config.layout.g)
    throw std::invalid_argument("ExperimentConfig: srs_degree must cover cols - 1 and g");

  std::mt19937_64 data_rng(config.data_seed);
  std::vector<std::uint8_t> data(config.dims.capacity_bytes());
  for (auto& b : data) b = static_cast<std::uint8_t>(data_rng());

  std::mt19937_64 srs_rng(config.srs_seed);
  Scalar secret = Scalar::random(srs_rng);
  SRS srs = SRS::generate(config.srs_degree, secret);
  DataGrid grid = build_grid(srs, data, config.dims);

  ByteWriter w;
  w.put_ascii("PMP-DAS-v1/block");
  w.put_bytes(data);
  BlockHeader header = make_header(grid, sha256(w.bytes()));
  return {std::move(srs), std::move(grid), std::move(header)};
}

ExperimentContext make_context(const ExperimentConfig& config) {
  auto block = make_block(config);
  ExperimentContext ctx{config, std::move(block.srs), std::move(block.grid), std::move(block.header), {}};
  for (auto m : kAllModes)
    ctx.objects[m] = build_objects(ctx.srs, ctx.grid, ctx.header.block_id, config.layout, m);
  return ctx;
}

MetricsRecord run_experiment(const ExperimentContext& ctx, ConfigMode mode, double churn, std::uint64_t seed) {
  const auto& cfg = ctx.config;
  SimDht dht(cfg.peers, cfg.replication, seed);
  const auto pub = publish_objects(ctx.objects.at(mode), dht);
  std::mt19937_64 churn_rng(splitmix64(seed ^ kChurnSalt));
  dht.kill_fraction(churn, churn_rng);

  MetricsRecord m;
  m.mode = mode;
  m.seed = seed;
  m.churn = churn;
  m.objects_stored = pub.objects_stored;
  m.put_failures = pub.failed_puts.size();
  m.proof_bytes = pub.proof_bytes;
  m.object_bytes = pub.object_bytes;
  m.wire_bytes = pub.wire_bytes;

  VerifyMemo memo;
  for (std::uint32_t client = 0; client < cfg.light_clients; ++client) {
    const auto plan = make_plan(cfg.dims, cfg.samples, splitmix64(seed ^ kClientSalt) + client);
    const SRS client_srs = ctx.srs.with_fresh_cache();
    const auto out = sample_and_verify(client_srs, ctx.header, plan, cfg.layout, mode, dht, cfg.retrieval, &memo);
    m.samples += plan.coordinates.size();
    m.hits += out.hits();
    m.verified += out.count(SampleStatus::Verified);
    m.verify_failures += out.count(SampleStatus::VerifyFailed);
    m.fetch_failures += out.count(SampleStatus::FetchFailed);
    m.lookups += out.lookups;
    m.retries += out.retries;
    m.distinct_groups += out.distinct_groups;
    m.effective_samples += out.effective_independent_samples;
    m.ops += out.verifier_ops;
  }
  m.hit_rate = m.samples == 0 ? 0.0 : static_cast<double>(m.hits) / static_cast<double>(m.samples);
  return m;
}

std::vector<std::pair<std::string, std::string>> MetricsRecord::to_kv() const {
  auto u = [](std::uint64_t v) { return std::to_string(v); };
  return {
      {"mode", std::string(mode_name(mode))},
      {"seed", u(seed)},
      {"churn", fmt_double(churn, "%.4f")},
      {"objects_stored", u(objects_stored)},
      {"proof_bytes", u(proof_bytes)},
      {"object_bytes", u(object_bytes)},
      {"hit_rate", fmt_double(hit_rate, "%.6f")},
      {"verify_failures", u(verify_failures)},
      {"g1_mults", u(ops.g1_scalar_mults)},
      {"g2_mults", u(ops.g2_scalar_mults)},
      {"pairings", u(ops.pairings)},
      {"interpolations", u(ops.interpolations)},
      {"wire_bytes", u(wire_bytes)},
      {"put_failures", u(put_failures)},
      {"samples", u(samples)},
      {"hits", u(hits)},
      {"verified", u(verified)},
      {"fetch_failures", u(fetch_failures)},
      {"lookups", u(lookups)},
      {"retries", u(retries)},
      {"distinct_groups", u(distinct_groups)},
      {"effective_samples", u(effective_samples)},
  };
}

}  // namespace pmp
