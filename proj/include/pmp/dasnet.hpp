// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmp/dht.hpp"
#include "pmp/grid.hpp"
#include "pmp/kzg.hpp"
#include "pmp/multiproof.hpp"
#include "pmp/wire.hpp"

namespace pmp {

/// The four ablation arms.
///   Vanilla        one BaselineCell per cell, verify_single per sample
///   BatchedSingle  same objects, one batched check over the fetched cells
///   GroupedOnly    one GroupedCell per group, per-cell proofs, no aggregation
///   PMP            one MCell per group with one aggregated proof
enum class ConfigMode { Vanilla, BatchedSingle, GroupedOnly, PMP };

inline constexpr ConfigMode kAllModes[] = {ConfigMode::Vanilla, ConfigMode::BatchedSingle,
                                           ConfigMode::GroupedOnly, ConfigMode::PMP};

std::string_view mode_name(ConfigMode m);
std::optional<ConfigMode> parse_mode(std::string_view s);
inline bool is_grouped(ConfigMode m) { return m == ConfigMode::GroupedOnly || m == ConfigMode::PMP; }

/// Light-client view of a block, received out of band and trusted.
struct BlockHeader {
  Digest32 block_id{};
  GridDims dims;
  std::vector<Commitment> row_commitments;
};

BlockHeader make_header(const DataGrid& grid, const Digest32& block_id);

struct Layout {
  std::uint32_t g = 4;
  std::uint32_t rows_per_group = 1;

  /// Cells carried by one object in `mode` (1 for per-cell modes).
  std::uint32_t cells_per_object(ConfigMode mode) const { return is_grouped(mode) ? g * rows_per_group : 1; }
};

DhtKey cell_key(const Digest32& block_id, const Coordinate& c);
DhtKey group_key(const Digest32& block_id, const GroupId& id);

struct StoredObject {
  DhtKey key{};
  std::vector<std::uint8_t> bytes;
  /// 48 per carried proof.
  std::uint64_t proof_bytes = 0;
  /// Data plus proofs, no block metadata or framing.
  std::uint64_t amortized_bytes = 0;
};

/// Full node / fat client side: every object the mode stores for the grid.
/// PMP objects carry a proof made with the transcript-derived gamma.
std::vector<StoredObject> build_objects(const SRS& srs, const DataGrid& grid, const Digest32& block_id,
                                        const Layout& layout, ConfigMode mode, OpCounters* ops = nullptr);

struct PublishResult {
  std::uint64_t objects_stored = 0;
  std::vector<DhtKey> failed_puts;
  std::uint64_t proof_bytes = 0;
  std::uint64_t object_bytes = 0;  // amortization view
  std::uint64_t wire_bytes = 0;    // encoded size
};

PublishResult publish_objects(std::span<const StoredObject> objects, SimDht& dht);
PublishResult publish(const SRS& srs, const DataGrid& grid, const Digest32& block_id, const Layout& layout,
                      ConfigMode mode, SimDht& dht);

struct SamplingPlan {
  std::uint64_t seed = 0;
  std::vector<Coordinate> coordinates;  // distinct
};

/// Draws `samples` distinct coordinates uniformly over the extended grid.
SamplingPlan make_plan(const GridDims& dims, std::uint32_t samples, std::uint64_t seed);

/// Abstract-tick timing of lookups. A contact with a dead replica costs
/// timeout_ticks; a live one costs rtt_ticks plus ceil(bytes / bytes_per_tick).
/// A lookup counts only if it completes within window_ticks of the client's
/// sampling round; window_ticks == 0 disables the window.
struct RetrievalConfig {
  std::uint32_t retry_budget = 3;
  std::uint64_t window_ticks = 600;
  std::uint64_t rtt_ticks = 20;
  std::uint64_t bytes_per_tick = 64;
  std::uint64_t timeout_ticks = 100;
};

enum class SampleStatus { Verified, FetchFailed, VerifyFailed };

struct RetrievalOutcome {
  std::vector<SampleStatus> status;  // parallel to plan.coordinates
  std::vector<bool> fetched;         // object retrieved within budget and window
  std::uint64_t lookups = 0;         // distinct objects requested
  std::uint64_t attempts = 0;
  std::uint64_t retries = 0;
  std::uint64_t distinct_groups = 0;
  std::uint64_t effective_independent_samples = 0;
  std::uint64_t ticks_used = 0;
  OpCounters verifier_ops;

  std::uint64_t count(SampleStatus s) const;
  std::uint64_t hits() const;
};

/// Verdicts of per-object checks, shared by the light clients of one run.
/// Keyed by mode, target and a digest of the exact object bytes; a repeat
/// replays the verdict and the operation counts of the original check.
class VerifyMemo {
 public:
  struct Entry {
    bool ok = false;
    OpCounters ops;
  };
  const Entry* find(const Digest32& key) const;
  void insert(const Digest32& key, const Entry& e) { entries_.insert_or_assign(key, e); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<Digest32, Entry> entries_;
};

/// Decodes one MCell and checks it against the header as the object of
/// group `id`. Throws wire::DecodeError or EncodingError on malformed bytes.
bool verify_mcell_bytes(const SRS& srs, const BlockHeader& header, const Layout& layout, const GroupId& id,
                        std::span<const std::uint8_t> bytes, OpCounters* ops = nullptr);

/// Light client: fetch, verify, retry with the next replica on fetch or
/// verification failure. Verified always means a cryptographic check over
/// data containing the sampled value passed.
RetrievalOutcome sample_and_verify(const SRS& srs, const BlockHeader& header, const SamplingPlan& plan,
                                   const Layout& layout, ConfigMode mode, const SimDht& dht,
                                   const RetrievalConfig& rc, VerifyMemo* memo = nullptr);

/// floor(s / g). Throws std::invalid_argument when g == 0.
std::uint64_t effective_samples(std::uint64_t s, std::uint64_t g);

struct SampleBudget {
  std::uint64_t coordinate_samples = 0;  // target * g
  std::uint64_t distinct_groups = 0;     // alternative criterion: touch >= target groups
};

SampleBudget required_samples(std::uint64_t target, std::uint64_t g);

struct ExperimentConfig {
  GridDims dims{4, 8, 2};
  std::uint64_t data_seed = 1;
  std::uint64_t srs_seed = 7;
  std::uint32_t srs_degree = 16;
  Layout layout;
  std::uint32_t peers = 50;
  std::uint32_t replication = 5;
  // Overlay parameters of the measured deployment, carried for provenance; the
  // simulator does not route.
  std::uint32_t kademlia_alpha = 3;
  std::uint32_t kademlia_bucket = 20;
  std::uint32_t light_clients = 8;
  std::uint32_t samples = 16;
  RetrievalConfig retrieval;
};

struct BlockFixture {
  SRS srs;
  DataGrid grid;
  BlockHeader header;
};

/// Deterministic SRS, grid filled to capacity from data_seed, and header.
BlockFixture make_block(const ExperimentConfig& config);

/// Grid, header and all four object sets, built once per configuration.
struct ExperimentContext {
  ExperimentConfig config;
  SRS srs;
  DataGrid grid;
  BlockHeader header;
  std::map<ConfigMode, std::vector<StoredObject>> objects;
};

ExperimentContext make_context(const ExperimentConfig& config);

struct MetricsRecord {
  ConfigMode mode = ConfigMode::Vanilla;
  std::uint64_t seed = 0;
  double churn = 0.0;
  std::uint64_t objects_stored = 0;
  std::uint64_t put_failures = 0;
  std::uint64_t proof_bytes = 0;
  std::uint64_t object_bytes = 0;
  std::uint64_t wire_bytes = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double hit_rate = 0.0;
  std::uint64_t verified = 0;
  std::uint64_t verify_failures = 0;
  std::uint64_t fetch_failures = 0;
  std::uint64_t lookups = 0;
  std::uint64_t retries = 0;
  std::uint64_t distinct_groups = 0;
  std::uint64_t effective_samples = 0;
  OpCounters ops;  // verifier side, summed over light clients

  /// Flat key -> value view; values are deterministic decimal strings.
  std::vector<std::pair<std::string, std::string>> to_kv() const;
};

/// Publishes, kills ceil(churn * peers) peers, then runs every light client.
/// Deterministic in (context, mode, churn, seed). Throws for churn outside [0, 1).
MetricsRecord run_experiment(const ExperimentContext& ctx, ConfigMode mode, double churn, std::uint64_t seed);

}  // namespace pmp
