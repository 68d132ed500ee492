// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "pmp/hash.hpp"

namespace pmp {

using DhtKey = Digest32;
using PeerIndex = std::uint32_t;

/// Unbiased draw from [0, n) that does not depend on the standard library's
/// distribution implementations, so runs replay identically everywhere.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// Replicated key -> bytes store over simulated peers.
///
/// Every peer has a 256-bit id derived from the seed; an object is placed on
/// the `replication` live peers closest to its key under the XOR metric.
/// There is no routing: a lookup contacts replica holders directly, closest
/// first. Each replica holds its own copy so single replicas can be tampered.
class SimDht {
 public:
  SimDht(std::uint32_t peers, std::uint32_t replication, std::uint64_t seed);

  std::uint32_t peer_count() const { return static_cast<std::uint32_t>(ids_.size()); }
  std::uint32_t replication() const { return replication_; }
  std::uint32_t live_count() const;
  bool is_live(PeerIndex p) const { return live_[p]; }
  void kill(PeerIndex p) { live_.at(p) = false; }
  void revive(PeerIndex p) { live_.at(p) = true; }
  /// Kills ceil(fraction * peers) distinct peers chosen by rng. Returns them.
  std::vector<PeerIndex> kill_fraction(double fraction, std::mt19937_64& rng);

  /// Makes every subsequent put of `key` fail.
  void inject_put_failure(const DhtKey& key) { failing_puts_.insert(key); }

  /// False when fewer than one replica could be written.
  bool put(const DhtKey& key, std::span<const std::uint8_t> value);

  /// Replica holders of `key`, closest first (empty if never stored).
  std::vector<PeerIndex> holders(const DhtKey& key) const;
  /// The copy held by `peer`, or nullopt if the peer is dead or holds none.
  std::optional<std::span<const std::uint8_t>> fetch(const DhtKey& key, PeerIndex peer) const;
  /// Succeeds iff at least one live replica holds the key.
  std::optional<std::vector<std::uint8_t>> get(const DhtKey& key) const;

  void tamper(const DhtKey& key, const std::function<void(std::vector<std::uint8_t>&)>& edit);
  void tamper_replica(const DhtKey& key, PeerIndex peer,
                      const std::function<void(std::vector<std::uint8_t>&)>& edit);

  std::size_t object_count() const { return store_.size(); }

 private:
  std::vector<PeerIndex> closest_live(const DhtKey& key, std::size_t n) const;

  std::vector<Digest32> ids_;
  std::vector<bool> live_;
  std::uint32_t replication_;
  std::set<DhtKey> failing_puts_;
  // key -> (peer, copy) in closeness order
  std::map<DhtKey, std::vector<std::pair<PeerIndex, std::vector<std::uint8_t>>>> store_;
};

}  // namespace pmp
