// SPDX-License-Identifier: Apache-2.0
#include "pmp/dht.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pmp {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

SimDht::SimDht(std::uint32_t peers, std::uint32_t replication, std::uint64_t seed)
    : live_(peers, true), replication_(replication) {
  if (peers == 0) throw std::invalid_argument("SimDht: need at least one peer");
  if (replication == 0 || replication > peers)
    throw std::invalid_argument("SimDht: replication must be in [1, peers]");
  ids_.reserve(peers);
  for (std::uint32_t i = 0; i < peers; ++i) {
    ByteWriter w;
    w.put_ascii("PMP-DAS-v1/peer");
    w.put_u64_le(seed);
    w.put_u32_le(i);
    ids_.push_back(sha256(w.bytes()));
  }
}

std::uint32_t SimDht::live_count() const {
  return static_cast<std::uint32_t>(std::count(live_.begin(), live_.end(), true));
}

std::vector<PeerIndex> SimDht::kill_fraction(double fraction, std::mt19937_64& rng) {
  if (!(fraction >= 0.0) || fraction >= 1.0) throw std::invalid_argument("kill_fraction: churn must be in [0, 1)");
  const auto n = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(peer_count()) - 1e-9));
  std::vector<PeerIndex> order(peer_count());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + uniform_below(rng, order.size() - i);
    std::swap(order[i], order[j]);
    live_[order[i]] = false;
  }
  order.resize(n);
  return order;
}

std::vector<PeerIndex> SimDht::closest_live(const DhtKey& key, std::size_t n) const {
  std::vector<PeerIndex> cands;
  for (PeerIndex p = 0; p < peer_count(); ++p)
    if (live_[p]) cands.push_back(p);
  auto distance = [&](PeerIndex p) {
    Digest32 d;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = ids_[p][i] ^ key[i];
    return d;
  };
  std::sort(cands.begin(), cands.end(), [&](PeerIndex a, PeerIndex b) { return distance(a) < distance(b); });
  if (cands.size() > n) cands.resize(n);
  return cands;
}

bool SimDht::put(const DhtKey& key, std::span<const std::uint8_t> value) {
  if (failing_puts_.contains(key)) return false;
  const auto targets = closest_live(key, replication_);
  if (targets.empty()) return false;
  auto& replicas = store_[key];
  replicas.clear();
  for (PeerIndex p : targets) replicas.emplace_back(p, std::vector<std::uint8_t>(value.begin(), value.end()));
  return true;
}

std::vector<PeerIndex> SimDht::holders(const DhtKey& key) const {
  std::vector<PeerIndex> out;
  if (auto it = store_.find(key); it != store_.end())
    for (const auto& [peer, copy] : it->second) out.push_back(peer);
  return out;
}

std::optional<std::span<const std::uint8_t>> SimDht::fetch(const DhtKey& key, PeerIndex peer) const {
  if (peer >= peer_count() || !live_[peer]) return std::nullopt;
  auto it = store_.find(key);
  if (it == store_.end()) return std::nullopt;
  for (const auto& [holder, copy] : it->second)
    if (holder == peer) return std::span<const std::uint8_t>(copy);
  return std::nullopt;
}

std::optional<std::vector<std::uint8_t>> SimDht::get(const DhtKey& key) const {
  for (PeerIndex p : holders(key))
    if (auto v = fetch(key, p)) return std::vector<std::uint8_t>(v->begin(), v->end());
  return std::nullopt;
}

void SimDht::tamper(const DhtKey& key, const std::function<void(std::vector<std::uint8_t>&)>& edit) {
  auto it = store_.find(key);
  if (it == store_.end()) throw std::out_of_range("SimDht::tamper: unknown key");
  for (auto& [peer, copy] : it->second) edit(copy);
}

void SimDht::tamper_replica(const DhtKey& key, PeerIndex peer,
                            const std::function<void(std::vector<std::uint8_t>&)>& edit) {
  auto it = store_.find(key);
  if (it == store_.end()) throw std::out_of_range("SimDht::tamper_replica: unknown key");
  for (auto& [holder, copy] : it->second)
    if (holder == peer) return edit(copy);
  throw std::out_of_range("SimDht::tamper_replica: peer holds no replica");
}

}  // namespace pmp
