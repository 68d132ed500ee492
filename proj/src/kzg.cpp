// SPDX-License-Identifier: Apache-2.0
#include "pmp/kzg.hpp"

#include <stdexcept>

#include "pmp/transcript.hpp"

namespace pmp {

SRS::SRS(std::vector<G1> g1, std::vector<G2> g2)
    : g1_powers_(std::move(g1)), g2_powers_(std::move(g2)), cache_(std::make_shared<Cache>()) {
  ByteWriter w;
  for (const auto& p : g1_powers_) w.put_bytes(p.compress());
  for (const auto& p : g2_powers_) w.put_bytes(p.compress());
  id_ = sha256(w.bytes());
}

SRS SRS::generate(std::size_t degree_bound, const Scalar& secret) {
  if (degree_bound == 0) throw std::invalid_argument("SRS: degree bound must be at least 1");
  if (secret.is_zero()) throw std::invalid_argument("SRS: secret must be nonzero");
  std::vector<G1> g1;
  std::vector<G2> g2;
  g1.reserve(degree_bound + 1);
  g2.reserve(degree_bound + 1);
  const G1 gen1 = G1::generator();
  const G2 gen2 = G2::generator();
  Scalar power = Scalar::one();
  for (std::size_t i = 0; i <= degree_bound; ++i) {
    g1.push_back(gen1 * power);
    g2.push_back(gen2 * power);
    power *= secret;
  }
  return SRS(std::move(g1), std::move(g2));
}

SRS SRS::from_powers(std::vector<G1> g1_powers, std::vector<G2> g2_powers) {
  if (g1_powers.size() < 2 || g1_powers.size() != g2_powers.size())
    throw std::invalid_argument("SRS: need matching G1/G2 power lists of length >= 2");
  if (!(g1_powers[0] == G1::generator()) || !(g2_powers[0] == G2::generator()))
    throw std::invalid_argument("SRS: first powers must be the group generators");
  return SRS(std::move(g1_powers), std::move(g2_powers));
}

std::optional<G2> SRS::cached_g2(const Digest32& key) const {
  std::lock_guard lock(cache_->mu);
  auto it = cache_->entries.find(key);
  if (it == cache_->entries.end()) return std::nullopt;
  return it->second;
}

void SRS::store_g2(const Digest32& key, const G2& value) const {
  std::lock_guard lock(cache_->mu);
  cache_->entries.insert_or_assign(key, value);
}

void SRS::clear_cache() const {
  std::lock_guard lock(cache_->mu);
  cache_->entries.clear();
}

SRS SRS::with_fresh_cache() const {
  SRS copy = *this;
  copy.cache_ = std::make_shared<Cache>();
  return copy;
}

Commitment commit(const SRS& srs, const Polynomial& p, OpCounters* ops) {
  if (p.degree() > static_cast<std::ptrdiff_t>(srs.degree_bound()))
    throw std::invalid_argument("commit: polynomial degree exceeds SRS bound");
  const auto c = p.coeffs();
  const auto powers = srs.g1_powers();
  G1 acc;
  for (std::size_t i = 0; i < c.size(); ++i) acc += powers[i] * c[i];
  if (ops) ops->g1_scalar_mults += c.size();
  return {acc};
}

G2 commit_g2(const SRS& srs, const Polynomial& p, OpCounters* ops) {
  if (p.degree() > static_cast<std::ptrdiff_t>(srs.degree_bound()))
    throw std::invalid_argument("commit_g2: polynomial degree exceeds SRS bound");
  const auto c = p.coeffs();
  const auto powers = srs.g2_powers();
  G2 acc;
  for (std::size_t i = 0; i < c.size(); ++i) acc += powers[i] * c[i];
  if (ops) ops->g2_scalar_mults += c.size();
  return acc;
}

SingleOpeningResult open_single(const SRS& srs, const Polynomial& p, const Scalar& z,
                                OpCounters* ops) {
  if (p.degree() > static_cast<std::ptrdiff_t>(srs.degree_bound()))
    throw std::invalid_argument("open_single: polynomial degree exceeds SRS bound");
  const Scalar value = p(z);
  auto [quotient, rem] = div_rem(p - Polynomial::constant(value), Polynomial::linear_root(z));
  if (!rem.is_zero()) throw std::logic_error("open_single: non-exact division");
  return {value, OpeningProof{commit(srs, quotient, ops).point}};
}

bool verify_single(const SRS& srs, const Commitment& cm, const Scalar& z, const Scalar& value,
                   const OpeningProof& proof, OpCounters* ops) {
  const G1 lhs = cm.point - srs.g1_powers()[0] * value;
  const G2 x_minus_z = srs.g2_powers()[1] - srs.g2_powers()[0] * z;
  if (ops) {
    ops->g1_scalar_mults += 1;
    ops->g2_scalar_mults += 1;
    ops->pairings += 2;
  }
  return pairing_equal(lhs, srs.g2_powers()[0], proof.witness, x_minus_z);
}

bool verify_batch_independent(const SRS& srs, std::span<const SingleOpening> openings,
                              const Scalar& rho, OpCounters* ops) {
  if (openings.empty()) throw std::invalid_argument("verify_batch_independent: empty batch");
  G1 lhs;
  G1 proofs;
  Scalar value_sum;
  Scalar weight = Scalar::one();
  for (const auto& o : openings) {
    lhs += o.commitment.point * weight;
    lhs += o.proof.witness * (weight * o.point);
    proofs += o.proof.witness * weight;
    value_sum += weight * o.value;
    weight *= rho;
  }
  lhs -= srs.g1_powers()[0] * value_sum;
  if (ops) {
    ops->g1_scalar_mults += 3 * openings.size() + 1;
    ops->pairings += 2;
  }
  return pairing_equal(lhs, srs.g2_powers()[0], proofs, srs.g2_powers()[1]);
}

Scalar derive_batch_rho(const SRS& srs, std::span<const SingleOpening> openings) {
  ByteWriter w;
  w.put_ascii(kBatchDomainTag);
  w.put_bytes(srs.id());
  w.put_u32_be(static_cast<std::uint32_t>(openings.size()));
  for (const auto& o : openings) {
    w.put_bytes(o.commitment.to_bytes());
    w.put_bytes(o.point.to_bytes());
    w.put_bytes(o.value.to_bytes());
    w.put_bytes(o.proof.to_bytes());
  }
  return hash_to_scalar(w.bytes());
}

}  // namespace pmp
