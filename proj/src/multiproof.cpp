// SPDX-License-Identifier: Apache-2.0
#include "pmp/multiproof.hpp"

#include <stdexcept>

namespace pmp {

void OpenedGroup::validate() const {
  if (commitments.empty()) throw std::invalid_argument("OpenedGroup: at least one commitment required");
  if (values.size() != commitments.size())
    throw std::invalid_argument("OpenedGroup: one value row per commitment required");
  for (const auto& row : values)
    if (row.size() != micro_domain.size())
      throw std::invalid_argument("OpenedGroup: value row must cover the full micro-domain");
}

Digest32 micro_domain_digest(const MicroDomain& md) {
  ByteWriter w;
  w.put_ascii("PMP-DAS-v1/zt");
  w.put_u32_be(static_cast<std::uint32_t>(md.size()));
  for (const auto& z : md.points()) w.put_bytes(z.to_bytes());
  return sha256(w.bytes());
}

G2 vanishing_commitment_g2(const SRS& srs, const MicroDomain& md, OpCounters* ops) {
  const Digest32 key = micro_domain_digest(md);
  if (auto hit = srs.cached_g2(key)) return *hit;
  const G2 z = commit_g2(srs, vanishing_poly(md.domain()), ops);
  srs.store_g2(key, z);
  return z;
}

AggregatedProof open_shared(const SRS& srs, std::span<const Polynomial> polys, const MicroDomain& md,
                            const Scalar& gamma, OpCounters* ops) {
  if (polys.empty()) throw std::invalid_argument("open_shared: no polynomials");
  if (gamma.is_zero()) throw std::invalid_argument("open_shared: gamma must be nonzero");
  const auto bound = static_cast<std::ptrdiff_t>(srs.degree_bound());
  Polynomial combined;
  Scalar weight = Scalar::one();
  for (const auto& f : polys) {
    if (f.degree() > bound) throw std::invalid_argument("open_shared: polynomial degree exceeds SRS bound");
    combined += f * weight;
    weight *= gamma;
  }
  auto [h, remainder] = div_rem(combined, vanishing_poly(md.domain()));
  (void)remainder;
  return {commit(srs, h, ops).point};
}

bool verify_shared(const SRS& srs, const OpenedGroup& group, const AggregatedProof& proof,
                   const Scalar& gamma, OpCounters* ops) {
  group.validate();
  const std::size_t g = group.micro_domain.size();
  if (g > srs.degree_bound())
    throw std::invalid_argument("verify_shared: micro-domain larger than SRS degree bound");

  // Combining value rows first makes the interpolant linear in gamma:
  // R = sum gamma^(i-1) r_i with a single interpolation.
  std::vector<Scalar> combined_values(g);
  G1 combined_commitment;
  Scalar weight = Scalar::one();
  for (std::size_t i = 0; i < group.commitments.size(); ++i) {
    combined_commitment += group.commitments[i].point * weight;
    for (std::size_t j = 0; j < g; ++j) combined_values[j] += weight * group.values[i][j];
    weight *= gamma;
  }
  const Polynomial r = interpolate(group.micro_domain.domain(), combined_values);

  const auto powers = srs.g1_powers();
  const auto rc = r.coeffs();
  G1 r_commit;
  for (std::size_t j = 0; j < g; ++j) r_commit += powers[j] * (j < rc.size() ? rc[j] : Scalar::zero());
  const G1 neg_r = r_commit * (-Scalar::one());

  if (ops) {
    ops->interpolations += 1;
    ops->g1_scalar_mults += group.commitments.size() + g + 1;
    ops->pairings += 2;
  }
  const G2 z = vanishing_commitment_g2(srs, group.micro_domain, ops);
  return pairing_equal(combined_commitment + neg_r, srs.g2_powers()[0], proof.witness, z);
}

AggregatedProof open_generic(const SRS& srs, std::span<const Polynomial> polys,
                             std::span<const EvaluationDomain> opened_sets,
                             std::span<const std::vector<Scalar>> values, const Scalar& gamma,
                             OpCounters* ops) {
  if (polys.empty()) throw std::invalid_argument("open_generic: no polynomials");
  if (opened_sets.size() != polys.size() || values.size() != polys.size())
    throw std::invalid_argument("open_generic: one opened set and value vector per polynomial");
  const auto bound = static_cast<std::ptrdiff_t>(srs.degree_bound());
  Polynomial h;
  Scalar weight = Scalar::one();
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].degree() > bound) throw std::invalid_argument("open_generic: polynomial degree exceeds SRS bound");
    const Polynomial r = interpolate(opened_sets[i], values[i]);
    if (ops) ops->interpolations += 1;
    auto [q, rem] = div_rem(polys[i] - r, vanishing_poly(opened_sets[i]));
    if (!rem.is_zero())
      throw std::invalid_argument("open_generic: opened values do not match the polynomial");
    h += q * weight;
    weight *= gamma;
  }
  return {commit(srs, h, ops).point};
}

Transcript group_transcript(const SRS& srs, std::span<const Commitment> commitments,
                            const MicroDomain& md, const wire::GCellBlock& block) {
  if (!block.valid()) throw std::invalid_argument("group_transcript: inverted block");
  Transcript t;
  t.srs_id = srs.id();
  t.commitments.reserve(commitments.size());
  for (const auto& c : commitments) t.commitments.push_back(c.to_bytes());
  t.micro_domain.assign(md.points().begin(), md.points().end());
  t.coords = block.coordinates();
  t.block = block;
  return t;
}

AggregatedProof open_group(const SRS& srs, std::span<const Polynomial> polys,
                           std::span<const Commitment> commitments, const MicroDomain& md,
                           const wire::GCellBlock& block, OpCounters* ops) {
  const Scalar gamma = derive_gamma(group_transcript(srs, commitments, md, block));
  return open_shared(srs, polys, md, gamma, ops);
}

bool verify_group(const SRS& srs, const OpenedGroup& group, const wire::GCellBlock& block,
                  const AggregatedProof& proof, OpCounters* ops) {
  if (!block.valid()) return false;
  const Scalar gamma = derive_gamma(group_transcript(srs, group.commitments, group.micro_domain, block));
  return verify_shared(srs, group, proof, gamma, ops);
}

}  // namespace pmp
