// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "pmp/kzg.hpp"
#include "pmp/poly.hpp"
#include "pmp/transcript.hpp"
#include "pmp/wire.hpp"

namespace pmp {

/// Commitment to h(X) for one shared micro-domain; 48 bytes compressed.
struct AggregatedProof {
  G1 witness;

  G1::Compressed to_bytes() const { return witness.compress(); }
  static AggregatedProof from_bytes(std::span<const std::uint8_t, 48> b) { return {G1::decompress(b)}; }
  friend bool operator==(const AggregatedProof&, const AggregatedProof&) = default;
};

/// k commitments opened on the same micro-domain; values[i] is the full
/// evaluation vector of polynomial i over every point of the micro-domain.
struct OpenedGroup {
  std::vector<Commitment> commitments;
  std::vector<std::vector<Scalar>> values;
  MicroDomain micro_domain;

  /// Throws std::invalid_argument when k == 0 or a value row is not length g.
  void validate() const;
};

/// Cache key for [Z_T(x)]_2.
Digest32 micro_domain_digest(const MicroDomain& md);

/// [Z_T(x)]_2, memoized in the SRS. Counts g + 1 G2 multiplications on a
/// cold cache and none on a warm one.
G2 vanishing_commitment_g2(const SRS& srs, const MicroDomain& md, OpCounters* ops = nullptr);

/// h(X) = floor(sum_i gamma^(i-1) f_i(X) / Z_T(X)), committed in G1.
///
/// The remainder of the division is exactly sum_i gamma^(i-1) r_i(X), so
/// dropping it subtracts the interpolants without computing them.
AggregatedProof open_shared(const SRS& srs, std::span<const Polynomial> polys, const MicroDomain& md,
                            const Scalar& gamma, OpCounters* ops = nullptr);

/// e(C - [R(x)]_1, g2) == e(proof, [Z_T(x)]_2) with C = sum gamma^(i-1) c_i
/// and R the interpolant of the gamma-combined value rows.
///
/// G1 work: k for C, g for [R(x)]_1 (always over g coefficients), and 1 for
/// negating [R(x)]_1, done as a multiplication by -1 so that the counted
/// total is k + g + 1.
bool verify_shared(const SRS& srs, const OpenedGroup& group, const AggregatedProof& proof,
                   const Scalar& gamma, OpCounters* ops = nullptr);

/// Generic form with a separate opened set per polynomial:
///   h(X) = sum_i gamma^(i-1) (f_i(X) - r_i(X)) / Z_{U_i}(X)
/// Cross-check oracle for open_shared. Throws std::invalid_argument when
/// some f_i - r_i is not divisible by Z_{U_i} (values inconsistent with f_i).
AggregatedProof open_generic(const SRS& srs, std::span<const Polynomial> polys,
                             std::span<const EvaluationDomain> opened_sets,
                             std::span<const std::vector<Scalar>> values, const Scalar& gamma,
                             OpCounters* ops = nullptr);

/// Transcript for a grouped object: commitments in the given (ascending row)
/// order, micro-domain points, every covered coordinate row-major, block.
/// Throws std::invalid_argument for an inverted block.
Transcript group_transcript(const SRS& srs, std::span<const Commitment> commitments,
                            const MicroDomain& md, const wire::GCellBlock& block);

/// Prover entry point with gamma derived from the group transcript.
AggregatedProof open_group(const SRS& srs, std::span<const Polynomial> polys,
                           std::span<const Commitment> commitments, const MicroDomain& md,
                           const wire::GCellBlock& block, OpCounters* ops = nullptr);

/// Verifier entry point; re-derives gamma locally from (group, block).
/// An inverted block is rejected.
bool verify_group(const SRS& srs, const OpenedGroup& group, const wire::GCellBlock& block,
                  const AggregatedProof& proof, OpCounters* ops = nullptr);

}  // namespace pmp
