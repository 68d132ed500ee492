// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "pmp/curve.hpp"
#include "pmp/field.hpp"
#include "pmp/hash.hpp"
#include "pmp/poly.hpp"

namespace pmp {

/// Group and interpolation work performed by one prover/verifier call.
///
/// Accounting rules: every scalar multiplication actually executed is
/// counted, including multiplications by one; a pairing is one Miller loop
/// (the shared final exponentiation is not counted separately); an
/// interpolation is one call to interpolate() regardless of how many value
/// rows are combined before it.
struct OpCounters {
  std::uint64_t g1_scalar_mults = 0;
  std::uint64_t g2_scalar_mults = 0;
  std::uint64_t pairings = 0;
  std::uint64_t interpolations = 0;

  OpCounters& operator+=(const OpCounters& o) {
    g1_scalar_mults += o.g1_scalar_mults;
    g2_scalar_mults += o.g2_scalar_mults;
    pairings += o.pairings;
    interpolations += o.interpolations;
    return *this;
  }
  friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

/// Powers of a secret x in both groups, [x^i]_1 and [x^i]_2 for i = 0..d.
///
/// Copies share the memoized [Z_T(x)]_2 table. Racing writers store the same
/// deterministic value, so last-writer-wins is harmless.
class SRS {
 public:
  /// Test-only trusted setup; the secret is not retained.
  static SRS generate(std::size_t degree_bound, const Scalar& secret);
  /// Rebuilds from stored powers (fixture loading).
  static SRS from_powers(std::vector<G1> g1_powers, std::vector<G2> g2_powers);

  std::size_t degree_bound() const { return g1_powers_.size() - 1; }
  std::span<const G1> g1_powers() const { return g1_powers_; }
  std::span<const G2> g2_powers() const { return g2_powers_; }
  const Digest32& id() const { return id_; }

  std::optional<G2> cached_g2(const Digest32& key) const;
  void store_g2(const Digest32& key, const G2& value) const;
  void clear_cache() const;
  /// Same powers with an independent, empty memo table.
  SRS with_fresh_cache() const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<Digest32, G2> entries;
  };

  SRS(std::vector<G1> g1, std::vector<G2> g2);

  std::vector<G1> g1_powers_;
  std::vector<G2> g2_powers_;
  Digest32 id_{};
  std::shared_ptr<Cache> cache_;
};

struct Commitment {
  G1 point;

  G1::Compressed to_bytes() const { return point.compress(); }
  static Commitment from_bytes(std::span<const std::uint8_t, 48> b) { return {G1::decompress(b)}; }
  friend bool operator==(const Commitment&, const Commitment&) = default;
};

struct OpeningProof {
  G1 witness;

  G1::Compressed to_bytes() const { return witness.compress(); }
  static OpeningProof from_bytes(std::span<const std::uint8_t, 48> b) { return {G1::decompress(b)}; }
  friend bool operator==(const OpeningProof&, const OpeningProof&) = default;
};

struct SingleOpening {
  Commitment commitment;
  Scalar point;
  Scalar value;
  OpeningProof proof;
};

/// Sum c_i [x^i]_1. Throws std::invalid_argument if deg p > d.
Commitment commit(const SRS& srs, const Polynomial& p, OpCounters* ops = nullptr);
/// Same in G2; requires deg p <= d.
G2 commit_g2(const SRS& srs, const Polynomial& p, OpCounters* ops = nullptr);

struct SingleOpeningResult {
  Scalar value;
  OpeningProof proof;
};

SingleOpeningResult open_single(const SRS& srs, const Polynomial& p, const Scalar& z,
                                OpCounters* ops = nullptr);

/// e(cm - [value]_1, g2) == e(proof, [x - z]_2)
bool verify_single(const SRS& srs, const Commitment& cm, const Scalar& z, const Scalar& value,
                   const OpeningProof& proof, OpCounters* ops = nullptr);

/// Random-linear-combination check over independent openings:
///   e(sum rho^i (cm_i - [v_i]_1 + z_i pi_i), g2) == e(sum rho^i pi_i, [x]_2)
/// Throws std::invalid_argument on an empty list.
bool verify_batch_independent(const SRS& srs, std::span<const SingleOpening> openings,
                              const Scalar& rho, OpCounters* ops = nullptr);

/// Fiat-Shamir combiner for verify_batch_independent, bound to every opening.
Scalar derive_batch_rho(const SRS& srs, std::span<const SingleOpening> openings);

}  // namespace pmp
