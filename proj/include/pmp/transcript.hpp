// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pmp/field.hpp"
#include "pmp/hash.hpp"
#include "pmp/wire.hpp"

namespace pmp {

inline constexpr std::string_view kDomainTag = "PMP-DAS-v1";
inline constexpr std::string_view kBatchDomainTag = "PMP-DAS-v1/batch";

/// SHA-512 of the input reduced mod r. A zero result is re-hashed with a
/// 32-bit big-endian counter appended (1, 2, ...) until nonzero.
Scalar hash_to_scalar(std::span<const std::uint8_t> data);

/// Everything the aggregated challenge is bound to.
///
/// Serialized as:
///   "PMP-DAS-v1" | srs_id[32]
///   | u32be(k) | k x commitment[48]      (ascending row order)
///   | u32be(g) | g x scalar[32]          (micro-domain points)
///   | u32be(n) | n x (u32be row, u32be col)
///   | GCellBlock[16]                     (little-endian, as on the wire)
struct Transcript {
  Digest32 srs_id{};
  std::vector<std::array<std::uint8_t, 48>> commitments;
  std::vector<Scalar> micro_domain;
  std::vector<Coordinate> coords;
  wire::GCellBlock block;

  std::vector<std::uint8_t> serialize() const;
};

Scalar derive_gamma(const Transcript& t);

}  // namespace pmp
