// SPDX-License-Identifier: Apache-2.0
#include "pmp/transcript.hpp"

namespace pmp {

Scalar hash_to_scalar(std::span<const std::uint8_t> data) {
  Scalar s = Scalar::from_wide(sha512(data));
  for (std::uint32_t counter = 1; s.is_zero(); ++counter) {
    ByteWriter w;
    w.put_bytes(data);
    w.put_u32_be(counter);
    s = Scalar::from_wide(sha512(w.bytes()));
  }
  return s;
}

std::vector<std::uint8_t> Transcript::serialize() const {
  ByteWriter w;
  w.put_ascii(kDomainTag);
  w.put_bytes(srs_id);
  w.put_u32_be(static_cast<std::uint32_t>(commitments.size()));
  for (const auto& c : commitments) w.put_bytes(c);
  w.put_u32_be(static_cast<std::uint32_t>(micro_domain.size()));
  for (const auto& z : micro_domain) w.put_bytes(z.to_bytes());
  w.put_u32_be(static_cast<std::uint32_t>(coords.size()));
  for (const auto& c : coords) {
    w.put_u32_be(c.row);
    w.put_u32_be(c.col);
  }
  w.put_bytes(wire::encode_block(block));
  return std::move(w).bytes();
}

Scalar derive_gamma(const Transcript& t) { return hash_to_scalar(t.serialize()); }

}  // namespace pmp
