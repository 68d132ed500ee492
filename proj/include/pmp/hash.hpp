// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pmp {

using Digest32 = std::array<std::uint8_t, 32>;
using Digest64 = std::array<std::uint8_t, 64>;

Digest32 sha256(std::span<const std::uint8_t> data);
Digest64 sha512(std::span<const std::uint8_t> data);

/// Append-only byte sink with fixed-width integer helpers.
class ByteWriter {
 public:
  void put_u8(std::uint8_t v) { buf_.push_back(v); }
  void put_u32_le(std::uint32_t v);
  void put_u32_be(std::uint32_t v);
  void put_u64_le(std::uint64_t v);
  void put_bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  void put_ascii(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }

  const std::vector<std::uint8_t>& bytes() const& { return buf_; }
  std::vector<std::uint8_t> bytes() && { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace pmp
