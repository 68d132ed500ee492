// SPDX-License-Identifier: Apache-2.0
#include "pmp/hash.hpp"

#include <openssl/sha.h>

#include <string>

namespace pmp {

Digest32 sha256(std::span<const std::uint8_t> data) {
  Digest32 out;
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Digest64 sha512(std::span<const std::uint8_t> data) {
  Digest64 out;
  SHA512(data.data(), data.size(), out.data());
  return out;
}

void ByteWriter::put_u32_le(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::put_u32_be(std::uint32_t v) {
  for (int i = 3; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::put_u64_le(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

}  // namespace pmp
