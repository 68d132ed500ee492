// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

#include <blst.h>

#include "pmp/field.hpp"

namespace pmp {

/// Raised when a group-element encoding is malformed, off-curve or outside
/// the prime-order subgroup. Distinct from a verifier returning false.
class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class G1 {
 public:
  static constexpr std::size_t kCompressedSize = 48;
  using Compressed = std::array<std::uint8_t, kCompressedSize>;

  G1();  // identity
  static G1 identity() { return G1(); }
  static G1 generator();
  /// Validates on-curve and subgroup membership.
  static G1 decompress(std::span<const std::uint8_t, kCompressedSize> bytes);

  Compressed compress() const;
  bool is_identity() const;

  G1 operator-() const;
  G1& operator+=(const G1& o);
  G1& operator-=(const G1& o);
  friend G1 operator+(G1 a, const G1& b) { return a += b; }
  friend G1 operator-(G1 a, const G1& b) { return a -= b; }
  friend G1 operator*(const G1& p, const Scalar& s);
  friend bool operator==(const G1& a, const G1& b);

  blst_p1_affine to_affine() const;

 private:
  blst_p1 p_;
};

class G2 {
 public:
  static constexpr std::size_t kCompressedSize = 96;
  using Compressed = std::array<std::uint8_t, kCompressedSize>;

  G2();
  static G2 identity() { return G2(); }
  static G2 generator();
  static G2 decompress(std::span<const std::uint8_t, kCompressedSize> bytes);

  Compressed compress() const;
  bool is_identity() const;

  G2 operator-() const;
  G2& operator+=(const G2& o);
  G2& operator-=(const G2& o);
  friend G2 operator+(G2 a, const G2& b) { return a += b; }
  friend G2 operator-(G2 a, const G2& b) { return a -= b; }
  friend G2 operator*(const G2& p, const Scalar& s);
  friend bool operator==(const G2& a, const G2& b);

  blst_p2_affine to_affine() const;

 private:
  blst_p2 p_;
};

/// e(a1, b1) == e(a2, b2), evaluated as one product of two Miller loops
/// followed by a single final exponentiation.
bool pairing_equal(const G1& a1, const G2& b1, const G1& a2, const G2& b2);

}  // namespace pmp
