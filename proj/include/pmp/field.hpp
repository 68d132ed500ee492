// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>

#include <blst.h>

namespace pmp {

using Bytes32 = std::array<std::uint8_t, 32>;

/// Element of the BLS12-381 scalar field Fr.
///
/// Held internally in blst's Montgomery representation. The canonical
/// external form is 32 bytes little-endian (four 64-bit limbs, least
/// significant first), always strictly below the field modulus.
class Scalar {
 public:
  static constexpr std::size_t kEncodedSize = 32;

  Scalar() : value_{} {}
  explicit Scalar(std::uint64_t v);

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }

  /// Returns nullopt when the encoding is not below the modulus.
  static std::optional<Scalar> from_canonical(std::span<const std::uint8_t, 32> bytes);
  /// Reduces an arbitrary-length little-endian integer modulo r.
  static Scalar from_wide(std::span<const std::uint8_t> le_bytes);
  static Scalar from_limbs(const std::array<std::uint64_t, 4>& limbs);
  static Scalar random(std::mt19937_64& rng);

  Bytes32 to_bytes() const;
  std::array<std::uint64_t, 4> to_limbs() const;
  std::string to_hex() const;

  bool is_zero() const;
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;
  Scalar pow(const std::array<std::uint64_t, 4>& e) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  const blst_fr& raw() const { return value_; }

 private:
  blst_fr value_;
};

/// r - 1 = 2^32 * t with t odd; 7 generates the full multiplicative group.
inline constexpr unsigned kTwoAdicity = 32;

/// Primitive n-th root of unity; n must be a power of two no larger than 2^32.
Scalar root_of_unity(std::uint64_t n);

}  // namespace pmp
