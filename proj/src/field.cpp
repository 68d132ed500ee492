// SPDX-License-Identifier: Apache-2.0
#include "pmp/field.hpp"

#include <cstring>
#include <stdexcept>

namespace pmp {

namespace {

// BLS12-381 scalar field modulus, little-endian limbs.
constexpr std::array<std::uint64_t, 4> kModulus = {
    0xffffffff00000001ULL, 0x53bda402fffe5bfeULL, 0x3339d80809a1d805ULL,
    0x73eda753299d7d48ULL};

constexpr std::uint64_t kGenerator = 7;

}  // namespace

Scalar::Scalar(std::uint64_t v) {
  const std::uint64_t limbs[4] = {v, 0, 0, 0};
  blst_fr_from_uint64(&value_, limbs);
}

std::optional<Scalar> Scalar::from_canonical(std::span<const std::uint8_t, 32> bytes) {
  blst_scalar s;
  blst_scalar_from_lendian(&s, bytes.data());
  if (!blst_scalar_fr_check(&s)) return std::nullopt;
  Scalar out;
  blst_fr_from_scalar(&out.value_, &s);
  return out;
}

Scalar Scalar::from_wide(std::span<const std::uint8_t> le_bytes) {
  blst_scalar s;
  blst_scalar_from_le_bytes(&s, le_bytes.data(), le_bytes.size());
  Scalar out;
  blst_fr_from_scalar(&out.value_, &s);
  return out;
}

Scalar Scalar::from_limbs(const std::array<std::uint64_t, 4>& limbs) {
  std::array<std::uint8_t, 32> le{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t b = 0; b < 8; ++b)
      le[i * 8 + b] = static_cast<std::uint8_t>(limbs[i] >> (8 * b));
  return from_wide(le);
}

Scalar Scalar::random(std::mt19937_64& rng) {
  // 64 bytes reduced mod r: bias is below 2^-250.
  std::array<std::uint8_t, 64> wide;
  for (std::size_t i = 0; i < wide.size(); i += 8) {
    const std::uint64_t w = rng();
    std::memcpy(wide.data() + i, &w, 8);
  }
  return from_wide(wide);
}

Bytes32 Scalar::to_bytes() const {
  blst_scalar s;
  blst_scalar_from_fr(&s, &value_);
  Bytes32 out;
  blst_lendian_from_scalar(out.data(), &s);
  return out;
}

std::array<std::uint64_t, 4> Scalar::to_limbs() const {
  blst_scalar s;
  blst_scalar_from_fr(&s, &value_);
  std::array<std::uint64_t, 4> out;
  blst_uint64_from_scalar(out.data(), &s);
  return out;
}

std::string Scalar::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const auto le = to_bytes();
  std::string out;
  out.reserve(64);
  for (auto it = le.rbegin(); it != le.rend(); ++it) {
    out.push_back(kDigits[*it >> 4]);
    out.push_back(kDigits[*it & 0xf]);
  }
  return out;
}

bool Scalar::is_zero() const {
  static const blst_fr kZero{};
  return std::memcmp(&value_, &kZero, sizeof(value_)) == 0;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  Scalar out;
  blst_fr_inverse(&out.value_, &value_);
  return out;
}

Scalar Scalar::pow(std::uint64_t e) const { return pow({e, 0, 0, 0}); }

Scalar Scalar::pow(const std::array<std::uint64_t, 4>& e) const {
  Scalar acc = one();
  for (int limb = 3; limb >= 0; --limb) {
    for (int bit = 63; bit >= 0; --bit) {
      acc *= acc;
      if ((e[limb] >> bit) & 1) acc *= *this;
    }
  }
  return acc;
}

Scalar Scalar::operator-() const {
  Scalar out;
  blst_fr_cneg(&out.value_, &value_, true);
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  blst_fr_add(&value_, &value_, &o.value_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  blst_fr_sub(&value_, &value_, &o.value_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  blst_fr_mul(&value_, &value_, &o.value_);
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return std::memcmp(&a.value_, &b.value_, sizeof(blst_fr)) == 0;
}

Scalar root_of_unity(std::uint64_t n) {
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("root_of_unity: n must be a power of two");
  unsigned log_n = 0;
  while ((std::uint64_t{1} << log_n) < n) ++log_n;
  if (log_n > kTwoAdicity) throw std::invalid_argument("root_of_unity: n exceeds 2-adicity");

  // exponent = (r - 1) / n, i.e. (r - 1) >> log_n
  std::array<std::uint64_t, 4> e = kModulus;
  e[0] -= 1;
  for (unsigned s = 0; s < log_n; ++s) {
    for (std::size_t i = 0; i < 4; ++i) {
      e[i] >>= 1;
      if (i + 1 < 4) e[i] |= (e[i + 1] & 1) << 63;
    }
  }
  return Scalar(kGenerator).pow(e);
}

}  // namespace pmp
