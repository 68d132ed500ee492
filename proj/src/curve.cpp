// SPDX-License-Identifier: Apache-2.0
#include "pmp/curve.hpp"

#include <cstring>

namespace pmp {

namespace {

blst_scalar to_blst_scalar(const Scalar& s) {
  blst_scalar out;
  blst_scalar_from_fr(&out, &s.raw());
  return out;
}

}  // namespace

G1::G1() { std::memset(&p_, 0, sizeof(p_)); }

G1 G1::generator() {
  G1 g;
  g.p_ = *blst_p1_generator();
  return g;
}

G1 G1::decompress(std::span<const std::uint8_t, kCompressedSize> bytes) {
  blst_p1_affine aff;
  if (blst_p1_uncompress(&aff, bytes.data()) != BLST_SUCCESS)
    throw EncodingError("G1: malformed compressed point");
  if (!blst_p1_affine_in_g1(&aff)) throw EncodingError("G1: point not in prime-order subgroup");
  G1 out;
  blst_p1_from_affine(&out.p_, &aff);
  return out;
}

G1::Compressed G1::compress() const {
  Compressed out;
  blst_p1_compress(out.data(), &p_);
  return out;
}

bool G1::is_identity() const { return blst_p1_is_inf(&p_); }

G1 G1::operator-() const {
  G1 out = *this;
  blst_p1_cneg(&out.p_, true);
  return out;
}

G1& G1::operator+=(const G1& o) {
  blst_p1_add_or_double(&p_, &p_, &o.p_);
  return *this;
}

G1& G1::operator-=(const G1& o) { return *this += -o; }

G1 operator*(const G1& p, const Scalar& s) {
  const blst_scalar k = to_blst_scalar(s);
  G1 out;
  blst_p1_mult(&out.p_, &p.p_, k.b, 255);
  return out;
}

bool operator==(const G1& a, const G1& b) { return blst_p1_is_equal(&a.p_, &b.p_); }

blst_p1_affine G1::to_affine() const {
  blst_p1_affine aff;
  blst_p1_to_affine(&aff, &p_);
  return aff;
}

G2::G2() { std::memset(&p_, 0, sizeof(p_)); }

G2 G2::generator() {
  G2 g;
  g.p_ = *blst_p2_generator();
  return g;
}

G2 G2::decompress(std::span<const std::uint8_t, kCompressedSize> bytes) {
  blst_p2_affine aff;
  if (blst_p2_uncompress(&aff, bytes.data()) != BLST_SUCCESS)
    throw EncodingError("G2: malformed compressed point");
  if (!blst_p2_affine_in_g2(&aff)) throw EncodingError("G2: point not in prime-order subgroup");
  G2 out;
  blst_p2_from_affine(&out.p_, &aff);
  return out;
}

G2::Compressed G2::compress() const {
  Compressed out;
  blst_p2_compress(out.data(), &p_);
  return out;
}

bool G2::is_identity() const { return blst_p2_is_inf(&p_); }

G2 G2::operator-() const {
  G2 out = *this;
  blst_p2_cneg(&out.p_, true);
  return out;
}

G2& G2::operator+=(const G2& o) {
  blst_p2_add_or_double(&p_, &p_, &o.p_);
  return *this;
}

G2& G2::operator-=(const G2& o) { return *this += -o; }

G2 operator*(const G2& p, const Scalar& s) {
  const blst_scalar k = to_blst_scalar(s);
  G2 out;
  blst_p2_mult(&out.p_, &p.p_, k.b, 255);
  return out;
}

bool operator==(const G2& a, const G2& b) { return blst_p2_is_equal(&a.p_, &b.p_); }

blst_p2_affine G2::to_affine() const {
  blst_p2_affine aff;
  blst_p2_to_affine(&aff, &p_);
  return aff;
}

bool pairing_equal(const G1& a1, const G2& b1, const G1& a2, const G2& b2) {
  // e(a1, b1) * e(-a2, b2) == 1
  const G1 neg_a2 = -a2;
  blst_fp12 acc = *blst_fp12_one();
  if (!a1.is_identity() && !b1.is_identity()) {
    const auto p = a1.to_affine();
    const auto q = b1.to_affine();
    blst_fp12 ml;
    blst_miller_loop(&ml, &q, &p);
    blst_fp12_mul(&acc, &acc, &ml);
  }
  if (!neg_a2.is_identity() && !b2.is_identity()) {
    const auto p = neg_a2.to_affine();
    const auto q = b2.to_affine();
    blst_fp12 ml;
    blst_miller_loop(&ml, &q, &p);
    blst_fp12_mul(&acc, &acc, &ml);
  }
  blst_fp12 out;
  blst_final_exp(&out, &acc);
  return blst_fp12_is_one(&out);
}

}  // namespace pmp
