// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "pmp/field.hpp"
#include "pmp/poly.hpp"
#include "support/oracle.hpp"

using namespace pmp;
using pmp::testing::power_sum;

namespace {

Polynomial poly(std::initializer_list<std::int64_t> cs) {
  std::vector<Scalar> v;
  for (auto c : cs) v.push_back(c >= 0 ? Scalar(static_cast<std::uint64_t>(c)) : -Scalar(static_cast<std::uint64_t>(-c)));
  return Polynomial(std::move(v));
}

std::vector<Scalar> scalars(std::initializer_list<std::uint64_t> xs) {
  std::vector<Scalar> v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(Scalar, CanonicalRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Scalar s = Scalar::random(rng);
    const auto bytes = s.to_bytes();
    const auto back = Scalar::from_canonical(bytes);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, s);
  }
}

TEST(Scalar, ModulusIsNotCanonical) {
  // r in little-endian bytes
  const std::array<std::uint64_t, 4> r = {0xffffffff00000001ULL, 0x53bda402fffe5bfeULL,
                                          0x3339d80809a1d805ULL, 0x73eda753299d7d48ULL};
  Bytes32 le{};
  for (int i = 0; i < 4; ++i)
    for (int b = 0; b < 8; ++b) le[i * 8 + b] = static_cast<std::uint8_t>(r[i] >> (8 * b));
  EXPECT_FALSE(Scalar::from_canonical(le).has_value());
  le[0] -= 1;  // r - 1
  const auto top = Scalar::from_canonical(le);
  ASSERT_TRUE(top.has_value());
  EXPECT_EQ(*top + Scalar::one(), Scalar::zero());
  Bytes32 ones;
  ones.fill(0xff);
  EXPECT_FALSE(Scalar::from_canonical(ones).has_value());
}

TEST(Scalar, LimbsAndHex) {
  EXPECT_EQ(Scalar(5).to_limbs(), (std::array<std::uint64_t, 4>{5, 0, 0, 0}));
  EXPECT_EQ(Scalar::from_limbs({7, 0, 0, 0}), Scalar(7));
  EXPECT_EQ(Scalar(255).to_hex(), std::string(62, '0') + "ff");
}

TEST(Scalar, FieldAxioms) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const Scalar a = Scalar::random(rng), b = Scalar::random(rng), c = Scalar::random(rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Scalar::zero());
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Scalar::one());
  }
  EXPECT_THROW(Scalar::zero().inverse(), std::domain_error);
}

TEST(Scalar, RootsOfUnity) {
  for (std::uint64_t n : {1ULL, 2ULL, 4ULL, 8ULL, 16ULL, 1024ULL}) {
    const Scalar w = root_of_unity(n);
    EXPECT_EQ(w.pow(n), Scalar::one()) << n;
    if (n > 1) EXPECT_NE(w.pow(n / 2), Scalar::one()) << n;
  }
  EXPECT_EQ(root_of_unity(2), -Scalar::one());
  EXPECT_THROW(root_of_unity(3), std::invalid_argument);
  EXPECT_THROW(root_of_unity(0), std::invalid_argument);
  EXPECT_THROW(root_of_unity(1ULL << 33), std::invalid_argument);
}

TEST(Evaluate, ZeroPolynomial) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(evaluate(Polynomial{}, Scalar::random(rng)), Scalar::zero());
}

TEST(Evaluate, KnownRoot) { EXPECT_EQ(evaluate(poly({2, -3, 1}), Scalar(1)), Scalar::zero()); }

TEST(Evaluate, MatchesPowerSum) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto p = Polynomial::random(10, rng);
    const Scalar z = Scalar::random(rng);
    EXPECT_EQ(evaluate(p, z), power_sum(p, z));
  }
}

TEST(Polynomial, Normalization) {
  const Polynomial p(scalars({1, 2, 0, 0}));
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(Polynomial(scalars({0, 0})).degree(), -1);
  EXPECT_TRUE(Polynomial(scalars({0})).is_zero());
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Polynomial, Product) {
  EXPECT_EQ(poly({-1, 1}) * poly({-2, 1}), poly({2, -3, 1}));
  EXPECT_TRUE((poly({1, 1}) * Polynomial{}).is_zero());
}

TEST(Domain, RejectsDuplicates) {
  EXPECT_THROW(EvaluationDomain(scalars({1, 2, 1})), std::invalid_argument);
}

TEST(Domain, ForSizePicksRootsOfUnityForPowersOfTwo) {
  const auto d8 = EvaluationDomain::for_size(8);
  EXPECT_EQ(d8[0], Scalar::one());
  EXPECT_EQ(d8[1], root_of_unity(8));
  EXPECT_EQ(d8[1].pow(8), Scalar::one());
  const auto d6 = EvaluationDomain::for_size(6);
  EXPECT_EQ(d6[0], Scalar(1));
  EXPECT_EQ(d6[5], Scalar(6));
}

TEST(Vanishing, Examples) {
  EXPECT_EQ(vanishing_poly(scalars({0})), poly({0, 1}));
  EXPECT_EQ(vanishing_poly(scalars({1, 2})), poly({2, -3, 1}));
  EXPECT_THROW(vanishing_poly(std::vector<Scalar>{}), std::invalid_argument);
}

TEST(Vanishing, RandomDomainProperties) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto pts = pmp::testing::random_distinct_points(8, rng);
    const auto z = vanishing_poly(pts);
    ASSERT_EQ(z.degree(), 8);
    EXPECT_EQ(z.coeffs().back(), Scalar::one());
    for (const auto& p : pts) EXPECT_EQ(z(p), Scalar::zero());
    for (int i = 0; i < 100; ++i) {
      const Scalar x = Scalar::random(rng);
      EXPECT_EQ(z(x).is_zero(), pmp::testing::vanishing_at(pts, x).is_zero());
      EXPECT_FALSE(z(x).is_zero());
    }
  }
}

TEST(Interpolate, Examples) {
  EXPECT_EQ(interpolate(scalars({5}), scalars({7})), Polynomial::constant(Scalar(7)));
  EXPECT_EQ(interpolate(scalars({0, 1}), scalars({0, 1})), poly({0, 1}));
  EXPECT_THROW(interpolate(scalars({0, 1}), scalars({0})), std::invalid_argument);
}

TEST(Interpolate, RoundTripProperty) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 12;
    const auto pts = pmp::testing::random_distinct_points(n, rng);
    std::vector<Scalar> vals;
    for (std::size_t i = 0; i < n; ++i) vals.push_back(Scalar::random(rng));
    const auto r = interpolate(pts, vals);
    EXPECT_LT(r.degree(), static_cast<std::ptrdiff_t>(n));
    for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(power_sum(r, pts[j]), vals[j]);
    // agrees with direct Lagrange evaluation off the domain
    const Scalar x = Scalar::random(rng);
    EXPECT_EQ(r(x), pmp::testing::lagrange_at(pts, vals, x));
  }
}

TEST(DivRem, Examples) {
  const auto p = poly({2, -3, 1});
  const auto [q1, r1] = div_rem(p, p);
  EXPECT_EQ(q1, Polynomial::constant(Scalar::one()));
  EXPECT_TRUE(r1.is_zero());
  const auto [q2, r2] = div_rem(p, poly({-1, 1}));
  EXPECT_EQ(q2, poly({-2, 1}));
  EXPECT_TRUE(r2.is_zero());
  EXPECT_THROW(div_rem(p, Polynomial{}), std::domain_error);
  const auto [q3, r3] = div_rem(poly({1}), p);
  EXPECT_TRUE(q3.is_zero());
  EXPECT_EQ(r3, poly({1}));
}

TEST(DivRem, ReconstructionProperty) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto num = Polynomial::random(rng() % 20, rng);
    const auto den = Polynomial::random(rng() % 8, rng);
    if (den.is_zero()) continue;
    const auto [q, r] = div_rem(num, den);
    EXPECT_LT(r.degree(), den.degree());
    // multiply-and-add checked pointwise
    const Scalar x = Scalar::random(rng);
    EXPECT_EQ(power_sum(num, x), power_sum(q, x) * power_sum(den, x) + power_sum(r, x));
    EXPECT_EQ(num, q * den + r);
  }
}

TEST(MicroDomain, ContiguousSlice) {
  const auto d = EvaluationDomain::for_size(8);
  const MicroDomain md(d, 4, 4);
  EXPECT_EQ(md.offset(), 4u);
  ASSERT_EQ(md.size(), 4u);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(md.points()[j], d[4 + j]);
  EXPECT_THROW(MicroDomain(d, 6, 4), std::invalid_argument);
  EXPECT_THROW(MicroDomain(d, 0, 0), std::invalid_argument);
}
