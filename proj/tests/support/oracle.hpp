// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations for tests. Nothing here calls the
// polynomial division, interpolation or commitment code under test: values
// are computed pointwise in the scalar field from a retained SRS secret.
#pragma once

#include <random>
#include <span>
#include <vector>

#include "pmp/curve.hpp"
#include "pmp/field.hpp"
#include "pmp/kzg.hpp"
#include "pmp/poly.hpp"

namespace pmp::testing {

/// sum c_i * z^i with each power computed by exponentiation.
inline Scalar power_sum(std::span<const Scalar> coeffs, const Scalar& z) {
  Scalar acc;
  for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * z.pow(i);
  return acc;
}

inline Scalar power_sum(const Polynomial& p, const Scalar& z) { return power_sum(p.coeffs(), z); }

/// prod (x - z_j)
inline Scalar vanishing_at(std::span<const Scalar> points, const Scalar& x) {
  Scalar acc = Scalar::one();
  for (const auto& z : points) acc *= x - z;
  return acc;
}

/// Lagrange form evaluated directly at x; never builds a polynomial.
inline Scalar lagrange_at(std::span<const Scalar> points, std::span<const Scalar> values, const Scalar& x) {
  Scalar acc;
  for (std::size_t j = 0; j < points.size(); ++j) {
    Scalar num = Scalar::one();
    Scalar den = Scalar::one();
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (k == j) continue;
      num *= x - points[k];
      den *= points[j] - points[k];
    }
    acc += values[j] * num * den.inverse();
  }
  return acc;
}

/// Test harness trusted setup that keeps the secret.
struct KnownSecret {
  Scalar tau;
  SRS srs;

  static KnownSecret make(std::size_t degree, std::mt19937_64& rng) {
    Scalar t = Scalar::random(rng);
    return {t, SRS::generate(degree, t)};
  }

  G1 g1_of(const Scalar& v) const { return G1::generator() * v; }
  G2 g2_of(const Scalar& v) const { return G2::generator() * v; }
  G1 commitment(const Polynomial& p) const { return g1_of(power_sum(p, tau)); }

  /// [h(tau)]_1 for the generic aggregated opening, each term evaluated at tau:
  ///   sum_i gamma^(i-1) (f_i(tau) - r_i(tau)) / Z_{U_i}(tau)
  G1 generic_witness(std::span<const Polynomial> polys, std::span<const std::vector<Scalar>> sets,
                     const Scalar& gamma) const {
    Scalar h;
    Scalar w = Scalar::one();
    for (std::size_t i = 0; i < polys.size(); ++i) {
      std::vector<Scalar> vals;
      for (const auto& z : sets[i]) vals.push_back(power_sum(polys[i], z));
      const Scalar num = power_sum(polys[i], tau) - lagrange_at(sets[i], vals, tau);
      h += w * num * vanishing_at(sets[i], tau).inverse();
      w *= gamma;
    }
    return g1_of(h);
  }

  /// Scalar-field form of the aggregated pairing check:
  ///   sum gamma^(i-1) (f_i(tau) - r_i(tau)) == h(tau) * Z_T(tau)
  /// with r_i from the transported values and h given by its evaluation.
  bool shared_check(std::span<const Polynomial> polys, std::span<const Scalar> points,
                    std::span<const std::vector<Scalar>> values, const Scalar& h_at_tau,
                    const Scalar& gamma) const {
    Scalar lhs;
    Scalar w = Scalar::one();
    for (std::size_t i = 0; i < polys.size(); ++i) {
      lhs += w * (power_sum(polys[i], tau) - lagrange_at(points, values[i], tau));
      w *= gamma;
    }
    return lhs == h_at_tau * vanishing_at(points, tau);
  }
};

inline std::vector<Scalar> random_distinct_points(std::size_t n, std::mt19937_64& rng) {
  std::vector<Scalar> pts;
  while (pts.size() < n) {
    Scalar s = Scalar::random(rng);
    bool dup = false;
    for (const auto& p : pts) dup |= (p == s);
    if (!dup) pts.push_back(s);
  }
  return pts;
}

}  // namespace pmp::testing
