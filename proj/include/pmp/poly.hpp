// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pmp/field.hpp"

namespace pmp {

/// Dense univariate polynomial over Fr, lowest-degree coefficient first.
///
/// Always normalized: the leading coefficient is nonzero, and the zero
/// polynomial is the empty coefficient list with degree() == -1 (stands in
/// for minus infinity in comparisons).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs);

  static Polynomial constant(const Scalar& c);
  /// X - z
  static Polynomial linear_root(const Scalar& z);
  static Polynomial random(std::size_t degree, std::mt19937_64& rng);

  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const Scalar> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  Scalar operator()(const Scalar& z) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  void normalize();

  std::vector<Scalar> coeffs_;
};

/// Ordered set of pairwise-distinct evaluation points.
class EvaluationDomain {
 public:
  /// Throws std::invalid_argument on duplicate points.
  explicit EvaluationDomain(std::vector<Scalar> points);

  /// {1, w, w^2, ...} for a primitive n-th root of unity w (n a power of two).
  static EvaluationDomain roots_of_unity(std::size_t n);
  /// {1, 2, ..., n}; used when n is not a power of two.
  static EvaluationDomain consecutive(std::size_t n);
  /// Picks roots_of_unity when n is a power of two, else consecutive.
  static EvaluationDomain for_size(std::size_t n);

  std::span<const Scalar> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Scalar& operator[](std::size_t i) const { return points_[i]; }
  friend bool operator==(const EvaluationDomain&, const EvaluationDomain&) = default;

 private:
  EvaluationDomain() = default;
  std::vector<Scalar> points_;
};

/// Contiguous block [offset, offset + g) of a parent domain.
class MicroDomain {
 public:
  MicroDomain(const EvaluationDomain& parent, std::size_t offset, std::size_t g);

  const EvaluationDomain& domain() const { return domain_; }
  std::span<const Scalar> points() const { return domain_.points(); }
  std::size_t size() const { return domain_.size(); }
  std::size_t offset() const { return offset_; }
  friend bool operator==(const MicroDomain&, const MicroDomain&) = default;

 private:
  EvaluationDomain domain_;
  std::size_t offset_;
};

/// Horner evaluation; same as p(z).
Scalar evaluate(const Polynomial& p, const Scalar& z);

/// prod_{z in S} (X - z). Throws std::invalid_argument when S is empty.
Polynomial vanishing_poly(std::span<const Scalar> points);
inline Polynomial vanishing_poly(const EvaluationDomain& s) { return vanishing_poly(s.points()); }

/// Unique polynomial of degree < |S| through (S[j], values[j]).
Polynomial interpolate(std::span<const Scalar> points, std::span<const Scalar> values);
inline Polynomial interpolate(const EvaluationDomain& s, std::span<const Scalar> values) {
  return interpolate(s.points(), values);
}

/// Schoolbook long division: num = quotient * den + remainder,
/// deg remainder < deg den. Throws std::domain_error for den == 0.
std::pair<Polynomial, Polynomial> div_rem(const Polynomial& num, const Polynomial& den);

}  // namespace pmp
