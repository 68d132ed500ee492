// SPDX-License-Identifier: Apache-2.0
#include "pmp/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmp {

Polynomial::Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial Polynomial::constant(const Scalar& c) { return Polynomial({c}); }

Polynomial Polynomial::linear_root(const Scalar& z) { return Polynomial({-z, Scalar::one()}); }

Polynomial Polynomial::random(std::size_t degree, std::mt19937_64& rng) {
  std::vector<Scalar> c(degree + 1);
  for (auto& x : c) x = Scalar::random(rng);
  while (c.back().is_zero()) c.back() = Scalar::random(rng);
  return Polynomial(std::move(c));
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar Polynomial::operator()(const Scalar& z) const {
  Scalar acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

EvaluationDomain::EvaluationDomain(std::vector<Scalar> points) : points_(std::move(points)) {
  std::vector<Bytes32> keys;
  keys.reserve(points_.size());
  for (const auto& p : points_) keys.push_back(p.to_bytes());
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw std::invalid_argument("EvaluationDomain: points must be pairwise distinct");
}

EvaluationDomain EvaluationDomain::roots_of_unity(std::size_t n) {
  const Scalar w = root_of_unity(n);
  EvaluationDomain d;
  d.points_.reserve(n);
  Scalar x = Scalar::one();
  for (std::size_t i = 0; i < n; ++i) {
    d.points_.push_back(x);
    x *= w;
  }
  return d;
}

EvaluationDomain EvaluationDomain::consecutive(std::size_t n) {
  EvaluationDomain d;
  d.points_.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) d.points_.emplace_back(i);
  return d;
}

EvaluationDomain EvaluationDomain::for_size(std::size_t n) {
  if (n != 0 && (n & (n - 1)) == 0) return roots_of_unity(n);
  return consecutive(n);
}

MicroDomain::MicroDomain(const EvaluationDomain& parent, std::size_t offset, std::size_t g)
    : domain_([&] {
        if (g == 0 || offset + g > parent.size())
          throw std::invalid_argument("MicroDomain: block out of range of parent domain");
        auto pts = parent.points().subspan(offset, g);
        return EvaluationDomain(std::vector<Scalar>(pts.begin(), pts.end()));
      }()),
      offset_(offset) {}

Scalar evaluate(const Polynomial& p, const Scalar& z) { return p(z); }

Polynomial vanishing_poly(std::span<const Scalar> points) {
  if (points.empty()) throw std::invalid_argument("vanishing_poly: empty domain");
  // Multiply in place by (X - z) one root at a time.
  std::vector<Scalar> c{Scalar::one()};
  for (const auto& z : points) {
    c.insert(c.begin(), Scalar::zero());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] -= z * c[i + 1];
  }
  return Polynomial(std::move(c));
}

Polynomial interpolate(std::span<const Scalar> points, std::span<const Scalar> values) {
  if (points.size() != values.size())
    throw std::invalid_argument("interpolate: point/value length mismatch");
  const std::size_t n = points.size();
  if (n == 0) return {};

  const Polynomial z = vanishing_poly(points);
  std::vector<Scalar> acc(n);
  std::vector<Scalar> basis(n);
  for (std::size_t j = 0; j < n; ++j) {
    // basis = Z(X) / (X - z_j) by synthetic division; exact since z_j is a root.
    const auto zc = z.coeffs();
    basis[n - 1] = zc[n];
    for (std::size_t i = n - 1; i-- > 0;) basis[i] = zc[i + 1] + points[j] * basis[i + 1];

    Scalar denom = Scalar::one();
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) denom *= points[j] - points[k];
    if (denom.is_zero()) throw std::invalid_argument("interpolate: duplicate points");

    const Scalar w = values[j] * denom.inverse();
    for (std::size_t i = 0; i < n; ++i) acc[i] += w * basis[i];
  }
  return Polynomial(std::move(acc));
}

std::pair<Polynomial, Polynomial> div_rem(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("div_rem: division by zero polynomial");
  if (num.degree() < den.degree()) return {Polynomial{}, num};

  const auto d = den.coeffs();
  const std::size_t dn = d.size();
  const Scalar lead_inv = d.back().inverse();
  std::vector<Scalar> rem(num.coeffs().begin(), num.coeffs().end());
  std::vector<Scalar> quot(rem.size() - dn + 1);

  for (std::size_t i = quot.size(); i-- > 0;) {
    const Scalar q = rem[i + dn - 1] * lead_inv;
    quot[i] = q;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j < dn; ++j) rem[i + j] -= q * d[j];
  }
  rem.resize(dn - 1);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

}  // namespace pmp
