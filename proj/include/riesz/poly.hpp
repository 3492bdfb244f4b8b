#pragma once

#include <span>
#include <vector>

#include "riesz/matrix.hpp"
#include "riesz/rational.hpp"

namespace riesz {

/// Arithmetic in Q[x]/(m) for a monic modulus m. Elements are coefficient
/// vectors of length degree(m), constant term first.
class QuotientRing {
 public:
  using Poly = std::vector<Rational>;

  /// `modulus` holds all coefficients including the leading 1.
  explicit QuotientRing(std::vector<Rational> modulus);

  std::size_t degree() const { return modulus_.size() - 1; }
  const std::vector<Rational>& modulus() const { return modulus_; }

  Poly constant(const Rational& c) const;
  Poly variable() const;
  Poly reduce(Poly full) const;
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly scale(const Rational& q, const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  /// z with y*z = target; y must be a unit of the ring.
  Poly divide(const Poly& target, const Poly& y) const;
  Poly round(const Poly& a, unsigned bits, Rounding mode) const;

 private:
  std::vector<Rational> modulus_;
};

/// Matrix powers X^0 .. X^(count-1).
std::vector<RationalMatrix> matrix_powers(const RationalMatrix& x, std::size_t count);

/// Evaluates p at the matrix whose powers are given.
RationalMatrix evaluate(std::span<const Rational> p, std::span<const RationalMatrix> powers);

}  // namespace riesz
