#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "riesz/rational.hpp"

namespace riesz {

/// Dense square matrix of exact rationals, stored row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t dim);
  RationalMatrix(std::size_t dim, std::vector<Rational> row_major);

  static RationalMatrix identity(std::size_t dim);
  static RationalMatrix scalar(std::size_t dim, const Rational& q);
  static RationalMatrix diagonal(std::span<const Rational> diag);

  std::size_t dim() const { return dim_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const Rational> data() const { return data_; }

  bool is_symmetric() const;
  bool is_zero() const;
  RationalMatrix transpose() const;

  RationalMatrix& operator+=(const RationalMatrix& other);
  RationalMatrix& operator-=(const RationalMatrix& other);
  RationalMatrix& operator*=(const Rational& q);

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& q) { return a *= q; }
  friend RationalMatrix operator*(const Rational& q, RationalMatrix a) { return a *= q; }
  friend RationalMatrix operator-(RationalMatrix a) { return a *= Rational(-1); }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  /// this + q*I
  RationalMatrix shifted(const Rational& q) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> data_;
};

/// Exact positive-semidefiniteness test by symmetric elimination with diagonal pivoting.
/// Throws PreconditionError on non-symmetric input.
bool psd_check(const RationalMatrix& a);

/// Upper bound on the operator norm of a symmetric matrix (max absolute row sum).
Rational row_sum_bound(const RationalMatrix& a);

/// Monic minimal polynomial, coefficients from the constant term up (last entry is 1).
std::vector<Rational> minimal_polynomial(const RationalMatrix& a);

/// Solves m x = rhs exactly; m must be square and invertible.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs);

}  // namespace riesz
