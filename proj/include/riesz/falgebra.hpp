#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "riesz/matrix.hpp"
#include "riesz/space.hpp"

namespace riesz {

/// A finite family of pairwise-commuting rational symmetric matrices, together
/// with the identity. Every element handled against it is a polynomial in the
/// generators.
class CommutingAlgebra {
 public:
  /// Throws NonCommutingError (naming the pair and a nonzero commutator entry)
  /// or PreconditionError on non-symmetric / mismatched input.
  static CommutingAlgebra create(std::vector<RationalMatrix> generators, std::optional<std::size_t> dim = {});

  std::size_t dim() const { return dim_; }
  const std::vector<RationalMatrix>& generators() const { return generators_; }
  RationalMatrix identity() const { return RationalMatrix::identity(dim_); }
  bool commutes_with_all(const RationalMatrix& m) const;
  /// I, then all generator products of degree 1..max_degree (non-decreasing index order).
  std::vector<RationalMatrix> monomials(unsigned max_degree) const;

 private:
  CommutingAlgebra(std::size_t dim, std::vector<RationalMatrix> generators)
      : dim_(dim), generators_(std::move(generators)) {}
  std::size_t dim_;
  std::vector<RationalMatrix> generators_;
};

inline CommutingAlgebra algebra_new(std::vector<RationalMatrix> generators, std::optional<std::size_t> dim = {}) {
  return CommutingAlgebra::create(std::move(generators), dim);
}

/// Bookkeeping of the square-root iteration B_{n+1} = (I - A' + B_n^2)/2.
struct SqrtTrace {
  std::size_t iterations = 0;
  /// Upper-rounded scalar majorant r_0 .. r_{N+1}, r_{n+1} = (1 + r_n^2)/2.
  std::vector<Rational> majorant;
  /// A' = A / 4^k.
  unsigned scale_exponent = 0;
  /// First N with 2(r_{N+1} - r_N) <= tol / (2 * 4^k); the iteration cap.
  std::size_t a_priori_cap = 0;
  Rational error_bound;
  /// B_1 .. B_N evaluated at A' (only when requested).
  std::vector<RationalMatrix> iterates;
};

struct SqrtResult {
  HermVal root;
  SqrtTrace trace;
};

struct SqrtOptions {
  std::size_t max_iter = 1U << 20;
  bool keep_iterates = false;
};

/// Square root of a positive semidefinite element with ||S^2 - A|| <= tol certified.
SqrtResult sqrt_psd(const HermVal& a, const Rational& tol, const SqrtOptions& options = {});

/// Nonnegative S commuting with X and certified ||S - sqrt(X)|| <= tol. X must be PSD.
RationalMatrix root_within(const RationalMatrix& x, const Rational& tol);

HermVal herm_add(const HermVal& a, const HermVal& b);
HermVal herm_scale(const Rational& q, const HermVal& a);
HermVal herm_multiply(const HermVal& a, const HermVal& b);

HermVal abs_value(const HermVal& a, const Rational& tol);
HermVal pos_part(const HermVal& a, const Rational& tol);
HermVal herm_join(const HermVal& a, const HermVal& b, const Rational& tol);
HermVal herm_meet(const HermVal& a, const HermVal& b, const Rational& tol);

enum class LatticeOp { abs, pos, join, meet };
HermVal abs_pos_join(const HermVal& a, const HermVal* b, LatticeOp op, const Rational& tol);

/// psd_check(AB) for exact commuting A, B.
bool product_order_check(const HermVal& a, const HermVal& b);

struct SumOfSquares {
  /// A_0 .. A_{N-1}; A = sum A_k^2 + residual exactly.
  std::vector<HermVal> squares;
  HermVal residual;
  Rational bound;
  bool reached_tol = false;
};

/// Riesz's iteration A_{n+1} = A_n - A_n^2 for 0 <= A <= I.
SumOfSquares sum_of_squares(const HermVal& a, const Rational& tol, std::size_t max_iter = 4096);

/// Smallest dyadic (grid 2^-bits) upper bound on sqrt(q), q >= 0.
Rational sqrt_upper(const Rational& q, unsigned bits = 40);

}  // namespace riesz
