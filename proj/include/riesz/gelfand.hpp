#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

#include "riesz/falgebra.hpp"

namespace riesz {

struct GelfandOptions {
  std::size_t max_points = 8;
  std::size_t random_polynomials = 3;
  std::uint64_t seed = 0;
  /// Slack factor in |s(ab) - s(a)s(b)| <= eps (1 + |a| + |b|) C.
  Rational constant = 2;
  /// Tolerance of the lattice operations in the adapter space.
  Rational lattice_tol = pow2(-24);
};

struct GelfandReport {
  Rational eps;
  Rational max_mult_violation;
  Rational max_square_violation;
  /// Largest violation divided by its allowed bound.
  Rational worst_ratio;
  std::size_t points = 0;
  std::size_t pairs_tested = 0;
  std::size_t bound_failures = 0;
  std::size_t key_checks = 0;
  std::size_t key_failures = 0;
  std::size_t key_unknown = 0;

  bool passed() const { return bound_failures == 0 && key_failures == 0; }
  nlohmann::json to_json() const;
};

/// Multiplicativity of the Gelfand transform at the points of an eps-net over the
/// generators, plus (a - r)+ meet b+ <= (1/r)(ab)+ checked in the algebra.
GelfandReport gelfand_check(const CommutingAlgebra& algebra, const Rational& eps, const GelfandOptions& options = {});

}  // namespace riesz
