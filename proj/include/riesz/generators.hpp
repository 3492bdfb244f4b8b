#pragma once

#include <random>
#include <vector>

#include "riesz/matrix.hpp"
#include "riesz/space.hpp"

namespace riesz {

using Rng = std::mt19937_64;

/// numerator in [-num_max, num_max], denominator in [1, den_max].
Rational random_rational(Rng& rng, int num_max, int den_max);
std::vector<Rational> random_coords(Rng& rng, std::size_t n, int num_max = 8, int den_max = 4);
/// Between 2 and max_points breakpoints spanning [0,1].
std::vector<Breakpoint> random_breakpoints(Rng& rng, std::size_t max_points = 12, int num_max = 8, int den_max = 4);

/// Rational orthogonal matrix (I + K)^-1 (I - K) for a random skew-symmetric K.
RationalMatrix cayley_orthogonal(Rng& rng, std::size_t dim);
/// Q diag(d) Q^T.
RationalMatrix conjugate_diagonal(const RationalMatrix& q, const std::vector<Rational>& diag);

enum class SpectrumKind {
  any,
  /// eigenvalues >= 0
  psd,
  /// eigenvalues 0 or >= 1/8
  psd_separated,
};

/// Simultaneously diagonalizable family with known spectra: members[j] = Q diag(spectra[j]) Q^T.
struct CommutingFamily {
  RationalMatrix basis;
  std::vector<std::vector<Rational>> spectra;
  std::vector<RationalMatrix> members;
};

CommutingFamily random_commuting_family(Rng& rng, std::size_t dim, std::size_t count, SpectrumKind kind);

}  // namespace riesz
