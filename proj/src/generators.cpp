#include "riesz/generators.hpp"

#include <algorithm>
#include <set>

namespace riesz {

Rational random_rational(Rng& rng, int num_max, int den_max) {
  std::uniform_int_distribution<int> num(-num_max, num_max);
  std::uniform_int_distribution<int> den(1, den_max);
  Rational out(num(rng), den(rng));
  out.canonicalize();
  return out;
}

std::vector<Rational> random_coords(Rng& rng, std::size_t n, int num_max, int den_max) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_rational(rng, num_max, den_max));
  return out;
}

std::vector<Breakpoint> random_breakpoints(Rng& rng, std::size_t max_points, int num_max, int den_max) {
  std::uniform_int_distribution<std::size_t> count(0, max_points - 2);
  std::uniform_int_distribution<int> den(2, 16);
  std::set<Rational> xs{Rational(0), Rational(1)};
  const std::size_t interior = count(rng);
  while (xs.size() < interior + 2) {
    const int d = den(rng);
    std::uniform_int_distribution<int> num(1, d - 1);
    Rational x(num(rng), d);
    x.canonicalize();
    xs.insert(x);
  }
  std::vector<Breakpoint> out;
  for (const auto& x : xs) out.push_back({x, random_rational(rng, num_max, den_max)});
  return out;
}

RationalMatrix cayley_orthogonal(Rng& rng, std::size_t dim) {
  std::uniform_int_distribution<int> entry(-1, 1);
  RationalMatrix k(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      k(i, j) = entry(rng);
      k(j, i) = -k(i, j);
    }
  const RationalMatrix plus = RationalMatrix::identity(dim) + k;
  const RationalMatrix minus = RationalMatrix::identity(dim) - k;
  std::vector<std::vector<Rational>> rows(dim, std::vector<Rational>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) rows[i][j] = plus(i, j);
  RationalMatrix q(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<Rational> rhs(dim);
    for (std::size_t i = 0; i < dim; ++i) rhs[i] = minus(i, c);
    const std::vector<Rational> col = solve_linear(rows, rhs);
    for (std::size_t i = 0; i < dim; ++i) q(i, c) = col[i];
  }
  return q;
}

RationalMatrix conjugate_diagonal(const RationalMatrix& q, const std::vector<Rational>& diag) {
  return q * RationalMatrix::diagonal(diag) * q.transpose();
}

CommutingFamily random_commuting_family(Rng& rng, std::size_t dim, std::size_t count, SpectrumKind kind) {
  CommutingFamily out{cayley_orthogonal(rng, dim), {}, {}};
  std::uniform_int_distribution<int> zero_pick(0, 3);
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<Rational> spectrum;
    for (std::size_t i = 0; i < dim; ++i) {
      Rational v = random_rational(rng, 8, 4);
      if (kind != SpectrumKind::any) v = rabs(v);
      if (kind == SpectrumKind::psd_separated && v < Rational(1, 8)) v = zero_pick(rng) == 0 ? Rational(0) : Rational(1, 4);
      spectrum.push_back(v);
    }
    out.members.push_back(conjugate_diagonal(out.basis, spectrum));
    out.spectra.push_back(std::move(spectrum));
  }
  return out;
}

}  // namespace riesz
