#pragma once

#include <vector>

#include "riesz/falgebra.hpp"
#include "riesz/generators.hpp"
#include "riesz/instances.hpp"
#include "riesz/rational.hpp"

namespace fixture {

using namespace riesz;

inline Element random_qn(Rng& rng, const std::shared_ptr<const QnSpace>& space) {
  return space->make(random_coords(rng, space->size()));
}

inline Element random_pl(Rng& rng, const std::shared_ptr<const PLSpace>& space) {
  return space->make(random_breakpoints(rng));
}

/// Herm space over a random commuting family, with the family kept for oracle use.
struct HermFixture {
  CommutingFamily family;
  std::shared_ptr<const HermSpace> space;
};

inline HermFixture random_herm_space(Rng& rng, std::size_t dim, std::size_t generators,
                                     Rational lattice_tol = pow2(-24),
                                     SpectrumKind kind = SpectrumKind::any) {
  CommutingFamily family = random_commuting_family(rng, dim, generators, kind);
  auto space = make_herm_space(CommutingAlgebra::create(family.members, dim), std::move(lattice_tol));
  return {std::move(family), std::move(space)};
}

/// Random polynomial of degree <= 1 in the generators; its spectrum is known from the family.
struct KnownElement {
  Element element;
  std::vector<Rational> spectrum;
};

inline KnownElement random_herm(Rng& rng, const HermFixture& f) {
  const std::size_t dim = f.space->algebra().dim();
  Rational c = random_rational(rng, 4, 2);
  RationalMatrix m = RationalMatrix::scalar(dim, c);
  std::vector<Rational> spectrum(dim, c);
  for (std::size_t g = 0; g < f.family.members.size(); ++g) {
    const Rational w = random_rational(rng, 2, 2);
    m += w * f.family.members[g];
    for (std::size_t i = 0; i < dim; ++i) spectrum[i] += w * f.family.spectra[g][i];
  }
  return {f.space->make(std::move(m)), std::move(spectrum)};
}

inline Rational max_of(const std::vector<Rational>& v) {
  Rational m = v.front();
  for (const auto& x : v) m = rmax(m, x);
  return m;
}

}  // namespace fixture
