#pragma once

#include <array>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "riesz/interval.hpp"
#include "riesz/space.hpp"

namespace riesz {

/// Class D(a) in the lattice L(R), stored by its positive representative a+.
struct LatticeElement {
  Element rep;
};

LatticeElement d_of(const Element& a);

/// Join of a non-empty family, reduced pairwise to keep intermediate joins small.
Element join_tree(std::vector<Element> xs);

enum class LatticeMode { join, meet };
LatticeElement lat_combine(const LatticeElement& x, const LatticeElement& y, LatticeMode mode);

struct Precedence {
  Tri holds = Tri::unknown;
  /// Smallest n found with a.rep <= n * b.rep.
  std::optional<Integer> witness;
};

/// a "precedes" b: some n has a.rep <= n * b.rep. Searched over n = 1, 2, 4, ...
/// up to an instance ceiling; spaces without support information give up at `cap`.
Precedence precedes(const LatticeElement& a, const LatticeElement& b, const Integer& cap = Integer(1) << 20);

/// Both directions of precedes hold; unknown if either is unknown.
Tri lattice_equal(const LatticeElement& a, const LatticeElement& b);

/// target.rep <= multiplier * (join of parts).rep.
struct CoverCertificate {
  LatticeElement target;
  std::vector<LatticeElement> parts;
  Integer multiplier;

  Tri verify() const;
  nlohmann::json to_json() const;
  static CoverCertificate from_json(const nlohmann::json& j, const SpacePtr& space);
};

struct RangeCover {
  Rational p;
  Rational q;
  CoverCertificate cert;
};

/// p = -(unit_bound(-a) + 1), q = unit_bound(a) + 1, with a certificate that D(1) precedes D(a in (p,q)).
RangeCover cover_range(const Element& a);
/// The bounds of cover_range without the certificate.
std::pair<Rational, Rational> range_bounds(const Element& a);

/// Cells (p + k w/2, p + k w/2 + w) truncated at q; a single (p,q) when w >= q - p.
std::vector<RatInterval> grid_cells(const Rational& p, const Rational& q, const Rational& width);

/// Cell i of grid_cells(p, q, width) and the number of cells, without building the list.
struct Grid {
  Rational p;
  Rational q;
  Rational width;
  std::size_t count = 1;

  static Grid make(Rational p, Rational q, Rational width);
  RatInterval cell(std::size_t i) const;
};

struct IntervalCover {
  std::vector<RatInterval> intervals;
  CoverCertificate cert;
};

/// Certificate that D(a in (p,q)) precedes the join of D(a in I_k) over the grid.
IntervalCover cover_interval(const Element& a, const Rational& p, const Rational& q, const Rational& width);

/// r = 1/(2N) for the least power of two N with 1 <= N * (join of b_i+).
/// Throws CertificateMissing when no N up to `cap` is certified.
Rational shrink_cover(const std::vector<Element>& bs, const Integer& cap = Integer(1) << 40);

/// The b_i for which pos_or_below(b_i, r) certifies Pos, in input order.
std::vector<Element> prune_cover(const std::vector<Element>& bs, const Rational& r);

}  // namespace riesz

namespace riesz {

/// The defining relations of L(R) at (a, b), each as yes/no/unknown:
/// D(-|a|) = 0, D(a) <= D(1), D(a) meet D(-a) = 0, D(a+b) <= D(a) join D(b),
/// D(a join b) = D(a) join D(b).
std::array<Tri, 5> lattice_relations(const Element& a, const Element& b);

}  // namespace riesz
