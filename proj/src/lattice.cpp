#include "riesz/lattice.hpp"

#include <exception>

#include "riesz/errors.hpp"
#include "riesz/json_io.hpp"
#include "riesz/spectrum.hpp"

namespace riesz {

LatticeElement d_of(const Element& a) { return {positive_part(a)}; }

LatticeElement lat_combine(const LatticeElement& x, const LatticeElement& y, LatticeMode mode) {
  require_same_space(x.rep, y.rep);
  return {mode == LatticeMode::join ? x.rep.join(y.rep) : x.rep.meet(y.rep)};
}

namespace {

/// n = 1, 2, 4, ... and finally the ceiling itself.
std::optional<Integer> doubling_search(const Element& lhs, const Element& rhs, const Integer& ceiling, bool* saw_unknown) {
  Integer n = 1;
  while (true) {
    const Integer m = n < ceiling ? n : ceiling;
    const Tri t = lhs.leq(Rational(m) * rhs);
    if (t == Tri::yes) return m;
    if (t == Tri::unknown && saw_unknown != nullptr) *saw_unknown = true;
    if (m == ceiling) return std::nullopt;
    n *= 2;
  }
}

}  // namespace

Element join_tree(std::vector<Element> xs) {
  if (xs.empty()) throw PreconditionError("join of an empty family");
  while (xs.size() > 1) {
    std::vector<Element> next;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) next.push_back(xs[i].join(xs[i + 1]));
    if (xs.size() % 2 == 1) next.push_back(xs.back());
    xs = std::move(next);
  }
  return xs.front();
}

namespace {

Element join_all(const std::vector<LatticeElement>& parts) {
  std::vector<Element> xs;
  for (const auto& p : parts) xs.push_back(p.rep);
  return join_tree(std::move(xs));
}

}  // namespace

Precedence precedes(const LatticeElement& a, const LatticeElement& b, const Integer& cap) {
  require_same_space(a.rep, b.rep);
  const Space& space = a.rep.space();
  const RatioBound rb = space.ratio_bound(a.rep.payload(), b.rep.payload());
  if (!rb.support_included) return {Tri::no, std::nullopt};
  Integer ceiling = cap;
  if (rb.max_ratio) {
    ceiling = ceil_of(*rb.max_ratio);
    if (ceiling < 1) ceiling = 1;
  }
  bool saw_unknown = false;
  if (auto n = doubling_search(a.rep, b.rep, ceiling, &saw_unknown)) return {Tri::yes, *n};
  if (space.exact() && rb.max_ratio) return {Tri::no, std::nullopt};
  return {Tri::unknown, std::nullopt};
}

Tri lattice_equal(const LatticeElement& a, const LatticeElement& b) {
  const Tri ab = precedes(a, b).holds;
  if (ab == Tri::no) return Tri::no;
  const Tri ba = precedes(b, a).holds;
  if (ba == Tri::no) return Tri::no;
  return ab == Tri::yes && ba == Tri::yes ? Tri::yes : Tri::unknown;
}

Tri CoverCertificate::verify() const {
  if (parts.empty() || multiplier < 1) return Tri::no;
  return target.rep.leq(Rational(multiplier) * join_all(parts));
}

nlohmann::json CoverCertificate::to_json() const {
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : parts) ps.push_back(p.rep.to_json());
  return {{"target", target.rep.to_json()}, {"parts", ps}, {"multiplier", multiplier.get_str()}};
}

CoverCertificate CoverCertificate::from_json(const nlohmann::json& j, const SpacePtr& space) {
  if (!j.is_object() || !j.contains("target") || !j.contains("parts") || !j.contains("multiplier"))
    throw ParseError("certificate needs \"target\", \"parts\" and \"multiplier\"");
  CoverCertificate out{{parse_element(j.at("target"), space)}, {}, Integer(0)};
  for (const auto& p : j.at("parts")) out.parts.push_back({parse_element(p, space)});
  const Rational m = rational_from_json(j.at("multiplier"));
  if (m.get_den() != 1) throw ParseError("certificate multiplier must be an integer");
  out.multiplier = m.get_num();
  return out;
}

std::pair<Rational, Rational> range_bounds(const Element& a) {
  return {Rational(-(unit_bound(-a) + 1)), Rational(unit_bound(a) + 1)};
}

RangeCover cover_range(const Element& a) {
  auto [p, q] = range_bounds(a);
  CoverCertificate cert{d_of(a.unit()), {d_of(in_interval(a, p, q))}, Integer(0)};
  auto m = doubling_search(cert.target.rep, cert.parts.front().rep, Integer(1) << 20, nullptr);
  if (!m) throw CertificateMissing("no multiplier certifies the range cover");
  cert.multiplier = *m;
  return {p, q, std::move(cert)};
}

Grid Grid::make(Rational p, Rational q, Rational width) {
  if (!(p < q)) throw PreconditionError("grid needs p < q");
  if (sgn(width) <= 0) throw PreconditionError("grid width must be positive");
  Grid g{std::move(p), std::move(q), std::move(width), 1};
  if (g.width < g.q - g.p) {
    // last index k is the smallest with p + k w/2 + w >= q
    const Integer last = ceil_of(Rational((g.q - g.p - g.width) / (g.width / 2)));
    g.count = last.get_ui() + 1;
  }
  return g;
}

RatInterval Grid::cell(std::size_t i) const {
  if (count == 1) return RatInterval::make(p, q);
  const Rational lo = p + Rational(static_cast<long>(i)) * width / 2;
  return RatInterval::make(lo, rmin(Rational(lo + width), q));
}

std::vector<RatInterval> grid_cells(const Rational& p, const Rational& q, const Rational& width) {
  const Grid g = Grid::make(p, q, width);
  std::vector<RatInterval> cells;
  cells.reserve(g.count);
  for (std::size_t i = 0; i < g.count; ++i) cells.push_back(g.cell(i));
  return cells;
}

IntervalCover cover_interval(const Element& a, const Rational& p, const Rational& q, const Rational& width) {
  IntervalCover out{grid_cells(p, q, width), {d_of(in_interval(a, p, q)), {}, Integer(0)}};
  for (const auto& cell : out.intervals) out.cert.parts.push_back(d_of(in_interval(a, cell.lo, cell.hi)));
  if (out.intervals.size() == 1) {
    out.cert.multiplier = 1;
    return out;
  }
  const Integer ceiling = ceil_of(Rational(2 * (q - p + 2) / (width / 2)));
  auto m = doubling_search(out.cert.target.rep, join_all(out.cert.parts), ceiling, nullptr);
  if (!m) throw CertificateMissing("no multiplier up to the grid ceiling certifies the interval cover");
  out.cert.multiplier = *m;
  return out;
}

Rational shrink_cover(const std::vector<Element>& bs, const Integer& cap) {
  if (bs.empty()) throw PreconditionError("shrink_cover needs at least one element");
  std::vector<Element> parts;
  for (const auto& b : bs) parts.push_back(positive_part(b));
  const Element joined = join_tree(std::move(parts));
  const Element unit = joined.unit();
  for (Integer n = 1; n <= cap; n *= 2) {
    if (unit.leq(Rational(n) * joined) == Tri::yes) return Rational(1) / Rational(2 * n);
  }
  throw CertificateMissing("join of the positive parts is not certified to dominate a multiple of the unit");
}

std::vector<Element> prune_cover(const std::vector<Element>& bs, const Rational& r) {
  std::vector<char> keep(bs.size(), 0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < bs.size(); ++i) {
    try {
      keep[i] = pos_or_below(bs[i], r).is_pos() ? 1 : 0;
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Element> out;
  for (std::size_t i = 0; i < bs.size(); ++i)
    if (keep[i]) out.push_back(bs[i]);
  return out;
}

}  // namespace riesz

namespace riesz {

std::array<Tri, 5> lattice_relations(const Element& a, const Element& b) {
  require_same_space(a, b);
  const LatticeElement zero = d_of(a.zero());
  const LatticeElement top = d_of(a.unit());
  const LatticeElement da = d_of(a);
  const LatticeElement db = d_of(b);
  const LatticeElement joined = lat_combine(da, db, LatticeMode::join);
  return {
      lattice_equal(d_of(-absolute(a)), zero),
      precedes(da, top).holds,
      lattice_equal(lat_combine(da, d_of(-a), LatticeMode::meet), zero),
      precedes(d_of(a + b), joined).holds,
      lattice_equal(d_of(a.join(b)), joined),
  };
}

}  // namespace riesz
