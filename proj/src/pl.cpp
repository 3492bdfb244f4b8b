#include <algorithm>

#include "riesz/errors.hpp"
#include "riesz/instances.hpp"
#include "riesz/json_io.hpp"

namespace riesz {

namespace {

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
  return (b.y - a.y) * (c.x - a.x) == (c.y - a.y) * (b.x - a.x);
}

std::vector<Rational> union_x(const PLFunc& f, const PLFunc& g) {
  std::vector<Rational> xs;
  xs.reserve(f.points.size() + g.points.size());
  for (const auto& p : f.points) xs.push_back(p.x);
  for (const auto& p : g.points) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

PLFunc PLSpace::canonical(std::vector<Breakpoint> points) {
  if (points.size() < 2) throw PreconditionError("pl function needs at least two breakpoints");
  if (points.front().x != 0 || points.back().x != 1) throw PreconditionError("pl breakpoints must span [0,1]");
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (!(points[i].x < points[i + 1].x)) throw PreconditionError("pl breakpoints must be strictly increasing");
  for (auto& p : points) {
    p.x.canonicalize();
    p.y.canonicalize();
  }
  PLFunc out;
  out.points.reserve(points.size());
  for (const auto& p : points) {
    while (out.points.size() >= 2 && collinear(out.points[out.points.size() - 2], out.points.back(), p))
      out.points.pop_back();
    out.points.push_back(p);
  }
  return out;
}

Rational PLSpace::eval(const PLFunc& f, const Rational& x) {
  const auto& pts = f.points;
  if (x <= pts.front().x) return pts.front().y;
  if (x >= pts.back().x) return pts.back().y;
  auto hi = std::lower_bound(pts.begin(), pts.end(), x,
                             [](const Breakpoint& p, const Rational& v) { return p.x < v; });
  if (hi->x == x) return hi->y;
  auto lo = std::prev(hi);
  return Rational(lo->y + (hi->y - lo->y) * (x - lo->x) / (hi->x - lo->x));
}

const PLFunc& PLSpace::get(const Payload& p) const {
  const auto* v = std::get_if<PLFunc>(&p);
  if (v == nullptr) throw CrossSpaceError();
  return *v;
}

Element PLSpace::make(std::vector<Breakpoint> points) const {
  return Element(shared_from_this(), canonical(std::move(points)));
}

Payload PLSpace::zero() const { return PLFunc{{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}}}; }
Payload PLSpace::unit() const { return PLFunc{{{Rational(0), Rational(1)}, {Rational(1), Rational(1)}}}; }

Payload PLSpace::add(const Payload& a, const Payload& b) const {
  const PLFunc& f = get(a);
  const PLFunc& g = get(b);
  std::vector<Breakpoint> pts;
  for (const auto& x : union_x(f, g)) pts.push_back({x, Rational(eval(f, x) + eval(g, x))});
  return canonical(std::move(pts));
}

Payload PLSpace::scale(const Rational& q, const Payload& a) const {
  std::vector<Breakpoint> pts = get(a).points;
  for (auto& p : pts) p.y *= q;
  return canonical(std::move(pts));
}

Payload PLSpace::join(const Payload& a, const Payload& b) const {
  const PLFunc& f = get(a);
  const PLFunc& g = get(b);
  const std::vector<Rational> xs = union_x(f, g);
  std::vector<Breakpoint> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational fx = eval(f, xs[i]);
    const Rational gx = eval(g, xs[i]);
    pts.push_back({xs[i], rmax(fx, gx)});
    if (i + 1 == xs.size()) break;
    const Rational d0 = fx - gx;
    const Rational d1 = eval(f, xs[i + 1]) - eval(g, xs[i + 1]);
    if (sgn(d0) * sgn(d1) < 0) {
      const Rational x = xs[i] + (xs[i + 1] - xs[i]) * d0 / (d0 - d1);
      pts.push_back({x, eval(f, x)});
    }
  }
  return canonical(std::move(pts));
}

Payload PLSpace::meet(const Payload& a, const Payload& b) const {
  return scale(Rational(-1), join(scale(Rational(-1), a), scale(Rational(-1), b)));
}

Tri PLSpace::leq(const Payload& a, const Payload& b) const {
  const PLFunc& f = get(a);
  const PLFunc& g = get(b);
  for (const auto& x : union_x(f, g))
    if (eval(f, x) > eval(g, x)) return Tri::no;
  return Tri::yes;
}

LocatedCut PLSpace::sup_cut(const Payload& a) const {
  const auto& pts = get(a).points;
  Rational best = pts.front().y;
  for (const auto& p : pts) best = rmax(best, p.y);
  return LocatedCut::exact(best);
}

Integer PLSpace::unit_bound(const Payload& a) const {
  Integer top = ceil_of(*sup_cut(a).exact_value());
  return top < 0 ? Integer(0) : top;
}

RatioBound PLSpace::ratio_bound(const Payload& a, const Payload& b) const {
  const PLFunc& f = get(a);
  const PLFunc& g = get(b);
  RatioBound out;
  Rational best(0);
  for (const auto& x : union_x(f, g)) {
    const Rational fx = eval(f, x);
    if (sgn(fx) <= 0) continue;
    const Rational gx = eval(g, x);
    if (sgn(gx) <= 0) {
      out.support_included = false;
      return out;
    }
    best = rmax(best, Rational(fx / gx));
  }
  out.max_ratio = best;
  return out;
}

std::optional<Payload> PLSpace::dense_element(std::uint64_t index) const {
  auto [head, rest] = cantor_unpair(index);
  // Grid level grows like log2(head) so every dyadic grid is eventually reached.
  unsigned level = 0;
  while ((head + 1) >> (level + 1)) ++level;
  const std::size_t count = (std::size_t{1} << level) + 1;
  std::vector<Breakpoint> pts;
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t value_index = rest;
    if (k + 1 < count) {
      auto [v, tail] = cantor_unpair(rest);
      value_index = v;
      rest = tail;
    }
    pts.push_back({Rational(static_cast<long>(k)) * pow2(-static_cast<long>(level)), nth_rational(value_index)});
  }
  return canonical(std::move(pts));
}

bool PLSpace::equal(const Payload& a, const Payload& b) const { return get(a) == get(b); }

std::string PLSpace::key(const Payload& a) const {
  std::string out = "pl:";
  for (const auto& p : get(a).points) out += to_string(p.x) + ";" + to_string(p.y) + ",";
  return out;
}

nlohmann::json PLSpace::to_json(const Payload& a) const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : get(a).points) pts.push_back({rational_json(p.x), rational_json(p.y)});
  return {{"space", "pl"}, {"breakpoints", pts}};
}

Payload PLSpace::from_json(const nlohmann::json& j) const {
  if (!j.contains("breakpoints") || !j.at("breakpoints").is_array())
    throw ParseError("pl element needs \"breakpoints\"");
  std::vector<Breakpoint> pts;
  for (const auto& p : j.at("breakpoints")) {
    if (!p.is_array() || p.size() != 2) throw ParseError("pl breakpoint must be [x, y]");
    pts.push_back({rational_from_json(p[0]), rational_from_json(p[1])});
  }
  try {
    return canonical(std::move(pts));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

std::shared_ptr<const PLSpace> make_pl_space() { return std::make_shared<const PLSpace>(); }

}  // namespace riesz
