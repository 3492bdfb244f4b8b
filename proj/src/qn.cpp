#include <algorithm>

#include "riesz/errors.hpp"
#include "riesz/instances.hpp"
#include "riesz/json_io.hpp"

namespace riesz {

QnSpace::QnSpace(std::size_t n) : n_(n) {
  if (n == 0) throw PreconditionError("qn space needs n >= 1");
}

const QnVec& QnSpace::get(const Payload& p) const {
  const auto* v = std::get_if<QnVec>(&p);
  if (v == nullptr || v->coords.size() != n_) throw CrossSpaceError();
  return *v;
}

Element QnSpace::make(std::vector<Rational> coords) const {
  if (coords.size() != n_) throw PreconditionError("qn element has the wrong length");
  for (auto& c : coords) c.canonicalize();
  return Element(shared_from_this(), QnVec{std::move(coords)});
}

Payload QnSpace::zero() const { return QnVec{std::vector<Rational>(n_, Rational(0))}; }
Payload QnSpace::unit() const { return QnVec{std::vector<Rational>(n_, Rational(1))}; }

namespace {

template <class F>
QnVec pointwise(const QnVec& a, const QnVec& b, F f) {
  QnVec out;
  out.coords.reserve(a.coords.size());
  for (std::size_t i = 0; i < a.coords.size(); ++i) out.coords.push_back(f(a.coords[i], b.coords[i]));
  return out;
}

}  // namespace

Payload QnSpace::add(const Payload& a, const Payload& b) const {
  return pointwise(get(a), get(b), [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

Payload QnSpace::scale(const Rational& q, const Payload& a) const {
  QnVec out = get(a);
  for (auto& c : out.coords) c *= q;
  return out;
}

Payload QnSpace::join(const Payload& a, const Payload& b) const { return pointwise(get(a), get(b), rmax); }
Payload QnSpace::meet(const Payload& a, const Payload& b) const { return pointwise(get(a), get(b), rmin); }

Tri QnSpace::leq(const Payload& a, const Payload& b) const {
  const QnVec& x = get(a);
  const QnVec& y = get(b);
  for (std::size_t i = 0; i < n_; ++i)
    if (x.coords[i] > y.coords[i]) return Tri::no;
  return Tri::yes;
}

LocatedCut QnSpace::sup_cut(const Payload& a) const {
  const QnVec& x = get(a);
  return LocatedCut::exact(*std::max_element(x.coords.begin(), x.coords.end()));
}

Integer QnSpace::unit_bound(const Payload& a) const {
  const QnVec& x = get(a);
  Integer top = ceil_of(*std::max_element(x.coords.begin(), x.coords.end()));
  return top < 0 ? Integer(0) : top;
}

RatioBound QnSpace::ratio_bound(const Payload& a, const Payload& b) const {
  const QnVec& x = get(a);
  const QnVec& y = get(b);
  RatioBound out;
  Rational best(0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(x.coords[i]) <= 0) continue;
    if (sgn(y.coords[i]) <= 0) {
      out.support_included = false;
      return out;
    }
    best = rmax(best, Rational(x.coords[i] / y.coords[i]));
  }
  out.max_ratio = best;
  return out;
}

std::optional<Payload> QnSpace::dense_element(std::uint64_t index) const {
  QnVec out;
  std::uint64_t rest = index;
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    auto [head, tail] = cantor_unpair(rest);
    out.coords.push_back(nth_rational(head));
    rest = tail;
  }
  out.coords.push_back(nth_rational(rest));
  return out;
}

bool QnSpace::equal(const Payload& a, const Payload& b) const { return get(a) == get(b); }

std::string QnSpace::key(const Payload& a) const {
  std::string out = "qn:";
  for (const auto& c : get(a).coords) out += to_string(c) + ",";
  return out;
}

nlohmann::json QnSpace::to_json(const Payload& a) const {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& c : get(a).coords) coords.push_back(rational_json(c));
  return {{"space", "qn"}, {"coords", coords}};
}

Payload QnSpace::from_json(const nlohmann::json& j) const {
  if (!j.contains("coords") || !j.at("coords").is_array()) throw ParseError("qn element needs \"coords\"");
  QnVec out;
  for (const auto& c : j.at("coords")) out.coords.push_back(rational_from_json(c));
  if (out.coords.size() != n_) throw CrossSpaceError();
  return out;
}

std::shared_ptr<const QnSpace> make_qn_space(std::size_t n) { return std::make_shared<const QnSpace>(n); }

}  // namespace riesz
