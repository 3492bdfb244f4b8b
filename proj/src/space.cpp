#include "riesz/space.hpp"

#include "riesz/errors.hpp"

namespace riesz {

Payload Space::meet(const Payload& a, const Payload& b) const {
  const Rational minus_one(-1);
  return scale(minus_one, join(scale(minus_one, a), scale(minus_one, b)));
}

Payload Space::absolute(const Payload& a) const {
  const Payload z = zero();
  return add(join(a, z), join(scale(Rational(-1), a), z));
}

RatioBound Space::ratio_bound(const Payload&, const Payload&) const { return {}; }

std::optional<Payload> Space::dense_element(std::uint64_t) const { return std::nullopt; }

Element::Element(SpacePtr space, Payload value) : space_(std::move(space)), value_(std::move(value)) {
  if (!space_) throw PreconditionError("element without a space");
}

void require_same_space(const Element& a, const Element& b) {
  if (!a.same_space(b)) throw CrossSpaceError();
}

Element operator+(const Element& a, const Element& b) {
  require_same_space(a, b);
  return Element(a.space_, a.space_->add(a.value_, b.value_));
}

Element operator-(const Element& a, const Element& b) {
  require_same_space(a, b);
  return Element(a.space_, a.space_->add(a.value_, a.space_->scale(Rational(-1), b.value_)));
}

Element operator-(const Element& a) { return Element(a.space_, a.space_->scale(Rational(-1), a.value_)); }

Element operator*(const Rational& q, const Element& a) { return Element(a.space_, a.space_->scale(q, a.value_)); }

Element operator+(const Element& a, const Rational& q) {
  return Element(a.space_, a.space_->add(a.value_, a.space_->scale(q, a.space_->unit())));
}

Element operator-(const Element& a, const Rational& q) { return a + Rational(-q); }

Element operator-(const Rational& q, const Element& a) { return (-a) + q; }

Element Element::join(const Element& b) const {
  require_same_space(*this, b);
  return Element(space_, space_->join(value_, b.value_));
}

Element Element::meet(const Element& b) const {
  require_same_space(*this, b);
  return Element(space_, space_->meet(value_, b.value_));
}

Tri Element::leq(const Element& b) const {
  require_same_space(*this, b);
  return space_->leq(value_, b.value_);
}

LocatedCut Element::sup_cut() const { return space_->sup_cut(value_); }

Integer Element::unit_bound() const { return space_->unit_bound(value_); }

bool operator==(const Element& a, const Element& b) {
  return a.same_space(b) && a.space_->equal(a.value_, b.value_);
}

Element meet(const Element& a, const Element& b) { return a.meet(b); }

Element positive_part(const Element& a) { return a.join(a.zero()); }

Element absolute(const Element& a) { return Element(a.space_ptr(), a.space().absolute(a.payload())); }

Decomposition decompose(const Element& a) {
  Element pos = positive_part(a);
  Element neg = positive_part(-a);
  Element abs = pos + neg;
  return Decomposition{std::move(pos), std::move(neg), std::move(abs)};
}

Element in_interval(const Element& a, const Rational& p, const Rational& q) {
  if (!(p < q))
    throw PreconditionError("in_interval: need p < q, got (" + to_string(p) + ", " + to_string(q) + ")");
  return (a - p).meet(q - a);
}

LocatedCut norm_cut(const Element& a) { return absolute(a).sup_cut(); }

Integer unit_bound(const Element& a) { return a.unit_bound(); }

}  // namespace riesz
