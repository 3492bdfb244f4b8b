#include "riesz/interval.hpp"

#include "riesz/errors.hpp"

namespace riesz {

RatInterval RatInterval::make(Rational lo, Rational hi) {
  if (!(lo < hi))
    throw PreconditionError("interval (" + to_string(lo) + ", " + to_string(hi) + ") is empty");
  return RatInterval{std::move(lo), std::move(hi)};
}

RatInterval interval_combine(const RatInterval& a, const RatInterval& b, IntervalOp op) {
  if (op == IntervalOp::sum) return RatInterval{a.lo + b.lo, a.hi + b.hi};
  return RatInterval{rmax(a.lo, b.lo), rmax(a.hi, b.hi)};
}

Rational interval_distance(const RatInterval& a, const RatInterval& b) {
  return rmax(rmax(Rational(b.lo - a.hi), Rational(a.lo - b.hi)), Rational(0));
}

}  // namespace riesz
