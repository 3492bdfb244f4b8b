#pragma once

#include "riesz/rational.hpp"

namespace riesz {

/// Open rational interval (lo, hi) with lo < hi.
struct RatInterval {
  Rational lo;
  Rational hi;

  /// Throws PreconditionError unless lo < hi.
  static RatInterval make(Rational lo, Rational hi);

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool operator==(const RatInterval&) const = default;
};

enum class IntervalOp { sum, join };

RatInterval interval_combine(const RatInterval& a, const RatInterval& b, IntervalOp op);

/// Gap between the closed hulls; 0 when they touch or overlap.
Rational interval_distance(const RatInterval& a, const RatInterval& b);

}  // namespace riesz
