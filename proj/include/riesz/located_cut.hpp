#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>

#include "riesz/rational.hpp"

namespace riesz {

/// A located upper cut: the real number it denotes is only reachable through
/// approx(eps), which returns s with s - eps < value <= s.
///
/// Refinements are cached as a pair of monotone bounds; copies share the cache,
/// and concurrent approx() calls are safe.
class LocatedCut {
 public:
  using Approximator = std::function<Rational(const Rational& eps)>;

  explicit LocatedCut(Approximator approximator);
  static LocatedCut exact(Rational value);

  /// Throws PreconditionError for eps <= 0; UnknownAtTolerance propagates from
  /// error-tracked approximators.
  Rational approx(const Rational& eps) const;

  /// Set only for cuts whose value is a known rational.
  const std::optional<Rational>& exact_value() const { return shared_->exact; }

 private:
  struct Shared {
    Approximator approximator;
    std::optional<Rational> exact;
    std::mutex mutex;
    std::optional<Rational> upper;  // value <= upper
    std::optional<Rational> lower;  // lower < value
  };
  std::shared_ptr<Shared> shared_;
};

}  // namespace riesz
