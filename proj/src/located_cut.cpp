#include "riesz/located_cut.hpp"

#include "riesz/errors.hpp"

namespace riesz {

LocatedCut::LocatedCut(Approximator approximator) : shared_(std::make_shared<Shared>()) {
  shared_->approximator = std::move(approximator);
}

LocatedCut LocatedCut::exact(Rational value) {
  LocatedCut cut([v = value](const Rational&) { return v; });
  cut.shared_->exact = std::move(value);
  return cut;
}

Rational LocatedCut::approx(const Rational& eps) const {
  if (sgn(eps) <= 0) throw PreconditionError("LocatedCut::approx: eps must be positive");
  if (shared_->exact) return *shared_->exact;
  {
    std::lock_guard lock(shared_->mutex);
    if (shared_->upper && shared_->lower && *shared_->upper - *shared_->lower <= eps)
      return *shared_->upper;
  }
  const Rational s = shared_->approximator(eps);
  std::lock_guard lock(shared_->mutex);
  if (!shared_->upper || s < *shared_->upper) shared_->upper = s;
  const Rational low = s - eps;
  if (!shared_->lower || *shared_->lower < low) shared_->lower = low;
  return *shared_->upper;
}

}  // namespace riesz
