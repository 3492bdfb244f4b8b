#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "riesz/located_cut.hpp"
#include "riesz/matrix.hpp"
#include "riesz/rational.hpp"

namespace riesz {

/// Outcome of an order test. Exact instances never answer `unknown`.
enum class Tri { yes, no, unknown };

struct QnVec {
  std::vector<Rational> coords;
  bool operator==(const QnVec&) const = default;
};

struct Breakpoint {
  Rational x;
  Rational y;
  bool operator==(const Breakpoint&) const = default;
};

/// Piecewise-linear function on [0,1] in canonical form.
struct PLFunc {
  std::vector<Breakpoint> points;
  bool operator==(const PLFunc&) const = default;
};

/// Symmetric matrix plus an operator-norm error radius.
struct HermVal {
  RationalMatrix matrix;
  Rational err;
  bool operator==(const HermVal&) const = default;
};

using Payload = std::variant<QnVec, PLFunc, HermVal>;

/// What each side of `a <= n b` needs for n to exist, and a ceiling for n.
struct RatioBound {
  bool support_included = true;
  std::optional<Rational> max_ratio;
};

/// Capability set of a Riesz space with strong unit.
class Space : public std::enable_shared_from_this<Space> {
 public:
  virtual ~Space() = default;

  virtual std::string_view name() const = 0;
  virtual bool exact() const = 0;

  virtual Payload zero() const = 0;
  virtual Payload unit() const = 0;
  virtual Payload add(const Payload& a, const Payload& b) const = 0;
  virtual Payload scale(const Rational& q, const Payload& a) const = 0;
  virtual Payload join(const Payload& a, const Payload& b) const = 0;
  virtual Payload meet(const Payload& a, const Payload& b) const;
  virtual Payload absolute(const Payload& a) const;

  virtual Tri leq(const Payload& a, const Payload& b) const = 0;
  virtual LocatedCut sup_cut(const Payload& a) const = 0;
  /// n >= 0 with a <= n*1; may overshoot the minimum by one.
  virtual Integer unit_bound(const Payload& a) const = 0;
  virtual RatioBound ratio_bound(const Payload& a, const Payload& b) const;
  virtual std::optional<Payload> dense_element(std::uint64_t index) const;

  virtual bool equal(const Payload& a, const Payload& b) const = 0;
  /// Canonical text identifying the payload; equal payloads give equal keys.
  virtual std::string key(const Payload& a) const = 0;
  virtual nlohmann::json to_json(const Payload& a) const = 0;
  virtual Payload from_json(const nlohmann::json& j) const = 0;
};

using SpacePtr = std::shared_ptr<const Space>;

/// A value in one concrete Riesz space. Immutable.
class Element {
 public:
  Element(SpacePtr space, Payload value);

  const Space& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const Payload& payload() const { return value_; }
  template <class T>
  const T& as() const {
    return std::get<T>(value_);
  }

  bool same_space(const Element& other) const { return space_ == other.space_; }

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator-(const Element& a);
  friend Element operator*(const Rational& q, const Element& a);
  /// a + q*1 and a - q*1
  friend Element operator+(const Element& a, const Rational& q);
  friend Element operator-(const Element& a, const Rational& q);
  friend Element operator-(const Rational& q, const Element& a);

  Element join(const Element& b) const;
  Element meet(const Element& b) const;
  Tri leq(const Element& b) const;
  LocatedCut sup_cut() const;
  Integer unit_bound() const;
  std::string key() const { return space_->key(value_); }
  nlohmann::json to_json() const { return space_->to_json(value_); }

  Element unit() const { return Element(space_, space_->unit()); }
  Element zero() const { return Element(space_, space_->zero()); }

  friend bool operator==(const Element& a, const Element& b);

 private:
  SpacePtr space_;
  Payload value_;
};

void require_same_space(const Element& a, const Element& b);

struct Decomposition {
  Element pos;
  Element neg;
  Element abs;
};

Element meet(const Element& a, const Element& b);
Decomposition decompose(const Element& a);
Element positive_part(const Element& a);
Element absolute(const Element& a);
/// (a - p) meet (q - a); throws PreconditionError unless p < q.
Element in_interval(const Element& a, const Rational& p, const Rational& q);
/// Located cut of sup |a|.
LocatedCut norm_cut(const Element& a);
Integer unit_bound(const Element& a);

}  // namespace riesz
