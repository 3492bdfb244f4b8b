#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "riesz/interval.hpp"
#include "riesz/space.hpp"

namespace riesz {

/// Pos(witness): sup a > witness > 0. Below(bound): sup a <= sup_upper < bound.
struct PosOutcome {
  enum class Kind { pos, below };
  Kind kind = Kind::below;
  Rational witness;
  Rational bound;
  /// The queried upper approximation of sup a.
  Rational sup_upper;

  bool is_pos() const { return kind == Kind::pos; }
  static PosOutcome pos(Rational witness, Rational sup_upper);
  static PosOutcome below(Rational bound, Rational sup_upper);
};

/// Decides sup a > 0 or sup a < r from one query of sup_cut at precision r/4.
PosOutcome pos_or_below(const Element& a, const Rational& r);

/// Supremum to within eps using only pos_or_below; returns the simplest rational
/// in the final bracket.
Rational sup_approx_generic(const Element& a, const Rational& eps);

struct Constraint {
  Element element;
  RatInterval interval;
};

struct PointState {
  std::vector<Constraint> constraints;
  /// Certified strict lower bound on sup(meet_element).
  Rational margin;
  std::optional<Element> meet_element;
};

/// A point of the spectrum built lazily by dependent choice: every query appends
/// one constraint that keeps the meet of all constraints positive.
///
/// Single owner; not safe for concurrent evaluation.
class Representation {
 public:
  Representation(SpacePtr space, PointState state);

  /// Within eps of this point's value at b; repeated or coarser queries hit the cache.
  Rational eval(const Element& b, const Rational& eps);

  /// Records a constraint the point is already known to satisfy (b lies in `cell`)
  /// and caches its midpoint at precision `eps` >= cell width.
  void record(const Element& b, const RatInterval& cell, const Rational& eps);

  const PointState& state() const { return state_; }
  const SpacePtr& space() const { return space_; }
  /// Cache entries as {"key", "eps", "value"} in insertion order.
  nlohmann::json cache_json() const;

 private:
  SpacePtr space_;
  PointState state_;
  std::map<std::string, std::vector<std::pair<Rational, Rational>>> cache_;
  nlohmann::json log_ = nlohmann::json::array();
};

/// Requires a Pos outcome for a; the point satisfies a > w/2 there.
Representation point_new(const Element& a, const PosOutcome& outcome);
Rational point_eval(Representation& sigma, const Element& b, const Rational& eps);

/// sum_n 2^-n |sigma(a_n) - tau(a_n)|, n from 0, truncated where the tail is <= eps.
Rational pseudo_dist(Representation& sigma, Representation& tau, const std::vector<Element>& as, const Rational& eps);

struct NetCell {
  /// Grid cell index per covered element.
  std::vector<std::size_t> index;
  Element meet;
};

struct SpectrumNet {
  Rational eps;
  std::vector<Element> covered;
  std::vector<NetCell> cells;
  std::vector<Representation> points;
};

/// Positivity threshold for the product cells of a width-eps grid: the cells'
/// join dominates (eps/4) * 1, so r = eps/8 is what shrink_cover certifies.
Rational net_threshold(const Rational& eps);

/// Parallel construction: block pruning of product cells and one point per survivor.
SpectrumNet epsilon_net(const std::vector<Element>& as, const Rational& eps);
/// Serial reference: full product enumeration followed by prune_cover.
SpectrumNet epsilon_net_reference(const std::vector<Element>& as, const Rational& eps);

/// Evaluates every covered element at every point (parallel across points).
/// Result[i][k] = point i at element k.
std::vector<std::vector<Rational>> net_evaluations(SpectrumNet& net);

nlohmann::json net_json(SpectrumNet& net);
std::string net_csv(SpectrumNet& net);

struct StoneYosida {
  Rational norm_value;
  Rational net_max;
  std::size_t points = 0;
};

StoneYosida stone_yosida_check(const Element& a, const Rational& eps);

}  // namespace riesz
