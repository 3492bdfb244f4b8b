#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "riesz/falgebra.hpp"
#include "riesz/space.hpp"

namespace riesz {

/// Q^n with pointwise order and unit (1, ..., 1): C(X) for an n-point X.
class QnSpace final : public Space {
 public:
  explicit QnSpace(std::size_t n);

  std::size_t size() const { return n_; }
  Element make(std::vector<Rational> coords) const;

  std::string_view name() const override { return "qn"; }
  bool exact() const override { return true; }
  Payload zero() const override;
  Payload unit() const override;
  Payload add(const Payload& a, const Payload& b) const override;
  Payload scale(const Rational& q, const Payload& a) const override;
  Payload join(const Payload& a, const Payload& b) const override;
  Payload meet(const Payload& a, const Payload& b) const override;
  Tri leq(const Payload& a, const Payload& b) const override;
  LocatedCut sup_cut(const Payload& a) const override;
  Integer unit_bound(const Payload& a) const override;
  RatioBound ratio_bound(const Payload& a, const Payload& b) const override;
  std::optional<Payload> dense_element(std::uint64_t index) const override;
  bool equal(const Payload& a, const Payload& b) const override;
  std::string key(const Payload& a) const override;
  nlohmann::json to_json(const Payload& a) const override;
  Payload from_json(const nlohmann::json& j) const override;

 private:
  const QnVec& get(const Payload& p) const;
  std::size_t n_;
};

/// Piecewise-linear functions on [0,1] with rational breakpoints.
class PLSpace final : public Space {
 public:
  /// Validates and canonicalizes (drops breakpoints collinear with their neighbours).
  Element make(std::vector<Breakpoint> points) const;
  static PLFunc canonical(std::vector<Breakpoint> points);
  static Rational eval(const PLFunc& f, const Rational& x);

  std::string_view name() const override { return "pl"; }
  bool exact() const override { return true; }
  Payload zero() const override;
  Payload unit() const override;
  Payload add(const Payload& a, const Payload& b) const override;
  Payload scale(const Rational& q, const Payload& a) const override;
  Payload join(const Payload& a, const Payload& b) const override;
  Payload meet(const Payload& a, const Payload& b) const override;
  Tri leq(const Payload& a, const Payload& b) const override;
  LocatedCut sup_cut(const Payload& a) const override;
  Integer unit_bound(const Payload& a) const override;
  RatioBound ratio_bound(const Payload& a, const Payload& b) const override;
  std::optional<Payload> dense_element(std::uint64_t index) const override;
  bool equal(const Payload& a, const Payload& b) const override;
  std::string key(const Payload& a) const override;
  nlohmann::json to_json(const Payload& a) const override;
  Payload from_json(const nlohmann::json& j) const override;

 private:
  const PLFunc& get(const Payload& p) const;
};

/// Error-tracked elements of a commuting algebra of symmetric matrices.
///
/// Certified answers (leq yes/no, sup bounds) hold for every matrix within the
/// error radius; otherwise the answer is unknown. Lattice operations go through
/// a certified square root at `lattice_tol` and are memoized.
class HermSpace final : public Space {
 public:
  HermSpace(std::shared_ptr<const CommutingAlgebra> algebra, Rational lattice_tol);

  const CommutingAlgebra& algebra() const { return *algebra_; }
  const Rational& lattice_tol() const { return lattice_tol_; }
  /// Throws PreconditionError unless the matrix is symmetric and commutes with the generators.
  Element make(RationalMatrix m, Rational err = Rational(0)) const;
  HermVal validated(HermVal v) const;

  std::string_view name() const override { return "herm"; }
  bool exact() const override { return false; }
  Payload zero() const override;
  Payload unit() const override;
  Payload add(const Payload& a, const Payload& b) const override;
  Payload scale(const Rational& q, const Payload& a) const override;
  Payload join(const Payload& a, const Payload& b) const override;
  Payload absolute(const Payload& a) const override;
  Tri leq(const Payload& a, const Payload& b) const override;
  LocatedCut sup_cut(const Payload& a) const override;
  Integer unit_bound(const Payload& a) const override;
  std::optional<Payload> dense_element(std::uint64_t index) const override;
  bool equal(const Payload& a, const Payload& b) const override;
  std::string key(const Payload& a) const override;
  nlohmann::json to_json(const Payload& a) const override;
  Payload from_json(const nlohmann::json& j) const override;

  Element multiply(const Element& a, const Element& b) const;

  /// Rounds the coordinates of an algebra element to a dyadic grid in a fixed
  /// echelon basis of the algebra, adding the rounding to the error radius.
  /// Keeps repeated lattice operations from growing entry sizes.
  HermVal compress(const HermVal& v) const;
  std::size_t algebra_dimension() const { return basis_.size(); }

 private:
  const HermVal& get(const Payload& p) const;
  std::shared_ptr<const CommutingAlgebra> algebra_;
  Rational lattice_tol_;
  // Reduced echelon basis: basis_[i] is 1 at pivots_[i] and 0 at the other pivots.
  std::vector<RationalMatrix> basis_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;
  std::vector<Rational> basis_norms_;
  unsigned grid_bits_ = 0;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::string, HermVal> memo_;
};

std::shared_ptr<const QnSpace> make_qn_space(std::size_t n);
std::shared_ptr<const PLSpace> make_pl_space();
std::shared_ptr<const HermSpace> make_herm_space(CommutingAlgebra algebra, Rational lattice_tol = pow2(-24));

}  // namespace riesz
