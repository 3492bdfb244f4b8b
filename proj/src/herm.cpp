#include "riesz/errors.hpp"
#include "riesz/instances.hpp"
#include "riesz/json_io.hpp"

namespace riesz {

HermSpace::HermSpace(std::shared_ptr<const CommutingAlgebra> algebra, Rational lattice_tol)
    : algebra_(std::move(algebra)), lattice_tol_(std::move(lattice_tol)) {
  if (!algebra_) throw PreconditionError("herm space without an algebra");
  if (sgn(lattice_tol_) <= 0) throw PreconditionError("lattice tolerance must be positive");

  // Echelon form over the upper-triangle entries of the monomials.
  const std::size_t n = algebra_->dim();
  for (RationalMatrix m : algebra_->monomials(static_cast<unsigned>(n))) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational c = m(pivots_[i].first, pivots_[i].second);
      if (sgn(c) != 0) m = m - c * basis_[i];
    }
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    for (std::size_t r = 0; r < n && !pivot; ++r)
      for (std::size_t c = r; c < n && !pivot; ++c)
        if (sgn(m(r, c)) != 0) pivot = std::make_pair(r, c);
    if (!pivot) continue;
    m = m * Rational(1 / m(pivot->first, pivot->second));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational c = basis_[i](pivot->first, pivot->second);
      if (sgn(c) != 0) basis_[i] = basis_[i] - c * m;
    }
    basis_.push_back(std::move(m));
    pivots_.push_back(*pivot);
  }
  Rational total(0);
  for (const auto& b : basis_) {
    basis_norms_.push_back(row_sum_bound(b));
    total += basis_norms_.back();
  }
  // nearest rounding moves each coordinate by at most 2^-(bits+1)
  grid_bits_ = ceil_log2(Rational(16 * total / lattice_tol_));
}

HermVal HermSpace::compress(const HermVal& v) const {
  RationalMatrix rebuilt(algebra_->dim());
  Rational moved(0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational& c = v.matrix(pivots_[i].first, pivots_[i].second);
    const Rational lo = round_dyadic(c, grid_bits_, Rounding::down);
    const Rational hi = round_dyadic(c, grid_bits_, Rounding::up);
    const Rational rounded = c - lo <= hi - c ? lo : hi;
    moved += rabs(Rational(c - rounded)) * basis_norms_[i];
    if (sgn(rounded) != 0) rebuilt += rounded * basis_[i];
  }
  if (sgn(moved) == 0) return v;
  return HermVal{std::move(rebuilt), v.err + moved};
}

const HermVal& HermSpace::get(const Payload& p) const {
  const auto* v = std::get_if<HermVal>(&p);
  if (v == nullptr || v->matrix.dim() != algebra_->dim()) throw CrossSpaceError();
  return *v;
}

HermVal HermSpace::validated(HermVal v) const {
  if (v.matrix.dim() != algebra_->dim()) throw PreconditionError("matrix dimension does not match the algebra");
  if (!v.matrix.is_symmetric()) throw PreconditionError("matrix is not symmetric");
  if (sgn(v.err) < 0) throw PreconditionError("error radius must be nonnegative");
  if (!algebra_->commutes_with_all(v.matrix)) throw PreconditionError("matrix does not commute with the algebra");
  return v;
}

Element HermSpace::make(RationalMatrix m, Rational err) const {
  return Element(shared_from_this(), validated(HermVal{std::move(m), std::move(err)}));
}

Payload HermSpace::zero() const { return HermVal{RationalMatrix(algebra_->dim()), Rational(0)}; }
Payload HermSpace::unit() const { return HermVal{algebra_->identity(), Rational(0)}; }

Payload HermSpace::add(const Payload& a, const Payload& b) const { return herm_add(get(a), get(b)); }
Payload HermSpace::scale(const Rational& q, const Payload& a) const { return herm_scale(q, get(a)); }

Payload HermSpace::join(const Payload& a, const Payload& b) const {
  const HermVal& x = get(a);
  const HermVal& y = get(b);
  const std::string memo_key = "join|" + key(a) + "|" + key(b);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(memo_key);
    if (it != memo_.end()) return it->second;
  }
  HermVal out = compress(herm_join(x, y, lattice_tol_));
  std::lock_guard<std::mutex> lock(memo_mutex_);
  memo_.emplace(memo_key, out);
  return out;
}

Payload HermSpace::absolute(const Payload& a) const {
  const HermVal& x = get(a);
  const std::string memo_key = "abs|" + key(a);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(memo_key);
    if (it != memo_.end()) return it->second;
  }
  HermVal out = compress(abs_value(x, lattice_tol_));
  std::lock_guard<std::mutex> lock(memo_mutex_);
  memo_.emplace(memo_key, out);
  return out;
}

Tri HermSpace::leq(const Payload& a, const Payload& b) const {
  const HermVal& x = get(a);
  const HermVal& y = get(b);
  const RationalMatrix diff = y.matrix - x.matrix;
  const Rational e = x.err + y.err;
  if (psd_check(diff.shifted(Rational(-e)))) return Tri::yes;
  if (sgn(e) == 0 || !psd_check(diff.shifted(e))) return Tri::no;
  return Tri::unknown;
}

LocatedCut HermSpace::sup_cut(const Payload& a) const {
  const HermVal x = get(a);
  if (sgn(x.err) == 0) {
    const Rational corner = x.matrix(0, 0);
    if (x.matrix == RationalMatrix::scalar(x.matrix.dim(), corner)) return LocatedCut::exact(corner);
  }
  return LocatedCut([x](const Rational& eps) {
    const Rational slack = eps - 2 * x.err;
    if (sgn(slack) <= 0) throw UnknownAtTolerance("sup of an error-tracked matrix is not located below twice its error radius");
    // lambda_max(M) in (lo, hi]
    const Rational bound = row_sum_bound(x.matrix);
    Rational lo = -bound - 1;
    Rational hi = bound;
    const unsigned bits = ceil_log2(Rational(1) / slack) + 2;
    while (hi - lo >= slack) {
      const Rational mid = round_dyadic(Rational((lo + hi) / 2), bits, Rounding::down);
      if (mid <= lo || mid >= hi) break;
      if (psd_check(x.matrix.shifted(Rational(-mid)) * Rational(-1)))
        hi = mid;
      else
        lo = mid;
    }
    while (hi - lo >= slack) {
      const Rational mid = (lo + hi) / 2;
      if (psd_check(x.matrix.shifted(Rational(-mid)) * Rational(-1)))
        hi = mid;
      else
        lo = mid;
    }
    return Rational(hi + x.err);
  });
}

Integer HermSpace::unit_bound(const Payload& a) const {
  const HermVal& x = get(a);
  auto fits = [&](const Integer& n) {
    return psd_check(x.matrix.shifted(Rational(x.err - n)) * Rational(-1));
  };
  Integer lo = -1;  // fails, or below the search range
  Integer hi = ceil_of(row_sum_bound(x.matrix) + x.err);
  if (hi < 0) hi = 0;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (fits(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::optional<Payload> HermSpace::dense_element(std::uint64_t index) const {
  const std::vector<RationalMatrix> basis = algebra_->monomials(2);
  RationalMatrix m(algebra_->dim());
  std::uint64_t rest = index;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::uint64_t coeff_index = rest;
    if (k + 1 < basis.size()) {
      auto [c, tail] = cantor_unpair(rest);
      coeff_index = c;
      rest = tail;
    }
    m = m + nth_rational(coeff_index) * basis[k];
  }
  return HermVal{std::move(m), Rational(0)};
}

bool HermSpace::equal(const Payload& a, const Payload& b) const { return get(a) == get(b); }

std::string HermSpace::key(const Payload& a) const {
  const HermVal& x = get(a);
  std::string out = "herm:" + to_string(x.err) + ":";
  for (std::size_t i = 0; i < x.matrix.dim(); ++i)
    for (std::size_t j = i; j < x.matrix.dim(); ++j) out += to_string(x.matrix(i, j)) + ",";
  return out;
}

nlohmann::json HermSpace::to_json(const Payload& a) const {
  const HermVal& x = get(a);
  return {{"space", "herm"}, {"matrix", matrix_json(x.matrix)}, {"err", rational_json(x.err)}};
}

Payload HermSpace::from_json(const nlohmann::json& j) const {
  if (!j.contains("matrix")) throw ParseError("herm element needs a \"matrix\"");
  HermVal v{matrix_from_json(j.at("matrix")), Rational(0)};
  if (j.contains("err")) v.err = rational_from_json(j.at("err"));
  return validated(std::move(v));
}

Element HermSpace::multiply(const Element& a, const Element& b) const {
  require_same_space(a, b);
  if (&a.space() != this) throw CrossSpaceError();
  return Element(shared_from_this(), herm_multiply(get(a.payload()), get(b.payload())));
}

std::shared_ptr<const HermSpace> make_herm_space(CommutingAlgebra algebra, Rational lattice_tol) {
  return std::make_shared<const HermSpace>(std::make_shared<const CommutingAlgebra>(std::move(algebra)),
                                           std::move(lattice_tol));
}

}  // namespace riesz
