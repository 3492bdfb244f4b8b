#include "riesz/poly.hpp"

#include "riesz/errors.hpp"

namespace riesz {

QuotientRing::QuotientRing(std::vector<Rational> modulus) : modulus_(std::move(modulus)) {
  if (modulus_.empty() || modulus_.back() != 1) throw PreconditionError("QuotientRing: modulus must be monic");
}

QuotientRing::Poly QuotientRing::constant(const Rational& c) const {
  Poly p(degree());
  if (!p.empty()) p[0] = c;
  return p;
}

QuotientRing::Poly QuotientRing::variable() const {
  Poly full(2);
  full[1] = 1;
  return reduce(std::move(full));
}

QuotientRing::Poly QuotientRing::reduce(Poly full) const {
  const std::size_t d = degree();
  for (std::size_t k = full.size(); k-- > d;) {
    if (sgn(full[k]) == 0) continue;
    const Rational t = full[k];
    for (std::size_t i = 0; i < d; ++i) full[k - d + i] -= t * modulus_[i];
    full[k] = 0;
  }
  full.resize(d);
  return full;
}

QuotientRing::Poly QuotientRing::add(const Poly& a, const Poly& b) const {
  Poly c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

QuotientRing::Poly QuotientRing::sub(const Poly& a, const Poly& b) const {
  Poly c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

QuotientRing::Poly QuotientRing::scale(const Rational& q, const Poly& a) const {
  Poly c = a;
  for (auto& x : c) x *= q;
  return c;
}

QuotientRing::Poly QuotientRing::mul(const Poly& a, const Poly& b) const {
  const std::size_t d = degree();
  if (d == 0) return {};
  Poly full(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) full[i + j] += a[i] * b[j];
  }
  return reduce(std::move(full));
}

QuotientRing::Poly QuotientRing::divide(const Poly& target, const Poly& y) const {
  const std::size_t d = degree();
  if (d == 0) return {};
  // Column k of the multiplication-by-y matrix is y * x^k.
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  Poly col = y;
  const Poly x = variable();
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) m[i][k] = col[i];
    if (k + 1 < d) col = mul(col, x);
  }
  return solve_linear(std::move(m), target);
}

QuotientRing::Poly QuotientRing::round(const Poly& a, unsigned bits, Rounding mode) const {
  Poly c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = round_dyadic(a[i], bits, mode);
  return c;
}

std::vector<RationalMatrix> matrix_powers(const RationalMatrix& x, std::size_t count) {
  std::vector<RationalMatrix> powers;
  powers.reserve(count);
  if (count == 0) return powers;
  powers.push_back(RationalMatrix::identity(x.dim()));
  for (std::size_t k = 1; k < count; ++k) powers.push_back(powers.back() * x);
  return powers;
}

RationalMatrix evaluate(std::span<const Rational> p, std::span<const RationalMatrix> powers) {
  if (powers.empty()) throw PreconditionError("evaluate: no powers supplied");
  RationalMatrix acc(powers.front().dim());
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (sgn(p[k]) == 0) continue;
    if (k >= powers.size()) throw PreconditionError("evaluate: polynomial degree exceeds supplied powers");
    acc += powers[k] * p[k];
  }
  return acc;
}

}  // namespace riesz
