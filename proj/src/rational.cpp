#include "riesz/rational.hpp"

#include <cctype>
#include <cmath>

#include "riesz/errors.hpp"

namespace riesz {

Rational make_rational(long num, long den) {
  if (den == 0) throw PreconditionError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("not a rational: '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(negative ? Integer(-n) : n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational pow2(long k) {
  Integer p = 1;
  const unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  if (k >= 0) return Rational(p);
  Rational q(Integer(1), p);
  return q;
}

Rational round_dyadic(const Rational& q, unsigned k, Rounding mode) {
  if (q.get_den() == 1) return q;
  Integer scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), k);
  Integer n;
  if (mode == Rounding::down)
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  else
    mpz_cdiv_q(n.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  Rational r(n, den);
  r.canonicalize();
  return r;
}

namespace {

Rational simplest_positive(const Rational& lo, const Rational& hi) {
  const Integer c = ceil_of(lo);
  if (Rational(c) <= hi) return Rational(c);
  const Integer f = floor_of(lo);
  const Rational inner = simplest_positive(Rational(1) / (hi - f), Rational(1) / (lo - f));
  return Rational(f) + Rational(1) / inner;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw PreconditionError("simplest_between: empty range");
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(lo) > 0) return simplest_positive(lo, hi);
  return -simplest_positive(-hi, -lo);
}

unsigned ceil_log2(const Rational& q) {
  unsigned k = 0;
  Rational p = 1;
  while (p < q) {
    p *= 2;
    ++k;
  }
  return k;
}

Rational nth_rational(std::uint64_t index) {
  if (index == 0) return Rational(0);
  const std::uint64_t m = (index + 1) / 2;
  const bool negative = index % 2 == 0;
  // Calkin-Wilf tree: follow the bits of m below its leading one.
  Integer a = 1, b = 1;
  int top = 63;
  while (top > 0 && ((m >> top) & 1U) == 0) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    if ((m >> bit) & 1U)
      a = a + b;
    else
      b = a + b;
  }
  Rational q(a, b);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while (w > 0 && w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  const std::uint64_t t = w * (w + 1) / 2;
  const std::uint64_t y = z - t;
  return {w - y, y};
}

}  // namespace riesz
