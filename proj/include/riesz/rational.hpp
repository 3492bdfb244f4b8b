#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <string_view>

namespace riesz {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Parses "p/q" or "p" (optional leading '-'). Throws ParseError on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// 2^k for any (possibly negative) k.
Rational pow2(long k);

inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational rabs(const Rational& a) { return sgn(a) < 0 ? Rational(-a) : a; }

enum class Rounding { down, up };

/// Nearest multiple of 2^-k in the given direction.
Rational round_dyadic(const Rational& q, unsigned k, Rounding mode);

/// The rational with the smallest denominator (then smallest magnitude) in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Smallest k >= 0 with 2^k >= q (q > 0).
unsigned ceil_log2(const Rational& q);

/// Enumerates all rationals: 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, ... (Calkin-Wilf order).
Rational nth_rational(std::uint64_t index);

/// Inverse of the Cantor pairing function.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

}  // namespace riesz
