#include "riesz/falgebra.hpp"

#include <functional>

#include "riesz/errors.hpp"
#include "riesz/poly.hpp"

namespace riesz {

CommutingAlgebra CommutingAlgebra::create(std::vector<RationalMatrix> generators, std::optional<std::size_t> dim) {
  if (generators.empty() && !dim) throw PreconditionError("algebra_new: empty generator list needs an explicit dimension");
  const std::size_t n = dim ? *dim : generators.front().dim();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].dim() != n) throw PreconditionError("algebra_new: generator " + std::to_string(i) + " has wrong dimension");
    if (!generators[i].is_symmetric()) throw PreconditionError("algebra_new: generator " + std::to_string(i) + " is not symmetric");
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      const RationalMatrix c = generators[i] * generators[j] - generators[j] * generators[i];
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          if (sgn(c(r, s)) != 0) throw NonCommutingError(i, j, r, s, to_string(c(r, s)));
    }
  return CommutingAlgebra(n, std::move(generators));
}

bool CommutingAlgebra::commutes_with_all(const RationalMatrix& m) const {
  if (m.dim() != dim_) return false;
  for (const auto& g : generators_)
    if (!(g * m == m * g)) return false;
  return true;
}

std::vector<RationalMatrix> CommutingAlgebra::monomials(unsigned max_degree) const {
  std::vector<RationalMatrix> out{identity()};
  std::function<void(std::size_t, unsigned, const RationalMatrix&)> extend = [&](std::size_t first, unsigned left,
                                                                                const RationalMatrix& acc) {
    if (left == 0) return;
    for (std::size_t i = first; i < generators_.size(); ++i) {
      RationalMatrix next = acc * generators_[i];
      out.push_back(next);
      extend(i, left - 1, next);
    }
  };
  extend(0, max_degree, identity());
  return out;
}

namespace {

using Poly = QuotientRing::Poly;

/// Q[x]/(m) split off its kernel component: `range` is Q[x]/(m/x) when m(0) = 0,
/// and `projector` is the idempotent that vanishes on the kernel.
struct Deflation {
  QuotientRing full;
  QuotientRing range;
  Poly projector;

  Poly lift(const Poly& p) const {
    Poly out(full.degree());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
    return out;
  }
  /// Embeds a range-ring element, zero on the kernel.
  Poly embed(const Poly& p) const { return full.mul(lift(p), projector); }
};

Deflation deflate(const std::vector<Rational>& m) {
  QuotientRing full(m);
  if (sgn(m[0]) != 0) return Deflation{full, full, full.constant(Rational(1))};
  std::vector<Rational> m1(m.begin() + 1, m.end());
  QuotientRing range(m1);
  Poly e(full.degree());
  if (range.degree() > 0) {
    for (std::size_t i = 0; i < m1.size() && i < e.size(); ++i) e[i] = -m1[i] / m1[0];
    e[0] += 1;
  }
  return Deflation{full, range, e};
}

Rational pow4(unsigned k) { return pow2(2 * static_cast<long>(k)); }

unsigned norm_exponent(const RationalMatrix& a) {
  unsigned k = 0;
  while (!psd_check((-a).shifted(pow4(k)))) ++k;
  return k;
}

bool within_norm(const RationalMatrix& d, const Rational& tol) {
  return psd_check(d.shifted(tol)) && psd_check((-d).shifted(tol));
}

bool certify_root(const RationalMatrix& s, const RationalMatrix& x, const Rational& tol) {
  if (!psd_check(s)) return false;
  const RationalMatrix s2 = s * s;
  if (!psd_check(tol * s - s2 + x)) return false;
  const RationalMatrix up = s.shifted(tol);
  return psd_check(up * up - x);
}

}  // namespace

SqrtResult sqrt_psd(const HermVal& a, const Rational& tol, const SqrtOptions& options) {
  if (sgn(tol) <= 0) throw PreconditionError("sqrt_psd: tol must be positive");
  const RationalMatrix& mat = a.matrix;
  if (!psd_check(mat)) throw PreconditionError("sqrt_psd: input is not positive semidefinite");

  SqrtTrace trace;
  const unsigned k = norm_exponent(mat);
  trace.scale_exponent = k;
  const Rational mu = pow4(k);
  const RationalMatrix scaled = mat * (Rational(1) / mu);

  // Scalar majorant, kept as a bracket [lo, hi] around the exact sequence.
  const Rational target = tol / (2 * mu);
  const unsigned rbits = ceil_log2(Rational(1) / target) + 24;
  std::vector<Rational> r_hi{Rational(0)}, r_lo{Rational(0)};
  auto majorant_step = [&] {
    r_hi.push_back(round_dyadic((1 + r_hi.back() * r_hi.back()) / 2, rbits, Rounding::up));
    r_lo.push_back(round_dyadic((1 + r_lo.back() * r_lo.back()) / 2, rbits, Rounding::down));
  };
  std::size_t cap = 0;
  while (true) {
    const Rational gap = 1 - r_lo[cap];
    if (gap * gap <= target) break;
    if (cap >= options.max_iter) break;
    majorant_step();
    ++cap;
  }
  trace.a_priori_cap = cap;

  const Deflation defl = deflate(minimal_polynomial(scaled));
  const QuotientRing& ring = defl.range;
  const std::vector<RationalMatrix> powers = matrix_powers(scaled, defl.full.degree());
  const std::size_t d = std::max<std::size_t>(ring.degree(), 1);
  const unsigned bits = ceil_log2(4 * mu * Rational(static_cast<long>(std::max<std::size_t>(cap, 1) * d)) / tol) + 2;

  const Poly one = ring.constant(Rational(1));
  const Poly x = ring.variable();
  Poly b = ring.constant(Rational(0));
  const Rational root_scale = pow2(static_cast<long>(k));
  auto root_of = [&](const Poly& iterate) {
    return evaluate(defl.embed(ring.sub(one, iterate)), powers) * root_scale;
  };

  RationalMatrix s = root_of(b);
  std::size_t n = 0;
  bool certified = ring.degree() == 0 && within_norm(s * s - mat, tol);
  std::size_t next_check = 1;
  while (!certified && n < std::max<std::size_t>(cap, 1)) {
    b = ring.round(ring.scale(Rational(1, 2), ring.add(ring.sub(one, x), ring.mul(b, b))), bits, Rounding::down);
    ++n;
    if (options.keep_iterates) trace.iterates.push_back(evaluate(defl.lift(b), powers));
    if (n == next_check || n == cap) {
      next_check *= 2;
      s = root_of(b);
      certified = within_norm(s * s - mat, tol);
    }
  }
  if (!certified) throw Error("sqrt_psd: residual bound not certified within the iteration cap");
  while (r_hi.size() < n + 2) majorant_step();
  trace.iterations = n;
  trace.majorant.assign(r_hi.begin(), r_hi.begin() + static_cast<std::ptrdiff_t>(n + 2));
  trace.error_bound = tol + a.err;
  return SqrtResult{HermVal{std::move(s), tol + a.err}, std::move(trace)};
}

RationalMatrix root_within(const RationalMatrix& x, const Rational& tol) {
  if (sgn(tol) <= 0) throw PreconditionError("root_within: tol must be positive");
  if (x.is_zero()) return RationalMatrix(x.dim());
  const unsigned j = norm_exponent(x);
  const RationalMatrix scaled = x * (Rational(1) / pow4(j));
  const Deflation defl = deflate(minimal_polynomial(scaled));
  const QuotientRing& ring = defl.range;
  const std::vector<RationalMatrix> powers = matrix_powers(scaled, defl.full.degree());
  const Rational root_scale = pow2(static_cast<long>(j));
  const unsigned bits = ceil_log2(root_scale / tol) + 16;

  // Heron's iteration from above; every iterate dominates the root on the range,
  // and y_{n+1} - sqrt(x) <= y_n - y_{n+1}, so certification waits for a small step.
  const Poly xv = ring.variable();
  Poly y = ring.constant(Rational(1));
  RationalMatrix prev = evaluate(defl.embed(y), powers) * root_scale;
  for (int it = 1; it <= 400; ++it) {
    const Poly z = ring.divide(xv, y);
    y = ring.round(ring.scale(Rational(1, 2), ring.add(y, z)), bits, Rounding::up);
    RationalMatrix s = evaluate(defl.embed(y), powers) * root_scale;
    const bool small_step = row_sum_bound(prev - s) <= tol;
    prev = s;
    if (small_step && certify_root(s, x, tol)) return s;
  }
  throw Error("root_within: no certified root after 400 iterations");
}

HermVal herm_add(const HermVal& a, const HermVal& b) { return HermVal{a.matrix + b.matrix, a.err + b.err}; }

HermVal herm_scale(const Rational& q, const HermVal& a) { return HermVal{a.matrix * q, rabs(q) * a.err}; }

HermVal herm_multiply(const HermVal& a, const HermVal& b) {
  RationalMatrix m = a.matrix * b.matrix;
  if (!m.is_symmetric()) throw PreconditionError("herm_multiply: factors do not commute");
  Rational err = row_sum_bound(a.matrix) * b.err + row_sum_bound(b.matrix) * a.err + a.err * b.err;
  return HermVal{std::move(m), std::move(err)};
}

HermVal abs_value(const HermVal& a, const Rational& tol) {
  if (psd_check(a.matrix)) return a;
  if (psd_check(-a.matrix)) return HermVal{-a.matrix, a.err};
  return HermVal{root_within(a.matrix * a.matrix, tol), a.err + tol};
}

HermVal pos_part(const HermVal& a, const Rational& tol) {
  if (psd_check(a.matrix)) return a;
  if (psd_check(-a.matrix)) return HermVal{RationalMatrix(a.matrix.dim()), a.err};
  const HermVal abs = abs_value(a, tol);
  return HermVal{(abs.matrix + a.matrix) * Rational(1, 2), a.err + tol};
}

HermVal herm_join(const HermVal& a, const HermVal& b, const Rational& tol) {
  const RationalMatrix diff = b.matrix - a.matrix;
  if (psd_check(diff)) return HermVal{b.matrix, rmax(a.err, b.err)};
  if (psd_check(-diff)) return HermVal{a.matrix, rmax(a.err, b.err)};
  const RationalMatrix abs = root_within(diff * diff, tol);
  return HermVal{a.matrix + (abs + diff) * Rational(1, 2), a.err + b.err + tol};
}

HermVal herm_meet(const HermVal& a, const HermVal& b, const Rational& tol) {
  const HermVal j = herm_join(herm_scale(Rational(-1), a), herm_scale(Rational(-1), b), tol);
  return herm_scale(Rational(-1), j);
}

HermVal abs_pos_join(const HermVal& a, const HermVal* b, LatticeOp op, const Rational& tol) {
  switch (op) {
    case LatticeOp::abs:
      return abs_value(a, tol);
    case LatticeOp::pos:
      return pos_part(a, tol);
    case LatticeOp::join:
    case LatticeOp::meet:
      if (b == nullptr) throw PreconditionError("abs_pos_join: join/meet need a second operand");
      return op == LatticeOp::join ? herm_join(a, *b, tol) : herm_meet(a, *b, tol);
  }
  throw PreconditionError("abs_pos_join: unknown operation");
}

bool product_order_check(const HermVal& a, const HermVal& b) {
  if (sgn(a.err) != 0 || sgn(b.err) != 0) throw PreconditionError("product_order_check: inputs must be exact");
  const RationalMatrix p = a.matrix * b.matrix;
  if (!p.is_symmetric()) throw PreconditionError("product_order_check: inputs do not commute");
  return psd_check(p);
}

Rational sqrt_upper(const Rational& q, unsigned bits) {
  if (sgn(q) < 0) throw PreconditionError("sqrt_upper: negative input");
  const Integer scaled = ceil_of(q * pow2(2 * static_cast<long>(bits)));
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  if (root * root < scaled) root += 1;
  Rational s(root, Integer(1));
  return s * pow2(-static_cast<long>(bits));
}

SumOfSquares sum_of_squares(const HermVal& a, const Rational& tol, std::size_t max_iter) {
  if (sgn(a.err) != 0) throw PreconditionError("sum_of_squares: input must be exact");
  if (!psd_check(a.matrix)) throw PreconditionError("sum_of_squares: input is not positive semidefinite");
  if (!psd_check((-a.matrix).shifted(Rational(1)))) throw PreconditionError("sum_of_squares: input exceeds the unit");

  const QuotientRing ring(minimal_polynomial(a.matrix));
  const std::vector<RationalMatrix> powers = matrix_powers(a.matrix, ring.degree());
  constexpr unsigned kBits = 128;

  SumOfSquares out;
  Poly residual = ring.variable();
  RationalMatrix current = a.matrix;
  while (true) {
    if (within_norm(current, tol)) {
      out.reached_tol = true;
      break;
    }
    if (out.squares.size() >= max_iter) break;
    const Poly term = ring.round(residual, kBits, Rounding::down);
    out.squares.push_back(HermVal{evaluate(term, powers), Rational(0)});
    residual = ring.sub(residual, ring.mul(term, term));
    current = evaluate(residual, powers);
  }
  out.residual = HermVal{current, Rational(0)};
  if (out.reached_tol) {
    out.bound = tol;
  } else {
    const Rational rate = sqrt_upper(Rational(1, static_cast<long>(std::max<std::size_t>(out.squares.size(), 1))));
    out.bound = within_norm(current, rate) ? rate : row_sum_bound(current);
  }
  return out;
}

}  // namespace riesz
