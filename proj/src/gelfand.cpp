#include "riesz/gelfand.hpp"

#include <exception>
#include <mutex>
#include <random>

#include "riesz/errors.hpp"
#include "riesz/instances.hpp"
#include "riesz/json_io.hpp"
#include "riesz/spectrum.hpp"

namespace riesz {

nlohmann::json GelfandReport::to_json() const {
  return {{"eps", rational_json(eps)},
          {"maxMultViolation", rational_json(max_mult_violation)},
          {"maxSquareViolation", rational_json(max_square_violation)},
          {"worstRatio", rational_json(worst_ratio)},
          {"points", points},
          {"pairsTested", pairs_tested},
          {"boundFailures", bound_failures},
          {"keyInequalityChecks", key_checks},
          {"keyInequalityFailures", key_failures},
          {"keyInequalityUnknown", key_unknown},
          {"passed", passed()}};
}

namespace {

std::vector<Element> sample_elements(const HermSpace& space, const Element& unit, const GelfandOptions& options) {
  const CommutingAlgebra& algebra = space.algebra();
  std::vector<Element> out{unit};
  for (const auto& g : algebra.generators()) out.push_back(space.make(g));
  const std::vector<RationalMatrix> basis = algebra.monomials(2);
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> numer(-2, 2);
  std::uniform_int_distribution<int> denom(1, 2);
  for (std::size_t k = 0; k < options.random_polynomials; ++k) {
    RationalMatrix m(algebra.dim());
    for (const auto& b : basis) m = m + make_rational(numer(rng), denom(rng)) * b;
    out.push_back(space.make(std::move(m)));
  }
  return out;
}

}  // namespace

GelfandReport gelfand_check(const CommutingAlgebra& algebra, const Rational& eps, const GelfandOptions& options) {
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  const auto space = make_herm_space(algebra, options.lattice_tol);
  const Element unit = space->make(algebra.identity());
  const std::vector<Element> samples = sample_elements(*space, unit, options);

  std::vector<Element> covered;
  for (const auto& g : algebra.generators()) covered.push_back(space->make(g));
  if (covered.empty()) covered.push_back(unit);
  SpectrumNet net = epsilon_net(covered, eps);
  if (net.points.size() > options.max_points) net.points.erase(net.points.begin() + static_cast<std::ptrdiff_t>(options.max_points), net.points.end());

  struct Pair {
    std::size_t a;
    std::size_t b;
    Element product;
    Rational bound;
  };
  std::vector<Rational> norms;
  for (const auto& s : samples) norms.push_back(row_sum_bound(s.as<HermVal>().matrix));
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < samples.size(); ++a)
    for (std::size_t b = a; b < samples.size(); ++b)
      pairs.push_back({a, b, space->multiply(samples[a], samples[b]),
                       Rational(eps * (1 + norms[a] + norms[b]) * options.constant)});

  GelfandReport report;
  report.eps = eps;
  report.points = net.points.size();
  std::mutex merge;
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    try {
      Representation& sigma = net.points[i];
      std::vector<Rational> values;
      for (const auto& s : samples) values.push_back(sigma.eval(s, eps));
      Rational mult(0), square(0), ratio(0);
      std::size_t failures = 0;
      for (const auto& p : pairs) {
        const Rational got = sigma.eval(p.product, eps);
        const Rational violation = rabs(Rational(got - values[p.a] * values[p.b]));
        if (p.a == p.b)
          square = rmax(square, violation);
        else
          mult = rmax(mult, violation);
        ratio = rmax(ratio, Rational(violation / p.bound));
        if (violation > p.bound) ++failures;
      }
      std::lock_guard<std::mutex> lock(merge);
      report.max_mult_violation = rmax(report.max_mult_violation, mult);
      report.max_square_violation = rmax(report.max_square_violation, square);
      report.worst_ratio = rmax(report.worst_ratio, ratio);
      report.pairs_tested += pairs.size();
      report.bound_failures += failures;
    } catch (...) {
      std::lock_guard<std::mutex> lock(merge);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const std::vector<Rational> radii{Rational(1, 4), Rational(1, 2), Rational(1)};
  std::vector<Tri> key(pairs.size() * radii.size(), Tri::yes);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < key.size(); ++k) {
    try {
      const Pair& p = pairs[k / radii.size()];
      const Rational& r = radii[k % radii.size()];
      const Element lhs = positive_part(samples[p.a] - r).meet(positive_part(samples[p.b]));
      const Element rhs = Rational(1 / r) * positive_part(p.product);
      key[k] = lhs.leq(rhs);
    } catch (...) {
      std::lock_guard<std::mutex> lock(merge);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  report.key_checks = key.size();
  for (Tri t : key) {
    if (t == Tri::no) ++report.key_failures;
    if (t == Tri::unknown) ++report.key_unknown;
  }
  return report;
}

}  // namespace riesz
