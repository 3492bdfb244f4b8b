#include "riesz/selftest.hpp"

#include <chrono>
#include <functional>

#include "riesz/errors.hpp"
#include "riesz/falgebra.hpp"
#include "riesz/gelfand.hpp"
#include "riesz/generators.hpp"
#include "riesz/instances.hpp"
#include "riesz/lattice.hpp"
#include "riesz/spectrum.hpp"

namespace riesz {

namespace {

struct Counter {
  SuiteResult* result;
  void check(bool ok, const std::string& what) {
    ++result->checks;
    if (ok) return;
    ++result->failures;
    if (result->detail.empty()) result->detail = what;
  }
};

using Sampler = std::function<Element(Rng&)>;

std::vector<std::pair<std::string, Sampler>> exact_samplers() {
  auto q3 = make_qn_space(3);
  auto q8 = make_qn_space(8);
  auto pl = make_pl_space();
  return {
      {"Q3", [q3](Rng& rng) { return q3->make(random_coords(rng, 3)); }},
      {"Q8", [q8](Rng& rng) { return q8->make(random_coords(rng, 8)); }},
      {"PL", [pl](Rng& rng) { return pl->make(random_breakpoints(rng, 12)); }},
  };
}

void lattice_suite(Rng& rng, const SelftestOptions& opt, Counter& c) {
  const int pairs = opt.full ? 500 : 60;
  for (const auto& [name, sample] : exact_samplers()) {
    for (int k = 0; k < pairs; ++k) {
      const Element a = sample(rng);
      const Element b = sample(rng);
      std::array<Tri, 5> rel = lattice_relations(a, b);
      if (opt.mutate) {
        const LatticeElement meet = lat_combine(d_of(a), d_of(b), LatticeMode::meet);
        rel[4] = lattice_equal(d_of(a.join(b)), meet);
      }
      for (std::size_t i = 0; i < rel.size(); ++i)
        c.check(rel[i] == Tri::yes, name + ": relation " + std::to_string(i + 1) + " fails at " + a.key() + " / " + b.key());
    }
  }
}

void cover_suite(Rng& rng, const SelftestOptions& opt, Counter& c) {
  const int cases = opt.full ? 100 : 20;
  auto q3 = make_qn_space(3);
  auto pl = make_pl_space();
  const std::vector<Rational> widths{Rational(1, 2), Rational(1, 4), Rational(1, 8)};
  for (int k = 0; k < cases; ++k) {
    const Element a = k % 2 == 0 ? q3->make(random_coords(rng, 3)) : pl->make(random_breakpoints(rng, 12));
    auto [p, q] = range_bounds(a);
    const Rational w = widths[static_cast<std::size_t>(k) % widths.size()];
    const IntervalCover cover = cover_interval(a, p, q, w);
    c.check(cover.cert.verify() == Tri::yes, "interval certificate fails at " + a.key());
    c.check(cover_range(a).cert.verify() == Tri::yes, "range certificate fails at " + a.key());
    std::vector<Element> bs;
    for (const auto& part : cover.cert.parts) bs.push_back(part.rep);
    const Rational r = shrink_cover(bs);
    std::vector<Element> shifted;
    for (const auto& b : bs) shifted.push_back(positive_part(b - r));
    const Element joined = join_tree(std::move(shifted));
    c.check(sgn(*(-joined).sup_cut().exact_value()) < 0, "shrunk cover lost the unit at " + a.key());
  }
}

void pos_suite(Rng& rng, const SelftestOptions& opt, Counter& c) {
  const int cases = opt.full ? 500 : 100;
  auto samplers = exact_samplers();
  for (int k = 0; k < cases; ++k) {
    const Element a = samplers[static_cast<std::size_t>(k) % samplers.size()].second(rng);
    const Rational r = make_rational(1 + k % 4, 4);
    const PosOutcome out = pos_or_below(a, r);
    const Rational sup = *a.sup_cut().exact_value();
    if (out.is_pos())
      c.check(sgn(out.witness) > 0 && out.witness < sup, "Pos witness not below sup at " + a.key());
    else
      c.check(a.leq(r * a.unit()) == Tri::yes, "Below bound fails at " + a.key());
  }
}

/// Index of the coordinate projection matching every probe within tol, or -1.
int matching_projection(Representation& sigma, const std::vector<Element>& probes, const Rational& eps,
                        const Rational& tol) {
  std::vector<Rational> got;
  for (const auto& b : probes) got.push_back(sigma.eval(b, eps));
  const std::size_t n = probes.front().as<QnVec>().coords.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool all = true;
    for (std::size_t k = 0; k < probes.size() && all; ++k)
      all = rabs(Rational(got[k] - probes[k].as<QnVec>().coords[i])) <= tol;
    if (all) return static_cast<int>(i);
  }
  return -1;
}

void point_suite(Rng& rng, const SelftestOptions& opt, Counter& c) {
  const int points = opt.full ? 50 : 6;
  const Rational eps = pow2(-8);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  int built = 0;
  while (built < points) {
    auto space = make_qn_space(dim(rng));
    const Element a = space->make(random_coords(rng, space->size()));
    const PosOutcome out = pos_or_below(a, Rational(1, 4));
    if (!out.is_pos()) continue;
    ++built;
    Representation sigma = point_new(a, out);
    std::vector<Element> probes{a.unit()};
    for (int k = 0; k < 20; ++k) probes.push_back(space->make(random_coords(rng, space->size())));
    c.check(matching_projection(sigma, probes, eps, 4 * eps) >= 0, "point matches no projection for " + a.key());
  }
}

void overt_suite(Rng& rng, const SelftestOptions& opt, Counter& c) {
  const int cases = opt.full ? 200 : 30;
  const Rational eps = pow2(-6);
  for (const auto& [name, sample] : exact_samplers()) {
    for (int k = 0; k < cases; ++k) {
      const Element a = sample(rng);
      const Rational generic = sup_approx_generic(a, eps);
      const Rational native = a.sup_cut().approx(eps);
      c.check(rabs(Rational(generic - native)) <= 2 * eps, name + ": generic sup disagrees at " + a.key());
    }
  }
}

/// |d - sqrt(l)| <= t for d, l >= 0 rational.
bool within_root(const Rational& d, const Rational& l, const Rational& t) {
  const Rational hi = d + t;
  const Rational lo = d - t;
  if (l > hi * hi) return false;
  return sgn(lo) <= 0 || lo * lo <= l;
}

void sqrt_suite(Rng& rng, const SelftestOptions& opt, Counter& c) {
  const int families = opt.full ? 20 : 4;
  const Rational tol = pow2(-10);
  std::uniform_int_distribution<std::size_t> dim(1, opt.full ? 4 : 3);
  for (int k = 0; k < families; ++k) {
    const CommutingFamily fam = random_commuting_family(rng, dim(rng), 1, SpectrumKind::psd_separated);
    const RationalMatrix& a = fam.members.front();
    const SqrtResult res = sqrt_psd(HermVal{a, Rational(0)}, tol);
    const RationalMatrix& s = res.root.matrix;
    const RationalMatrix gap = s * s - a;
    c.check(psd_check(gap.shifted(tol)) && psd_check((-gap).shifted(tol)), "||S^2 - A|| exceeds tol");
    const RationalMatrix in_basis = fam.basis.transpose() * s * fam.basis;
    bool ok = true;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < a.dim(); ++j)
        if (i != j && sgn(in_basis(i, j)) != 0) ok = false;
      if (!within_root(in_basis(i, i), fam.spectra.front()[i], 10 * tol)) ok = false;
    }
    c.check(ok, "root differs from the spectral oracle");
  }
}

void sos_suite(Rng& rng, const SelftestOptions& opt, Counter& c) {
  const int cases = opt.full ? 10 : 3;
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  for (int k = 0; k < cases; ++k) {
    const CommutingFamily fam = random_commuting_family(rng, dim(rng), 1, SpectrumKind::psd);
    RationalMatrix a = fam.members.front();
    const Rational scale = row_sum_bound(a);
    if (sgn(scale) > 0) a = a * Rational(1 / scale);
    const SumOfSquares sos = sum_of_squares(HermVal{a, Rational(0)}, pow2(-6), 64);
    RationalMatrix rest = a;
    for (std::size_t n = 0; n < sos.squares.size(); ++n) {
      const RationalMatrix& an = sos.squares[n].matrix;
      if (n > 0) c.check(psd_check(RationalMatrix::scalar(a.dim(), Rational(1, static_cast<long>(n))) - an * an),
                         "rate A_n^2 <= 1/n fails");
      rest = rest - an * an;
    }
    c.check(rest == sos.residual.matrix, "sum-of-squares identity is not exact");
  }
}

void product_suite(Rng& rng, const SelftestOptions& opt, Counter& c) {
  const int pairs = opt.full ? 500 : 60;
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int k = 0; k < pairs; ++k) {
    const CommutingFamily fam = random_commuting_family(rng, dim(rng), 2, SpectrumKind::psd);
    c.check(product_order_check(HermVal{fam.members[0], Rational(0)}, HermVal{fam.members[1], Rational(0)}),
            "product of commuting PSD matrices is not PSD");
  }
}

void stone_yosida_suite(Rng& rng, const SelftestOptions&, Counter& c) {
  const Rational eps = pow2(-6);
  for (const auto& [name, sample] : exact_samplers()) {
    for (int k = 0; k < 6; ++k) {
      const Element a = sample(rng);
      const StoneYosida sy = stone_yosida_check(a, eps);
      c.check(rabs(Rational(sy.norm_value - sy.net_max)) <= 3 * eps, name + ": norm differs from net max at " + a.key());
    }
  }
  for (int k = 0; k < 3; ++k) {
    const CommutingFamily fam = random_commuting_family(rng, 2, 1, SpectrumKind::any);
    auto space = make_herm_space(CommutingAlgebra::create(fam.members));
    const Element a = space->make(fam.members.front());
    const StoneYosida sy = stone_yosida_check(a, eps);
    c.check(rabs(Rational(sy.norm_value - sy.net_max)) <= 3 * eps, "herm: norm differs from net max");
  }
}

void gelfand_suite(Rng&, const SelftestOptions& opt, Counter& c) {
  const std::vector<Rational> d1{Rational(1), Rational(2)};
  const std::vector<Rational> d2{Rational(3), Rational(4)};
  const CommutingAlgebra alg =
      CommutingAlgebra::create({RationalMatrix::diagonal(d1), RationalMatrix::diagonal(d2)});
  GelfandOptions go;
  go.seed = opt.seed;
  const GelfandReport rep = gelfand_check(alg, pow2(-6), go);
  c.check(rep.passed() && rep.points > 0, "gelfand multiplicativity over tolerance");
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  using Suite = void (*)(Rng&, const SelftestOptions&, Counter&);
  std::vector<std::pair<std::string, Suite>> suites{
      {"lattice-relations", lattice_suite}, {"cover-certificates", cover_suite}, {"pos-trichotomy", pos_suite},
      {"point-projection", point_suite},    {"overtness", overt_suite},          {"square-root", sqrt_suite},
      {"sum-of-squares", sos_suite},        {"product-order", product_suite},
  };
  if (options.full) {
    suites.emplace_back("stone-yosida", stone_yosida_suite);
    suites.emplace_back("gelfand", gelfand_suite);
  }
  std::vector<SuiteResult> out;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    SuiteResult result;
    result.name = suites[i].first;
    Rng rng(options.seed * 7919 + i);
    Counter counter{&result};
    const auto start = std::chrono::steady_clock::now();
    try {
      suites[i].second(rng, options, counter);
    } catch (const std::exception& e) {
      ++result.failures;
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(result));
  }
  return out;
}

nlohmann::json selftest_json(const std::vector<SuiteResult>& results) {
  nlohmann::json suites = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed();
    suites.push_back({{"name", r.name}, {"checks", r.checks}, {"failures", r.failures}, {"passed", r.passed()},
                      {"detail", r.detail}});
  }
  return {{"suites", suites}, {"passed", all}};
}

}  // namespace riesz
