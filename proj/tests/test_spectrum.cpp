#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "riesz/errors.hpp"
#include "riesz/lattice.hpp"
#include "riesz/spectrum.hpp"

using namespace riesz;

namespace {

std::vector<Rational> q(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Representation point_at(const Element& a) {
  const auto out = pos_or_below(a, make_rational(1, 2));
  return point_new(a, out);
}

/// Coordinates k whose projection matches sigma on every probe within tol.
std::vector<std::size_t> matching_projections(Representation& sigma, const std::vector<Element>& probes,
                                              const Rational& eps, const Rational& tol) {
  std::vector<std::size_t> out;
  const std::size_t n = probes.front().as<QnVec>().coords.size();
  std::vector<Rational> values;
  for (const auto& b : probes) values.push_back(sigma.eval(b, eps));
  for (std::size_t k = 0; k < n; ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < probes.size(); ++i)
      if (rabs(Rational(values[i] - probes[i].as<QnVec>().coords[k])) > tol) ok = false;
    if (ok) out.push_back(k);
  }
  return out;
}

}  // namespace

TEST(Pos, Examples) {
  auto q1 = make_qn_space(1);
  auto q2 = make_qn_space(2);
  const auto a = pos_or_below(q2->make(q({1, -1})), make_rational(1, 2));
  ASSERT_TRUE(a.is_pos());
  EXPECT_GE(a.witness, make_rational(3, 8));
  const auto b = pos_or_below(q1->make(q({0})), Rational(1));
  ASSERT_FALSE(b.is_pos());
  EXPECT_EQ(b.bound, 1);
  const auto c = pos_or_below(q2->make({make_rational(1, 8), Rational(0)}), make_rational(1, 2));
  ASSERT_FALSE(c.is_pos());
  EXPECT_EQ(c.bound, make_rational(1, 2));
}

TEST(Pos, TrichotomyCertificates) {
  Rng rng(71);
  auto q3 = make_qn_space(3);
  auto pl = make_pl_space();
  for (int i = 0; i < 300; ++i) {
    const Element a = i % 2 == 0 ? fixture::random_qn(rng, q3) : fixture::random_pl(rng, pl);
    const Rational r = rabs(random_rational(rng, 4, 8)) + pow2(-6);
    const auto out = pos_or_below(a, r);
    const Rational sup = *a.sup_cut().exact_value();
    if (out.is_pos()) {
      ASSERT_GT(out.witness, 0);
      ASSERT_LE(out.witness, sup);
    } else {
      ASSERT_EQ(a.leq(out.bound * a.unit()), Tri::yes);
      ASSERT_LT(sup, r);
    }
  }
}

TEST(Pos, SplitsOverJoins) {
  Rng rng(73);
  auto q4 = make_qn_space(4);
  int exercised = 0;
  for (int i = 0; i < 300; ++i) {
    const Element a = fixture::random_qn(rng, q4), b = fixture::random_qn(rng, q4);
    const auto out = pos_or_below(a.join(b), make_rational(1, 4));
    if (!out.is_pos()) continue;
    ++exercised;
    ASSERT_TRUE(pos_or_below(a, out.witness).is_pos() || pos_or_below(b, out.witness).is_pos());
  }
  EXPECT_GT(exercised, 100);
}

TEST(Pos, TransfersAlongPrecedence) {
  Rng rng(75);
  auto q3 = make_qn_space(3);
  int exercised = 0;
  for (int i = 0; i < 300; ++i) {
    const Element a = fixture::random_qn(rng, q3), b = fixture::random_qn(rng, q3);
    const auto out = pos_or_below(a, make_rational(1, 4));
    if (!out.is_pos()) continue;
    const auto p = precedes(d_of(a), d_of(b));
    if (p.holds != Tri::yes) continue;
    ++exercised;
    ASSERT_TRUE(pos_or_below(b, out.witness / Rational(*p.witness)).is_pos());
  }
  EXPECT_GT(exercised, 20);
}

TEST(SupApprox, Examples) {
  auto q2 = make_qn_space(2);
  const Rational s = sup_approx_generic(q2->make({make_rational(1, 3), make_rational(1, 2)}), make_rational(1, 16));
  EXPECT_LE(rabs(Rational(s - make_rational(1, 2))), make_rational(1, 16));
  const Element u = q2->make(q({0, 0})).unit();
  EXPECT_LE(rabs(Rational(sup_approx_generic(u, pow2(-10)) - 1)), pow2(-10));
  const RationalMatrix m(2, q({2, 1, 1, 2}));
  auto h = make_herm_space(CommutingAlgebra::create({m}));
  const Rational sh = sup_approx_generic(h->make(m), pow2(-8));
  EXPECT_LE(rabs(Rational(sh - 3)), pow2(-8));
}

TEST(SupApprox, AgreesWithNativeCut) {
  Rng rng(77);
  auto q5 = make_qn_space(5);
  auto pl = make_pl_space();
  const Rational eps = pow2(-8);
  for (int i = 0; i < 100; ++i) {
    const Element a = i % 2 == 0 ? fixture::random_qn(rng, q5) : fixture::random_pl(rng, pl);
    ASSERT_LE(rabs(Rational(sup_approx_generic(a, eps) - a.sup_cut().approx(eps))), 2 * eps);
  }
}

TEST(Point, OnePointSpace) {
  auto q1 = make_qn_space(1);
  const Element a = q1->make(q({1}));
  Representation sigma = point_at(a);
  for (long k = 2; k <= 10; k += 2) EXPECT_LE(rabs(Rational(sigma.eval(a, pow2(-k)) - 1)), pow2(-k));
}

TEST(Point, MatchesProjectionExamples) {
  auto q2 = make_qn_space(2);
  Representation sigma = point_at(q2->make(q({0, 1})));
  EXPECT_LE(rabs(Rational(sigma.eval(q2->make(q({5, 7})), pow2(-6)) - 7)), pow2(-6));
  auto q3 = make_qn_space(3);
  Representation tau = point_at(q3->make(q({0, 0, 1})));
  EXPECT_LE(rabs(Rational(tau.eval(q3->make(q({2, 4, 8})), pow2(-6)) - 8)), pow2(-6));
}

TEST(Point, HermPointIsAJointEigenvalue) {
  const RationalMatrix gen = RationalMatrix::diagonal(q({1, 2}));
  auto h = make_herm_space(CommutingAlgebra::create({gen}));
  const Element a = h->make(gen - make_rational(1, 2) * RationalMatrix::identity(2));
  Representation sigma = point_at(a);
  const Element g = h->make(gen);
  const Rational eps = pow2(-6);
  const Rational v = sigma.eval(g, eps);
  EXPECT_TRUE(rabs(Rational(v - 1)) <= eps || rabs(Rational(v - 2)) <= eps) << v;
  const Rational v2 = sigma.eval(g, pow2(-9));
  EXPECT_LE(rabs(Rational(v2 - v)), eps + pow2(-9));
}

TEST(Point, RejectsBelow) {
  auto q1 = make_qn_space(1);
  const Element a = q1->make(q({0}));
  EXPECT_THROW(point_new(a, pos_or_below(a, Rational(1))), PreconditionError);
}

TEST(Point, ProjectionOracleOnRandomQn) {
  Rng rng(79);
  const Rational eps = pow2(-8);
  for (int trial = 0; trial < 15; ++trial) {
    auto space = make_qn_space(2 + trial % 5);
    Element a = fixture::random_qn(rng, space);
    auto out = pos_or_below(a, make_rational(1, 2));
    if (!out.is_pos()) {
      a = a.unit();
      out = pos_or_below(a, make_rational(1, 2));
    }
    Representation sigma = point_new(a, out);
    std::vector<Element> probes;
    for (int k = 0; k < 12; ++k) probes.push_back(fixture::random_qn(rng, space));
    ASSERT_FALSE(matching_projections(sigma, probes, eps, eps).empty()) << trial;
  }
}

TEST(Point, RepresentationContract) {
  Rng rng(81);
  auto q4 = make_qn_space(4);
  auto pl = make_pl_space();
  const Rational eps = pow2(-7);
  for (int trial = 0; trial < 6; ++trial) {
    const bool use_pl = trial % 2 == 1;
    auto sample = [&] { return use_pl ? fixture::random_pl(rng, pl) : fixture::random_qn(rng, q4); };
    Element a = sample();
    auto out = pos_or_below(a, make_rational(1, 2));
    if (!out.is_pos()) {
      a = a.unit();
      out = pos_or_below(a, make_rational(1, 2));
    }
    Representation sigma = point_new(a, out);
    ASSERT_LE(rabs(Rational(sigma.eval(a.unit(), eps) - 1)), eps);
    for (int k = 0; k < 8; ++k) {
      const Element b = sample(), c = sample();
      const Rational lambda = random_rational(rng, 3, 2);
      const Rational sb = sigma.eval(b, eps), sc = sigma.eval(c, eps);
      ASSERT_LE(rabs(Rational(sigma.eval(b + c, eps) - sb - sc)), 4 * eps);
      ASSERT_LE(rabs(Rational(sigma.eval(b.join(c), eps) - rmax(sb, sc))), 4 * eps);
      ASSERT_LE(rabs(Rational(sigma.eval(lambda * b, eps) - lambda * sb)), (1 + rabs(lambda)) * eps * 2);
      // Refinement consistency.
      const Rational finer = sigma.eval(b, eps / 4);
      ASSERT_LE(rabs(Rational(finer - sb)), eps + eps / 4);
    }
  }
}

TEST(Point, DeterministicCaches) {
  auto pl = make_pl_space();
  Rng rng1(83), rng2(83);
  for (int trial = 0; trial < 3; ++trial) {
    const Element a1 = fixture::random_pl(rng1, pl).unit(), a2 = fixture::random_pl(rng2, pl).unit();
    Representation s1 = point_at(a1), s2 = point_at(a2);
    for (int k = 0; k < 5; ++k) {
      const Element b1 = fixture::random_pl(rng1, pl), b2 = fixture::random_pl(rng2, pl);
      ASSERT_EQ(s1.eval(b1, pow2(-6)), s2.eval(b2, pow2(-6)));
    }
    ASSERT_EQ(s1.cache_json().dump(), s2.cache_json().dump());
  }
}

TEST(PseudoDist, Examples) {
  auto q2 = make_qn_space(2);
  const Rational eps = pow2(-6);
  Representation p1 = point_at(q2->make(q({1, 0})));
  Representation p2 = point_at(q2->make(q({0, 1})));
  const std::vector<Element> as{q2->make(q({0, 1}))};
  EXPECT_LE(rabs(Rational(pseudo_dist(p1, p2, as, eps) - 1)), 2 * eps);
  EXPECT_LE(pseudo_dist(p1, p1, as, eps), 4 * eps);
  EXPECT_EQ(pseudo_dist(p1, p2, {}, eps), 0);
}

TEST(Net, QnExample) {
  auto q2 = make_qn_space(2);
  const Element a = q2->make(q({0, 1}));
  SpectrumNet net = epsilon_net({a}, make_rational(1, 4));
  bool hit0 = false, hit1 = false;
  for (auto& p : net.points) {
    const Rational v = p.eval(a, make_rational(1, 4));
    hit0 |= rabs(v) <= make_rational(1, 4);
    hit1 |= rabs(Rational(v - 1)) <= make_rational(1, 4);
  }
  EXPECT_TRUE(hit0);
  EXPECT_TRUE(hit1);
}

TEST(Net, SinglePointSpace) {
  auto q1 = make_qn_space(1);
  EXPECT_EQ(epsilon_net({q1->make(q({3}))}, make_rational(1, 8)).points.size(), 1U);
  EXPECT_TRUE(epsilon_net({}, make_rational(1, 8)).points.empty());
}

TEST(Net, HermJointEigenvalues) {
  const RationalMatrix ga = RationalMatrix::diagonal(q({1, 2})), gb = RationalMatrix::diagonal(q({3, 4}));
  auto h = make_herm_space(CommutingAlgebra::create({ga, gb}));
  const Element a = h->make(ga), b = h->make(gb);
  const Rational eps = make_rational(1, 8);
  SpectrumNet net = epsilon_net({a, b}, eps);
  bool first = false, second = false;
  for (auto& p : net.points) {
    const Rational va = p.eval(a, eps), vb = p.eval(b, eps);
    const bool near1 = rabs(Rational(va - 1)) <= eps && rabs(Rational(vb - 3)) <= eps;
    const bool near2 = rabs(Rational(va - 2)) <= eps && rabs(Rational(vb - 4)) <= eps;
    ASSERT_TRUE(near1 || near2) << va << " " << vb;
    first |= near1;
    second |= near2;
  }
  EXPECT_TRUE(first && second);
}

TEST(Net, ParallelMatchesReference) {
  Rng rng(85);
  auto q3 = make_qn_space(3);
  auto pl = make_pl_space();
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Element> as;
    // Small ranges keep the exhaustive reference product cheap.
    for (int k = 0; k < 2; ++k)
      as.push_back(trial % 2 == 0 ? q3->make(random_coords(rng, 3, 2, 2)) : pl->make(random_breakpoints(rng, 6, 2, 2)));
    const Rational eps = make_rational(1, 4);
    SpectrumNet fast = epsilon_net(as, eps);
    SpectrumNet ref = epsilon_net_reference(as, eps);
    ASSERT_EQ(fast.cells.size(), ref.cells.size());
    for (std::size_t k = 0; k < fast.cells.size(); ++k) ASSERT_EQ(fast.cells[k].index, ref.cells[k].index);
    ASSERT_EQ(net_json(fast).dump(), net_json(ref).dump());
  }
}

TEST(Net, CoversConstructedPoints) {
  // Every projection of Q^n is within eps of some net point on the covered elements.
  Rng rng(87);
  for (int trial = 0; trial < 5; ++trial) {
    auto space = make_qn_space(3 + trial % 3);
    std::vector<Element> as{fixture::random_qn(rng, space), fixture::random_qn(rng, space)};
    const Rational eps = make_rational(1, 4);
    SpectrumNet net = epsilon_net(as, eps);
    const auto evals = net_evaluations(net);
    for (std::size_t k = 0; k < space->size(); ++k) {
      bool covered = false;
      for (const auto& row : evals) {
        bool close = true;
        for (std::size_t i = 0; i < as.size(); ++i)
          if (rabs(Rational(row[i] - as[i].as<QnVec>().coords[k])) > eps) close = false;
        covered |= close;
      }
      ASSERT_TRUE(covered) << "projection " << k;
    }
  }
}

TEST(Net, Serialization) {
  auto q2 = make_qn_space(2);
  SpectrumNet net = epsilon_net({q2->make(q({0, 1}))}, make_rational(1, 4));
  const auto j = net_json(net);
  EXPECT_EQ(j.at("eps"), "1/4");
  EXPECT_EQ(j.at("points").size(), net.points.size());
  EXPECT_TRUE(j.at("points")[0].at("evals").contains("elem0"));
  const std::string csv = net_csv(net);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "point,element,value");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(net.points.size() + 1));
}

TEST(StoneYosida, Examples) {
  auto q2 = make_qn_space(2);
  const Rational eps = pow2(-6);
  const auto r = stone_yosida_check(q2->make(q({1, -3})), eps);
  EXPECT_EQ(r.norm_value, 3);
  EXPECT_LE(rabs(Rational(r.net_max - 3)), 3 * eps);
  const auto u = stone_yosida_check(q2->make(q({0, 0})).unit(), eps);
  EXPECT_LE(rabs(Rational(u.norm_value - 1)), 3 * eps);
  EXPECT_LE(rabs(Rational(u.net_max - 1)), 3 * eps);
  const RationalMatrix m(2, q({5, 3, 3, 5}));
  auto h = make_herm_space(CommutingAlgebra::create({m}));
  const auto hr = stone_yosida_check(h->make(m), eps);
  EXPECT_LE(rabs(Rational(hr.norm_value - 8)), eps);
  EXPECT_LE(rabs(Rational(hr.net_max - 8)), 3 * eps);
}
