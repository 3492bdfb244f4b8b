#include "riesz/spectrum.hpp"

#include <exception>
#include <sstream>

#include "riesz/errors.hpp"
#include "riesz/json_io.hpp"
#include "riesz/lattice.hpp"

namespace riesz {

PosOutcome PosOutcome::pos(Rational witness, Rational sup_upper) {
  PosOutcome out;
  out.kind = Kind::pos;
  out.witness = std::move(witness);
  out.sup_upper = std::move(sup_upper);
  return out;
}

PosOutcome PosOutcome::below(Rational bound, Rational sup_upper) {
  PosOutcome out;
  out.kind = Kind::below;
  out.bound = std::move(bound);
  out.sup_upper = std::move(sup_upper);
  return out;
}

PosOutcome pos_or_below(const Element& a, const Rational& r) {
  if (sgn(r) <= 0) throw PreconditionError("pos_or_below needs r > 0");
  const Rational s = a.sup_cut().approx(r / 4);
  if (s > r / 2) return PosOutcome::pos(Rational(s - r / 4), s);
  return PosOutcome::below(r, s);
}

Rational sup_approx_generic(const Element& a, const Rational& eps) {
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  Rational lo(-(unit_bound(-a) + 1));
  Rational hi(unit_bound(a) + 1);
  const Rational r = eps / 2;
  while (hi - lo > eps) {
    const Rational mid = (lo + hi) / 2;
    if (pos_or_below(a - mid, r).is_pos())
      lo = mid;
    else
      hi = mid + r / 2;
  }
  return simplest_between(lo, hi);
}

namespace {

/// A lower bound on sup y that is strict unless the cut is exact, plus the upper approximation used.
struct SupQuery {
  Rational upper;
  Rational lower;
};

SupQuery query_sup(const Element& y, const Rational& precision) {
  const LocatedCut cut = y.sup_cut();
  if (cut.exact_value()) return {*cut.exact_value(), *cut.exact_value()};
  try {
    const Rational s = cut.approx(precision);
    return {s, Rational(s - precision)};
  } catch (const UnknownAtTolerance& e) {
    throw MarginCollapse(std::string("point margin fell below the error floor: ") + e.what());
  }
}

}  // namespace

Representation::Representation(SpacePtr space, PointState state) : space_(std::move(space)), state_(std::move(state)) {}

Rational Representation::eval(const Element& b, const Rational& eps) {
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  if (b.space_ptr() != space_) throw CrossSpaceError();
  const std::string key = b.key();
  auto hit = cache_.find(key);
  if (hit != cache_.end()) {
    for (const auto& [level, value] : hit->second)
      if (level <= eps) return value;
  }

  auto [p, q] = range_bounds(b);
  const Grid grid = Grid::make(p, q, eps);
  const Element& current = *state_.meet_element;
  const unsigned depth = std::max(1U, ceil_log2(Rational(static_cast<long>(grid.count))));
  const Rational precision = rmin(state_.margin, Rational(eps / 4)) / Rational(8 * static_cast<long>(depth));

  auto candidate = [&](std::size_t i, std::size_t j) {
    return current.meet(in_interval(b, grid.cell(i).lo, grid.cell(j).hi));
  };

  std::size_t i = 0;
  std::size_t j = grid.count - 1;
  std::optional<Element> chosen;
  SupQuery chosen_sup;
  if (i == j) {
    chosen = candidate(i, j);
    chosen_sup = query_sup(*chosen, precision);
  }
  while (i < j) {
    const std::size_t m = i + (j - i) / 2;
    Element left = candidate(i, m);
    Element right = candidate(m + 1, j);
    SupQuery sl = query_sup(left, precision);
    SupQuery sr = query_sup(right, precision);
    if (sl.upper >= sr.upper) {
      j = m;
      chosen = std::move(left);
      chosen_sup = std::move(sl);
    } else {
      i = m + 1;
      chosen = std::move(right);
      chosen_sup = std::move(sr);
    }
  }
  if (sgn(chosen_sup.lower) <= 0) throw MarginCollapse("no grid cell keeps the point's constraints positive");

  const RatInterval cell = grid.cell(i);
  state_.constraints.push_back({b, cell});
  state_.meet_element = std::move(chosen);
  state_.margin = chosen_sup.lower;
  const Rational value = cell.midpoint();
  cache_[key].emplace_back(eps, value);
  log_.push_back({{"key", key}, {"eps", rational_json(eps)}, {"value", rational_json(value)}});
  return value;
}

void Representation::record(const Element& b, const RatInterval& cell, const Rational& eps) {
  if (b.space_ptr() != space_) throw CrossSpaceError();
  if (cell.width() > eps) throw PreconditionError("recorded cell is wider than its precision");
  const std::string key = b.key();
  const Rational value = cell.midpoint();
  state_.constraints.push_back({b, cell});
  cache_[key].emplace_back(eps, value);
  log_.push_back({{"key", key}, {"eps", rational_json(eps)}, {"value", rational_json(value)}});
}

nlohmann::json Representation::cache_json() const { return log_; }

Representation point_new(const Element& a, const PosOutcome& outcome) {
  if (!outcome.is_pos()) throw PreconditionError("point_new needs a Pos outcome");
  const Rational& w = outcome.witness;
  if (sgn(w) <= 0) throw PreconditionError("Pos witness must be positive");
  const Rational upper(unit_bound(a) + 1);
  Element meet = in_interval(a, Rational(w / 2), upper);
  const Rational precision = rmin(w, Rational(1)) / 8;
  const SupQuery s = query_sup(meet, precision);
  if (sgn(s.lower) <= 0) throw MarginCollapse("initial constraint is not certified positive");
  PointState state;
  state.constraints.push_back({a, RatInterval::make(Rational(w / 2), upper)});
  state.margin = s.lower;
  state.meet_element = std::move(meet);
  return Representation(a.space_ptr(), std::move(state));
}

Rational point_eval(Representation& sigma, const Element& b, const Rational& eps) { return sigma.eval(b, eps); }

Rational pseudo_dist(Representation& sigma, Representation& tau, const std::vector<Element>& as, const Rational& eps) {
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  std::size_t last = 0;  // smallest N with 2^(1-N) <= eps
  while (pow2(1 - static_cast<long>(last)) > eps) ++last;
  Rational total(0);
  for (std::size_t n = 0; n < as.size() && n <= last; ++n)
    total += pow2(-static_cast<long>(n)) * rabs(Rational(sigma.eval(as[n], eps) - tau.eval(as[n], eps)));
  return total;
}

Rational net_threshold(const Rational& eps) { return eps / 8; }

namespace {

struct ElementGrid {
  Element element;
  std::vector<RatInterval> cells;
};

std::vector<ElementGrid> build_grids(const std::vector<Element>& as, const Rational& eps) {
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  std::vector<ElementGrid> grids;
  for (const auto& a : as) {
    if (!grids.empty()) require_same_space(grids.front().element, a);
    auto [p, q] = range_bounds(a);
    grids.push_back({a, grid_cells(p, q, eps)});
  }
  return grids;
}

struct Survivor {
  std::vector<std::size_t> index;
  Element meet;
  PosOutcome outcome;
};

template <class F>
void parallel_indexed(std::size_t count, F body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < count; ++k) {
    try {
      body(k);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// One point per surviving cell; the point lies in its cell, which seeds its cache.
SpectrumNet finish_net(const std::vector<ElementGrid>& grids, const std::vector<Element>& as, const Rational& eps,
                       std::vector<Survivor> survivors, bool parallel) {
  SpectrumNet net{eps, as, {}, {}};
  std::vector<std::optional<Representation>> points(survivors.size());
  auto build = [&](std::size_t k) {
    points[k] = point_new(survivors[k].meet, survivors[k].outcome);
    for (std::size_t i = 0; i < grids.size(); ++i)
      points[k]->record(grids[i].element, grids[i].cells[survivors[k].index[i]], eps);
  };
  if (parallel) {
    parallel_indexed(survivors.size(), build);
  } else {
    for (std::size_t k = 0; k < survivors.size(); ++k) build(k);
  }
  for (std::size_t k = 0; k < survivors.size(); ++k) {
    net.cells.push_back({std::move(survivors[k].index), std::move(survivors[k].meet)});
    net.points.push_back(std::move(*points[k]));
  }
  return net;
}

/// Appends the surviving cells of grid g below `partial`, in cell order. A block of
/// cells is dropped at once when its span is already Below.
void prune_blocks(const std::optional<Element>& partial, const std::vector<std::size_t>& index, const ElementGrid& g,
                  std::size_t i, std::size_t j, const Rational& r, std::vector<Survivor>& out) {
  Element span = in_interval(g.element, g.cells[i].lo, g.cells[j].hi);
  if (partial) span = partial->meet(span);
  PosOutcome outcome = pos_or_below(span, r);
  if (!outcome.is_pos()) return;
  if (i == j) {
    std::vector<std::size_t> next = index;
    next.push_back(i);
    out.push_back({std::move(next), std::move(span), std::move(outcome)});
    return;
  }
  const std::size_t m = i + (j - i) / 2;
  prune_blocks(partial, index, g, i, m, r, out);
  prune_blocks(partial, index, g, m + 1, j, r, out);
}

}  // namespace

SpectrumNet epsilon_net(const std::vector<Element>& as, const Rational& eps) {
  const std::vector<ElementGrid> grids = build_grids(as, eps);
  if (grids.empty()) return SpectrumNet{eps, as, {}, {}};
  const Rational r = net_threshold(eps);

  struct Partial {
    std::vector<std::size_t> index;
    std::optional<Element> meet;
  };
  std::vector<Partial> partials{{{}, std::nullopt}};
  std::vector<Survivor> survivors;
  for (const auto& g : grids) {
    // work items: (partial, contiguous chunk of cells)
    const std::size_t chunk = std::max<std::size_t>(1, g.cells.size() / 32);
    const std::size_t chunks = (g.cells.size() + chunk - 1) / chunk;
    std::vector<std::vector<Survivor>> found(partials.size() * chunks);
    parallel_indexed(found.size(), [&](std::size_t w) {
      const Partial& part = partials[w / chunks];
      const std::size_t lo = (w % chunks) * chunk;
      const std::size_t hi = std::min(g.cells.size(), lo + chunk) - 1;
      prune_blocks(part.meet, part.index, g, lo, hi, r, found[w]);
    });
    survivors.clear();
    for (auto& list : found)
      for (auto& s : list) survivors.push_back(std::move(s));
    partials.clear();
    for (const auto& s : survivors) partials.push_back({s.index, s.meet});
  }
  return finish_net(grids, as, eps, std::move(survivors), true);
}

SpectrumNet epsilon_net_reference(const std::vector<Element>& as, const Rational& eps) {
  const std::vector<ElementGrid> grids = build_grids(as, eps);
  if (grids.empty()) return SpectrumNet{eps, as, {}, {}};
  const Rational r = net_threshold(eps);

  std::vector<Survivor> survivors;
  std::vector<std::size_t> index(grids.size(), 0);
  while (true) {
    std::optional<Element> meet;
    for (std::size_t i = 0; i < grids.size(); ++i) {
      const RatInterval& cell = grids[i].cells[index[i]];
      Element c = in_interval(grids[i].element, cell.lo, cell.hi);
      meet = meet ? meet->meet(c) : c;
    }
    PosOutcome outcome = pos_or_below(*meet, r);
    if (outcome.is_pos()) survivors.push_back({index, *meet, std::move(outcome)});
    std::size_t pos = grids.size();
    while (pos > 0) {
      --pos;
      if (++index[pos] < grids[pos].cells.size()) break;
      index[pos] = 0;
      if (pos == 0) return finish_net(grids, as, eps, std::move(survivors), false);
    }
  }
}

std::vector<std::vector<Rational>> net_evaluations(SpectrumNet& net) {
  std::vector<std::vector<Rational>> out(net.points.size(), std::vector<Rational>(net.covered.size()));
  parallel_indexed(net.points.size(), [&](std::size_t i) {
    for (std::size_t k = 0; k < net.covered.size(); ++k) out[i][k] = net.points[i].eval(net.covered[k], net.eps);
  });
  return out;
}

nlohmann::json net_json(SpectrumNet& net) {
  const auto evals = net_evaluations(net);
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < evals.size(); ++i) {
    nlohmann::json row = nlohmann::json::object();
    for (std::size_t k = 0; k < evals[i].size(); ++k) row["elem" + std::to_string(k)] = rational_json(evals[i][k]);
    points.push_back({{"id", i}, {"evals", row}});
  }
  return {{"eps", rational_json(net.eps)}, {"points", points}};
}

std::string net_csv(SpectrumNet& net) {
  const auto evals = net_evaluations(net);
  std::ostringstream out;
  out << "point,element,value\n";
  for (std::size_t i = 0; i < evals.size(); ++i)
    for (std::size_t k = 0; k < evals[i].size(); ++k) out << i << ",elem" << k << "," << to_string(evals[i][k]) << "\n";
  return out.str();
}

StoneYosida stone_yosida_check(const Element& a, const Rational& eps) {
  StoneYosida out;
  out.norm_value = norm_cut(a).approx(eps);
  SpectrumNet net = epsilon_net({a}, eps);
  out.points = net.points.size();
  out.net_max = 0;
  for (const auto& row : net_evaluations(net)) out.net_max = rmax(out.net_max, rabs(row.front()));
  return out;
}

}  // namespace riesz
