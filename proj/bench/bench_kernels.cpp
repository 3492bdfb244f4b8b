// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "riesz/generators.hpp"
#include "riesz/instances.hpp"
#include "riesz/lattice.hpp"
#include "riesz/spectrum.hpp"

using namespace riesz;

namespace {

std::vector<Element> qn_inputs(std::size_t count) {
  Rng rng(5);
  auto space = make_qn_space(6);
  std::vector<Element> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(space->make(random_coords(rng, 6, 3, 2)));
  return out;
}

std::vector<Element> pl_inputs(std::size_t count) {
  Rng rng(6);
  auto space = make_pl_space();
  std::vector<Element> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(space->make(random_breakpoints(rng, 8, 3, 2)));
  return out;
}

std::vector<Element> herm_inputs() {
  Rng rng(7);
  const auto family = random_commuting_family(rng, 3, 2, SpectrumKind::any);
  auto space = make_herm_space(CommutingAlgebra::create(family.members));
  std::vector<Element> out;
  for (const auto& m : family.members) out.push_back(space->make(m));
  return out;
}

template <class Make>
void net_bench(benchmark::State& state, Make make, bool parallel) {
  const Rational eps = pow2(-static_cast<long>(state.range(0)));
  for (auto _ : state) {
    // Fresh inputs each time: herm spaces memoize joins.
    state.PauseTiming();
    const auto as = make();
    state.ResumeTiming();
    SpectrumNet net = parallel ? epsilon_net(as, eps) : epsilon_net_reference(as, eps);
    benchmark::DoNotOptimize(net.points.size());
  }
}

void BM_NetQn(benchmark::State& s) { net_bench(s, [] { return qn_inputs(2); }, true); }
void BM_NetQnReference(benchmark::State& s) { net_bench(s, [] { return qn_inputs(2); }, false); }
void BM_NetPL(benchmark::State& s) { net_bench(s, [] { return pl_inputs(2); }, true); }
void BM_NetPLReference(benchmark::State& s) { net_bench(s, [] { return pl_inputs(2); }, false); }
void BM_NetHerm(benchmark::State& s) { net_bench(s, herm_inputs, true); }
void BM_NetHermReference(benchmark::State& s) { net_bench(s, herm_inputs, false); }

void BM_PruneCover(benchmark::State& state) {
  const auto bs = pl_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prune_cover(bs, make_rational(1, 4)).size());
}

void BM_PruneCoverSerial(benchmark::State& state) {
  const auto bs = pl_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::size_t kept = 0;
    for (const auto& b : bs) kept += pos_or_below(b, make_rational(1, 4)).is_pos();
    benchmark::DoNotOptimize(kept);
  }
}

}  // namespace

BENCHMARK(BM_NetQn)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NetQnReference)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NetPL)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NetPLReference)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NetHerm)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NetHermReference)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PruneCover)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PruneCoverSerial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
