#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "catsp/grasp.hpp"
#include "catsp/history.hpp"
#include "catsp/rng.hpp"
#include "catsp/scoring.hpp"
#include "catsp/synthetic.hpp"

namespace {

using namespace catsp;

VectorField random_field(int steps) {
  Rng rng(1);
  std::vector<StepVector> v;
  v.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const Vec2 o{rng.uniform(0, 25000), rng.uniform(0, 25000)};
    const double a = std::sin(o.x / 4000.0);
    v.push_back({o, o + Vec2{200 * std::cos(a), 200 * std::sin(a)}});
  }
  return VectorField(std::move(v), kDefaultAlpha, kDefaultBeta, 47.62);
}

void BM_HeadingPruned(benchmark::State& state) {
  const VectorField f = random_field(static_cast<int>(state.range(0)));
  Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.heading({rng.uniform(0, 25000), rng.uniform(0, 25000)}));
  }
}
BENCHMARK(BM_HeadingPruned)->Arg(10000)->Arg(100000);

void BM_HeadingExhaustive(benchmark::State& state) {
  const VectorField f = random_field(static_cast<int>(state.range(0)));
  Rng rng(2);
  for (auto _ : state) {
    const Vec2 p{rng.uniform(0, 25000), rng.uniform(0, 25000)};
    Vec2 h;
    for (const auto& s : f.steps()) h += s.vec() * std::exp(-f.alpha() * distance(p, s.origin));
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_HeadingExhaustive)->Arg(10000)->Arg(100000);

void BM_BuildField(benchmark::State& state) {
  const SyntheticCase sc = generate_synthetic(1, 10, 3, DriverPolicy::sweep);
  for (auto _ : state) benchmark::DoNotOptimize(build_field(sc.histories));
}
BENCHMARK(BM_BuildField);

void BM_Vnd(benchmark::State& state) {
  const SyntheticCase sc = generate_synthetic(1, static_cast<int>(state.range(0)), 5, DriverPolicy::sweep);
  const RouteContext ctx = make_context(sc.instance);
  std::vector<int> order{0};
  for (const auto& m : ctx.zones.members) order.insert(order.end(), m.rbegin(), m.rend());
  order.push_back(0);
  for (auto _ : state) benchmark::DoNotOptimize(vnd(sc.instance.travel_time, order, ctx.zones.zone_of));
}
BENCHMARK(BM_Vnd)->Arg(5)->Arg(20);

void BM_Solve(benchmark::State& state) {
  const SyntheticCase sc = generate_synthetic(1, static_cast<int>(state.range(0)), 3, DriverPolicy::sweep);
  const VectorField field = build_field(sc.histories);
  const RouteContext ctx = make_context(sc.instance, &field);
  SearchConfig cfg;
  cfg.mode = Mode::dm();
  cfg.weights = Weights::dm();
  for (auto _ : state) benchmark::DoNotOptimize(solve(sc.instance, ctx, cfg));
}
BENCHMARK(BM_Solve)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Score(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  SquareMatrix t(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) t(i, j) = i == j ? 0.0 : rng.uniform(10, 500);
  std::vector<int> a(n + 1);
  std::iota(a.begin(), a.end(), 0);
  std::vector<int> b = a;
  rng.shuffle(std::span<int>(b).subspan(1));
  for (auto _ : state) benchmark::DoNotOptimize(score(a, b, t));
}
BENCHMARK(BM_Score)->Arg(30)->Arg(150);

}  // namespace

BENCHMARK_MAIN();
