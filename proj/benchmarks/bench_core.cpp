#include <benchmark/benchmark.h>

#include <random>

#include "xsmoo/exact.hpp"
#include "xsmoo/hashing.hpp"
#include "xsmoo/metrics.hpp"
#include "xsmoo/oracle.hpp"
#include "xsmoo/scenarios.hpp"
#include "xsmoo/solver.hpp"

using namespace xsmoo;

namespace {

// k = 2, n decisions, ysize latents per block, 3-literal clauses.
SmooProblem random_problem(std::size_t n, std::size_t ysize, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  VariableSpace s(n, {ysize, ysize});
  std::vector<Formula> objs;
  for (std::size_t i = 0; i < 2; ++i) {
    Formula f(s);
    for (std::size_t c = 0; c < ysize + 2; ++c) {
      f.add_clause({Lit(s.decision(rng() % n), rng() & 1), Lit(s.latent(i, rng() % ysize), rng() & 1),
                    Lit(s.latent(i, rng() % ysize), rng() & 1)});
    }
    objs.push_back(f);
  }
  return SmooProblem::unweighted(s, objs, Formula(s));
}

void BM_XorCounting(benchmark::State& state) {
  const auto bits = static_cast<std::size_t>(state.range(0));
  VariableSpace s(0, {bits});
  const Formula f(s);
  auto be = make_backend("cdcl");
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(xor_counting(f, 0, static_cast<int>(bits / 2), Assignment(0), *be, rng));
  }
}
BENCHMARK(BM_XorCounting)->Arg(8)->Arg(16)->Arg(32);

void BM_OracleQuery(benchmark::State& state) {
  const SmooProblem p = random_problem(4, 6, 2);
  auto be = make_backend("cdcl");
  OracleQuery q;
  q.exponents = {2, 2};
  q.strategy = state.range(0) == 0 ? OracleStrategy::Decomposed : OracleStrategy::Monolithic;
  // keep the monolithic variant affordable
  if (q.strategy == OracleStrategy::Monolithic) q.amplify.m_override = 31;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    q.seed = ++seed;
    benchmark::DoNotOptimize(xor_sat(p, q, *be).status);
  }
}
BENCHMARK(BM_OracleQuery)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_XorSmoo(benchmark::State& state) {
  const SmooProblem p = random_problem(static_cast<std::size_t>(state.range(0)), 5, 3);
  SolveConfig cfg;
  cfg.delta = 0.2;
  cfg.epsilon = 3;
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(xor_smoo(p, cfg).first.size());
  }
}
BENCHMARK(BM_XorSmoo)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ExactPareto(benchmark::State& state) {
  const SmooProblem p = random_problem(static_cast<std::size_t>(state.range(0)), 8, 4);
  for (auto _ : state) benchmark::DoNotOptimize(exact_pareto(p).size());
}
BENCHMARK(BM_ExactPareto)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_RoadSolve(benchmark::State& state) {
  GeneratorParams params;
  const GeneratedInstance g = generate_random_instance(Family::Road, params, 5);
  const SmooProblem p = encode_road_network(g.network, *g.events, 1000);
  SolveConfig cfg;
  cfg.T = 1;
  cfg.b = 2;
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(w_xor_smoo(p, cfg).first.size());
  }
}
BENCHMARK(BM_RoadSolve)->Unit(benchmark::kMillisecond);

void BM_Hypervolume(benchmark::State& state) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  PointSet pts;
  for (int i = 0; i < state.range(0); ++i) pts.push_back({u(rng), u(rng)});
  for (auto _ : state) benchmark::DoNotOptimize(hv(pts, {0, 0}));
}
BENCHMARK(BM_Hypervolume)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
