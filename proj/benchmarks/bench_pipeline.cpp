// Microbenchmarks for the stages of the identifiability pipeline: the
// transfer-function expansion (the O(T^2) step), the octic root solve
// (the precision-bound step), and the full analysis.
#include <benchmark/benchmark.h>

#include "foecm/gl_model.hpp"
#include "foecm/identifiability.hpp"
#include "foecm/poly.hpp"
#include "foecm/precision.hpp"
#include "foecm/spectra.hpp"

namespace {

using namespace foecm;

const ContextPtr& bench_context() {
  static const ContextPtr ctx = PrecisionContext::create(60, 500);
  return ctx;
}

// The published example cell; its sampling period solves the printed
// head coefficient g_{2T+1} = -1.2962.
ModelParams example_cell(const ContextPtr& ctx, int horizon) {
  ModelParams p;
  p.ctx = ctx;
  p.r_inf = Real("0.01");
  p.r1 = Real("0.2");
  p.c1 = Real(3);
  p.alpha1 = Real("0.8");
  p.c2 = Real(400);
  p.alpha2 = Real("0.5");
  p.ts = pow(Real("0.00228"), Real("1.25"));
  p.horizon = horizon;
  return p;
}

RealPoly example_octic(const ContextPtr& ctx, int horizon) {
  const IdentCoeffs heads =
      head_coeffs(expand_monic_tf(build_gl_series(example_cell(ctx, horizon))));
  const AlphaPolys polys = build_alpha_polys(heads);
  return build_octic(alpha1_as_rational(heads, polys, AlphaEquation::Order3),
                     alpha1_as_rational(heads, polys, AlphaEquation::Order4));
}

void BM_ExpandMonicTF(benchmark::State& state) {
  const ContextPtr& ctx = bench_context();
  ctx->activate();
  const ModelParams cell = example_cell(ctx, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    MonicTF tf = expand_monic_tf(build_gl_series(cell));
    benchmark::DoNotOptimize(tf);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExpandMonicTF)
    ->Arg(25)
    ->Arg(50)
    ->Arg(100)
    ->Arg(200)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNSquared);

void BM_OcticAssembly(benchmark::State& state) {
  const ContextPtr& ctx = bench_context();
  ctx->activate();
  const MonicTF tf = expand_monic_tf(build_gl_series(example_cell(ctx, 100)));
  for (auto _ : state) {
    const IdentCoeffs heads = head_coeffs(tf);
    const AlphaPolys polys = build_alpha_polys(heads);
    RealPoly octic =
        build_octic(alpha1_as_rational(heads, polys, AlphaEquation::Order3),
                    alpha1_as_rational(heads, polys, AlphaEquation::Order4));
    benchmark::DoNotOptimize(octic);
  }
}
BENCHMARK(BM_OcticAssembly)->Unit(benchmark::kMillisecond);

void BM_OcticRoots(benchmark::State& state) {
  const ContextPtr& ctx = bench_context();
  ctx->activate();
  const RealPoly octic = example_octic(ctx, 100);
  for (auto _ : state) {
    auto roots = find_roots(octic);
    benchmark::DoNotOptimize(roots);
  }
}
BENCHMARK(BM_OcticRoots)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
  const ContextPtr& ctx = bench_context();
  ctx->activate();
  const ModelParams cell = example_cell(ctx, static_cast<int>(state.range(0)));
  const MonicTF tf = expand_monic_tf(build_gl_series(cell));
  const AnalyzeOptions options = AnalyzeOptions::defaults(ctx);
  for (auto _ : state) {
    IdentifiabilityReport report = analyze(tf, cell.ts, options);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_Analyze)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ImpedanceGrid(benchmark::State& state) {
  const ContextPtr& ctx = bench_context();
  ctx->activate();
  const ModelParams cell = example_cell(ctx, 10);
  const std::vector<Real> grid =
      log_grid(Real("1e-3"), Real("1e4"), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto points = sweep_spectrum(cell, grid);
    benchmark::DoNotOptimize(points);
  }
}
BENCHMARK(BM_ImpedanceGrid)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
