#include <benchmark/benchmark.h>

#include "lw/gallery.hpp"
#include "lw/geometry.hpp"
#include "lw/verify.hpp"
#include "lw/weierstrass.hpp"
#include "lw/worldsheet.hpp"

namespace {

void BM_ExprParse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(lw::Expr::parse("sin(u)/(-1+cos(u)) + exp(-u)*u^3"));
  }
}
BENCHMARK(BM_ExprParse);

void BM_ExprEval(benchmark::State& state) {
  lw::Expr e = lw::Expr::parse("sin(u)/(-1+cos(u)) + exp(-u)*u^3");
  double t = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.eval(t));
    t += 1e-6;
  }
}
BENCHMARK(BM_ExprEval);

void BM_ExprDifferentiate(benchmark::State& state) {
  lw::Expr e = lw::Expr::parse("sin(u)/(-1+cos(u)) + exp(-u)*u^3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.differentiate());
  }
}
BENCHMARK(BM_ExprDifferentiate);

void BM_IntegrateSurface(benchmark::State& state) {
  const auto& entry = lw::gallery::get("catenoid_spacelike");
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(entry.build(n, n));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_IntegrateSurface)->Arg(65)->Arg(129)->Arg(257);

void BM_CurvatureSweep(benchmark::State& state) {
  const auto& entry = lw::gallery::get("enneper_plus");
  int n = static_cast<int>(state.range(0));
  lw::SurfaceGrid g = entry.build(n, n);
  lw::AnalyzerOptions opt;
  opt.richardson = true;
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 1; i + 1 < g.nu; ++i) {
      for (int j = 1; j + 1 < g.nv; ++j) {
        acc += lw::gaussian_curvature(g, i, j, opt);
      }
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * (n - 2) * (n - 2));
}
BENCHMARK(BM_CurvatureSweep)->Arg(65)->Arg(129);

void BM_GaussCodazziStats(benchmark::State& state) {
  lw::SurfaceGrid g = lw::gallery::get("enneper_plus").build(65, 65);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lw::gauss_codazzi_stats(g));
  }
}
BENCHMARK(BM_GaussCodazziStats);

void BM_LaxFrame(benchmark::State& state) {
  const auto& entry = lw::gallery::get("enneper_plus");
  lw::LaxFields fields = lw::lax_fields_from_data(entry.data);
  lw::Mat2R phi0 = lw::frame_from_data(entry.data, -0.5, -0.5);
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lw::integrate_lax_frame(fields, phi0, lw::Rect{-0.5, 0.5, -0.5, 0.5}, n, n));
  }
}
BENCHMARK(BM_LaxFrame)->Arg(65)->Arg(129);

void BM_NambuGotoAction(benchmark::State& state) {
  lw::SurfaceGrid g = lw::gallery::get("enneper_plus").build(129, 129);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lw::nambu_goto_action(g, 1.0));
  }
}
BENCHMARK(BM_NambuGotoAction);

}  // namespace

BENCHMARK_MAIN();
