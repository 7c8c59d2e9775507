// Serial reference against the OpenMP kernel on the two standard orbits.

#include "retset/constructions.hpp"
#include "retset/orbit_scan.hpp"

#include <benchmark/benchmark.h>

using namespace retset;

namespace {

struct TorusCase {
  GroupConfig cfg = torus_config(5);
  AmbientGroup G = cfg.group();
  PolySystem V = torus_hyperplane(cfg);
};

struct CurveCase {
  GroupConfig cfg = curve_pair_config(5, 0, 1);
  AmbientGroup G = cfg.group();
  PolySystem V = segre_hyperplane(cfg.coeffs);
};

template <bool Parallel>
void torus_exact(benchmark::State& state) {
  static const TorusCase c;
  ScanOptions opt;
  opt.mode = Mode::Exact;
  const auto hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? scan_parallel(c.G, *c.cfg.point, c.V, 0, hi, opt) : scan_serial(c.G, *c.cfg.point, c.V, 0, hi, opt);
    benchmark::DoNotOptimize(r.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hi + 1));
}

template <bool Parallel>
void curve_monte_carlo(benchmark::State& state) {
  static const CurveCase c;
  ScanOptions opt;
  opt.mode = Mode::MonteCarlo;
  opt.chunk = 512;
  const auto hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? scan_parallel(c.G, *c.cfg.point, c.V, 1, hi, opt) : scan_serial(c.G, *c.cfg.point, c.V, 1, hi, opt);
    benchmark::DoNotOptimize(r.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hi));
}

}  // namespace

BENCHMARK(torus_exact<false>)->Name("torus_exact/serial")->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(torus_exact<true>)->Name("torus_exact/parallel")->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(curve_monte_carlo<false>)->Name("curve_monte_carlo/serial")->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(curve_monte_carlo<true>)->Name("curve_monte_carlo/parallel")->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
