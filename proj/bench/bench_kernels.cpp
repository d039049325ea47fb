#include <benchmark/benchmark.h>

#include "lfom/fom.hpp"
#include "lfom/io.hpp"
#include "lfom/oracle.hpp"

namespace {

const lfom::Layout& office() {
  static const lfom::Layout l = lfom::load_layout_file(LAYOUTFOM_DATA_DIR "/office.json");
  return l;
}

const lfom::ScenarioParams& params() {
  static const lfom::ScenarioParams p(lfom::load_preset("1ghz-100"));
  return p;
}

lfom::GridOptions grid_opts(int workers) {
  lfom::GridOptions g;
  g.resolution = 1.0;
  g.workers = workers;
  return g;
}

void BM_GridSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lfom::evaluate_grid_serial(office(), params(), grid_opts(1)));
}
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);

void BM_GridOpenMP(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        lfom::evaluate_grid(office(), params(), grid_opts(static_cast<int>(st.range(0)))));
  }
}
BENCHMARK(BM_GridOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

lfom::McSpec mc_spec(int workers) {
  lfom::McSpec s;
  s.samples = 1'000'000;
  s.workers = workers;
  return s;
}

void BM_McSerial(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(lfom::mc_point_serial(office(), {35.0, 5.0}, params(), mc_spec(1)));
  }
}
BENCHMARK(BM_McSerial)->Unit(benchmark::kMillisecond);

void BM_McOpenMP(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        lfom::mc_point(office(), {35.0, 5.0}, params(), mc_spec(static_cast<int>(st.range(0)))));
  }
}
BENCHMARK(BM_McOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ClosedFormPoint(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lfom::evaluate_point(office(), {35.0, 5.0}, params()));
}
BENCHMARK(BM_ClosedFormPoint)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
