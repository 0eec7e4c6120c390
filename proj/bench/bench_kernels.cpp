#include "coxlim/dominance.hpp"
#include "coxlim/kernels.hpp"
#include "coxlim/limits.hpp"
#include "coxlim/roots.hpp"

#include <map>

#include <benchmark/benchmark.h>

using namespace coxlim;

namespace {

const CoxeterDatum& triangle() {
  static const CoxeterDatum d = parse_datum("rank 3\nbond 0 1 inf -1.01\nbond 1 2 inf -1.01\nbond 0 2 inf -1.01\n");
  return d;
}

const RootSlice& slice(int depth) {
  static std::map<int, RootSlice> cache;
  auto it = cache.find(depth);
  if (it == cache.end()) it = cache.emplace(depth, generate_roots(triangle(), depth)).first;
  return it->second;
}

kernels::Exec exec_of(const benchmark::State& s) {
  return s.range(1) ? kernels::Exec::parallel : kernels::Exec::serial;
}

void label(benchmark::State& s) { s.SetLabel(s.range(1) ? "omp" : "serial"); }

void BM_expand_frontier(benchmark::State& s) {
  const RootSlice& sl = slice(static_cast<int>(s.range(0)));
  const Mat x = sl.coord_matrix();
  for (auto _ : s) benchmark::DoNotOptimize(kernels::expand_frontier(exec_of(s), triangle().gram(), x, 1e-9));
  s.SetItemsProcessed(s.iterations() * x.cols());
  label(s);
}

void BM_pairwise_form(benchmark::State& s) {
  const Mat x = slice(static_cast<int>(s.range(0))).coord_matrix();
  for (auto _ : s) benchmark::DoNotOptimize(kernels::pairwise_form(exec_of(s), triangle().gram(), x, x));
  s.SetItemsProcessed(s.iterations() * x.cols() * x.cols());
  label(s);
}

void BM_negative_sets(benchmark::State& s) {
  static const OrbitBall ball(triangle(), 10);
  const Mat x = slice(static_cast<int>(s.range(0))).coord_matrix();
  for (auto _ : s) benchmark::DoNotOptimize(kernels::negative_sets(exec_of(s), ball.elements(), x));
  s.SetItemsProcessed(s.iterations() * x.cols() * static_cast<long>(ball.size()));
  label(s);
}

void BM_isotropic_hits(benchmark::State& s) {
  const RootSlice& sl = slice(static_cast<int>(s.range(0)));
  Mat p(3, static_cast<Eigen::Index>(sl.size())), x = p;
  for (std::size_t i = 0; i < sl.size(); ++i) {
    const long par = sl.parent(i);
    x.col(i) = normalize(sl[i].coords);
    p.col(i) = par < 0 ? Vec(Vec::Constant(3, 1.0 / 3)) : normalize(sl[par].coords);
  }
  for (auto _ : s) benchmark::DoNotOptimize(kernels::isotropic_hits(exec_of(s), triangle().gram(), p, x, 1e-10));
  s.SetItemsProcessed(s.iterations() * x.cols());
  label(s);
}

void BM_generate_roots(benchmark::State& s) {
  RootOptions opt;
  opt.exec = exec_of(s);
  for (auto _ : s) benchmark::DoNotOptimize(generate_roots(triangle(), static_cast<int>(s.range(0)), opt));
  label(s);
}

}  // namespace

BENCHMARK(BM_expand_frontier)->ArgsProduct({{12, 15}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_pairwise_form)->ArgsProduct({{7, 9}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_negative_sets)->ArgsProduct({{5, 7}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_isotropic_hits)->ArgsProduct({{12, 15}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_generate_roots)->ArgsProduct({{12}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
