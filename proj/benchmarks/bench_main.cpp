#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "accrit/analyzer.hpp"
#include "accrit/extension.hpp"
#include "accrit/generators.hpp"
#include "accrit/metric.hpp"
#include "accrit/zigzag.hpp"

using namespace accrit;

namespace {

ExtensionField make_field(std::size_t support_size) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  auto space = MetricSpace::euclidean(2);
  std::vector<Point> pts;
  std::vector<double> values;
  for (std::size_t i = 0; i < support_size; ++i) {
    pts.push_back({coord(rng), coord(rng)});
    values.push_back(val(rng));
  }
  PartialLipschitzFunction f(space, pts, values);
  const double constant = infer_constant(f) * 1.2 + 0.1;
  return ExtensionField(std::move(f), constant);
}

void BM_EnvelopeUpper(benchmark::State& state) {
  auto field = make_field(std::size_t(state.range(0)));
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (auto _ : state) {
    Point q{coord(rng), coord(rng)};
    benchmark::DoNotOptimize(field.upper(q));
  }
}
BENCHMARK(BM_EnvelopeUpper)->Arg(8)->Arg(64)->Arg(512);

void BM_Zigzag(benchmark::State& state) {
  auto curve = identity_curve(std::size_t(state.range(0)));
  auto empty = PartialLipschitzFunction::empty(curve.space());
  for (auto _ : state) {
    benchmark::DoNotOptimize(zigzag(curve, empty, 1.0));
  }
}
BENCHMARK(BM_Zigzag)->Arg(101)->Arg(1001);

void BM_ModulusExact(benchmark::State& state) {
  auto curve = random_walk_curve(3, std::size_t(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ac_modulus(curve, 0.1, SearchMode::Exact));
  }
}
BENCHMARK(BM_ModulusExact)->Arg(201)->Arg(1001);

void BM_ModulusGreedy(benchmark::State& state) {
  auto curve = cantor_curve(unsigned(state.range(0)), 24);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ac_modulus(curve, 0.5, SearchMode::Greedy));
  }
}
BENCHMARK(BM_ModulusGreedy)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
