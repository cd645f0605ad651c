#include <benchmark/benchmark.h>

#include <random>

#include "stagecert/seminorm.hpp"

using namespace stagecert;
namespace k = stagecert::kernels;

namespace {

const GramModel& model(const char* name) {
  static const GramModel small = build_gram_model(GrowthSequence::preset("desk-small"), 1);
  static const GramModel medium = build_gram_model(GrowthSequence::preset("desk-medium"), 1);
  return std::string(name) == "desk-small" ? small : medium;
}

const char* preset(const benchmark::State& st) { return st.range(0) == 0 ? "desk-small" : "desk-medium"; }

RVec random_coords(std::size_t d) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  RVec x(d);
  for (auto& v : x) v = Rational(BigInt(num(rng)), BigInt(den(rng)));
  return x;
}

template <k::Backend B>
void BM_Gram(benchmark::State& st) {
  const GramModel& m = model(preset(st));
  for (auto _ : st) benchmark::DoNotOptimize(k::gram(m.input, B));
  st.SetLabel(preset(st));
}

template <k::Backend B>
void BM_GramTruncated(benchmark::State& st) {
  const GramModel& m = model(preset(st));
  for (auto _ : st) benchmark::DoNotOptimize(k::gram_truncated(m.input, 8, B));
  st.SetLabel(preset(st));
}

template <k::Backend B>
void BM_Enumerate(benchmark::State& st) {
  const GramModel& m = model(preset(st));
  const RVec x = random_coords(m.input.dim());
  for (auto _ : st) benchmark::DoNotOptimize(k::enumerate_by_degree(m.input, x, 8, B));
  st.SetLabel(preset(st));
}

template <k::Backend B>
void BM_Lagrange(benchmark::State& st) {
  const long d = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(k::lagrange_coefficients(3, d, B));
}

}  // namespace

BENCHMARK(BM_Gram<k::Backend::Serial>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gram<k::Backend::Parallel>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramTruncated<k::Backend::Serial>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramTruncated<k::Backend::Parallel>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate<k::Backend::Serial>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate<k::Backend::Parallel>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lagrange<k::Backend::Serial>)->Arg(37)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lagrange<k::Backend::Parallel>)->Arg(37)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
