// Serial reference vs OpenMP kernels on (2, 2, d, d) operators.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "boundkey/kernels.hpp"

namespace {

using boundkey::kernels::Complex;
namespace ks = boundkey::kernels::serial;
namespace kp = boundkey::kernels::parallel;

std::vector<Complex> random_buffer(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

std::vector<int> key_dims(int d) { return {2, 2, d, d}; }

template <bool Parallel>
void BM_kron(benchmark::State& state) {
  const long a_side = 4;
  const long b_side = state.range(0) * state.range(0);
  const auto a = random_buffer(static_cast<std::size_t>(a_side * a_side), 1);
  const auto b = random_buffer(static_cast<std::size_t>(b_side * b_side), 2);
  std::vector<Complex> out(static_cast<std::size_t>(a_side * b_side * a_side * b_side));
  for (auto _ : state) {
    if constexpr (Parallel) kp::kron(a, a_side, b, b_side, out);
    else ks::kron(a, a_side, b, b_side, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_partial_transpose(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const long side = 4L * d * d;
  const auto in = random_buffer(static_cast<std::size_t>(side * side), 3);
  std::vector<Complex> out(in.size());
  const std::vector<bool> sel{false, true, false, true};
  for (auto _ : state) {
    if constexpr (Parallel) kp::partial_transpose(in, key_dims(d), sel, out);
    else ks::partial_transpose(in, key_dims(d), sel, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_partial_trace(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const long side = 4L * d * d;
  const auto in = random_buffer(static_cast<std::size_t>(side * side), 4);
  std::vector<Complex> out(static_cast<std::size_t>(4 * d * 4 * d));
  const std::vector<bool> sel{false, false, true, false};
  for (auto _ : state) {
    if constexpr (Parallel) kp::partial_trace(in, key_dims(d), sel, out);
    else ks::partial_trace(in, key_dims(d), sel, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_conjugate_blocks(benchmark::State& state) {
  const long bs = state.range(0) * state.range(0);
  const long side = 4 * bs;
  const auto in = random_buffer(static_cast<std::size_t>(side * side), 5);
  std::vector<std::vector<Complex>> us;
  for (unsigned k = 0; k < 4; ++k) us.push_back(random_buffer(static_cast<std::size_t>(bs * bs), 10 + k));
  std::vector<std::span<const Complex>> views(us.begin(), us.end());
  std::vector<Complex> out(in.size());
  for (auto _ : state) {
    if constexpr (Parallel) kp::conjugate_blocks(in, 4, bs, views, out);
    else ks::conjugate_blocks(in, 4, bs, views, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_kron<false>)->Arg(4)->Arg(8)->Arg(12)->Name("kron/serial");
BENCHMARK(BM_kron<true>)->Arg(4)->Arg(8)->Arg(12)->Name("kron/parallel");
BENCHMARK(BM_partial_transpose<false>)->Arg(4)->Arg(8)->Arg(12)->Name("partial_transpose/serial");
BENCHMARK(BM_partial_transpose<true>)->Arg(4)->Arg(8)->Arg(12)->Name("partial_transpose/parallel");
BENCHMARK(BM_partial_trace<false>)->Arg(4)->Arg(8)->Arg(12)->Name("partial_trace/serial");
BENCHMARK(BM_partial_trace<true>)->Arg(4)->Arg(8)->Arg(12)->Name("partial_trace/parallel");
BENCHMARK(BM_conjugate_blocks<false>)->Arg(4)->Arg(8)->Name("conjugate_blocks/serial");
BENCHMARK(BM_conjugate_blocks<true>)->Arg(4)->Arg(8)->Name("conjugate_blocks/parallel");

BENCHMARK_MAIN();
