#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "stripnls/kernels.hpp"

namespace {

using stripnls::complexd;
namespace k = stripnls::kernels;

std::vector<complexd> random_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<complexd> v(n);
  for (complexd& z : v) z = complexd(gauss(rng), gauss(rng));
  return v;
}

void bench_nonlinearity(benchmark::State& state, k::Exec ex) {
  const std::size_t n = std::size_t(state.range(0));
  const std::vector<complexd> u = random_field(n, 7);
  std::vector<complexd> out(n);
  for (auto _ : state) {
    k::power_nonlinearity(u, -1.0, 3.0, out, ex);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}

void bench_weighted_sumsq(benchmark::State& state, k::Exec ex) {
  const std::size_t n = std::size_t(state.range(0));
  const std::vector<complexd> u = random_field(n, 11);
  std::vector<double> w(n, 1.25);
  for (auto _ : state) {
    double r = k::weighted_sumsq(u, w, ex);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}

void bench_phase_exp(benchmark::State& state, k::Exec ex) {
  const std::size_t n = std::size_t(state.range(0));
  const std::vector<complexd> u = random_field(n, 13);
  std::vector<double> omega(n);
  for (std::size_t q = 0; q < n; ++q) omega[q] = 0.01 * double(q % 977);
  std::vector<complexd> out(n);
  for (auto _ : state) {
    k::phase_exp_multiply(u, omega, 0.37, out, ex);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}

void reg(const char* name, void (*fn)(benchmark::State&, k::Exec), k::Exec ex) {
  benchmark::RegisterBenchmark(name, fn, ex)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
}

}  // namespace

int main(int argc, char** argv) {
  reg("nonlinearity/serial", bench_nonlinearity, k::Exec::serial);
  reg("nonlinearity/openmp", bench_nonlinearity, k::Exec::openmp);
  reg("weighted_sumsq/serial", bench_weighted_sumsq, k::Exec::serial);
  reg("weighted_sumsq/openmp", bench_weighted_sumsq, k::Exec::openmp);
  reg("phase_exp/serial", bench_phase_exp, k::Exec::serial);
  reg("phase_exp/openmp", bench_phase_exp, k::Exec::openmp);
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
