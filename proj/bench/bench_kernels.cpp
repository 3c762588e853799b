// Serial reference kernels against the OpenMP versions.
// Set OMP_NUM_THREADS to compare thread counts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ferro/energy.hpp"
#include "ferro/grid.hpp"
#include "ferro/kernels.hpp"
#include "ferro/profile.hpp"

namespace {

using namespace ferro;

std::vector<double> sample_profile(const Grid& g) {
  std::vector<double> u(g.n() + 1);
  for (int i = 0; i <= g.n(); ++i) {
    const double t = g.nodes()[i];
    u[i] = 2 * t + 0.1 * std::sin(3 * t);
  }
  return u;
}

template <bool Parallel>
void BM_Residual(benchmark::State& st) {
  const Grid g(static_cast<int>(st.range(0)));
  const auto u = sample_profile(g);
  std::vector<double> out(u.size());
  for (auto _ : st) {
    if constexpr (Parallel) {
      kernels::el_residual(g, u, 7.0, out, 0, g.n());
    } else {
      kernels::serial::el_residual(g, u, 7.0, out, 0, g.n());
    }
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_Energy(benchmark::State& st) {
  const Grid g(static_cast<int>(st.range(0)));
  const auto u = sample_profile(g);
  for (auto _ : st) {
    double e = 0;
    if constexpr (Parallel) {
      e = kernels::dirichlet_energy(g, u) + kernels::potential_energy(g, u, 7.0);
    } else {
      e = kernels::serial::dirichlet_energy(g, u) + kernels::serial::potential_energy(g, u, 7.0);
    }
    benchmark::DoNotOptimize(e);
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_Bisection(benchmark::State& st) {
  const GridPtr g = make_grid(static_cast<int>(st.range(0)));
  const TridiagonalOperator op =
      assemble_second_variation(double_angle(g), EnergyParams(4.0));
  const auto off = op.symmetric_offdiag();
  std::vector<double> off_sq(off.size());
  for (std::size_t i = 0; i < off.size(); ++i) off_sq[i] = off[i] * off[i];
  const auto [lo, hi] = op.gershgorin();
  std::vector<double> out(8);
  for (auto _ : st) {
    if constexpr (Parallel) {
      kernels::bisect_eigenvalues(op.diag, off_sq, lo, hi, 0, out);
    } else {
      kernels::serial::bisect_eigenvalues(op.diag, off_sq, lo, hi, 0, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_Residual<false>)->RangeMultiplier(4)->Range(1024, 1 << 18);
BENCHMARK(BM_Residual<true>)->RangeMultiplier(4)->Range(1024, 1 << 18);
BENCHMARK(BM_Energy<false>)->RangeMultiplier(4)->Range(1024, 1 << 18);
BENCHMARK(BM_Energy<true>)->RangeMultiplier(4)->Range(1024, 1 << 18);
BENCHMARK(BM_Bisection<false>)->Arg(1024)->Arg(8192);
BENCHMARK(BM_Bisection<true>)->Arg(1024)->Arg(8192);

BENCHMARK_MAIN();
