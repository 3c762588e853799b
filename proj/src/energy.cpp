#include "ferro/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ferro/kernels.hpp"

namespace ferro {

EnergyParams::EnergyParams(double k) : kappa(k) {
  if (!std::isfinite(k) || k < 0.0) {
    throw std::invalid_argument("kappa must be finite and >= 0, got " +
                                std::to_string(k));
  }
}

double reduced_energy(const Profile& p, const EnergyParams& params) {
  const Grid& g = p.grid();
  return kernels::dirichlet_energy(g, p.values()) +
         kernels::potential_energy(g, p.values(), params.kappa);
}

double full_energy(const Profile& p, const EnergyParams& params) {
  return 2 * std::numbers::pi * reduced_energy(p, params);
}

std::vector<double> el_residual(const Profile& p, const EnergyParams& params) {
  std::vector<double> r(p.size(), 0.0);
  kernels::el_residual(p.grid(), p.values(), params.kappa, r, 0, p.grid().n());
  return r;
}

double sup_residual(const Profile& p, const EnergyParams& params) {
  double m = 0.0;
  for (double v : el_residual(p, params)) m = std::max(m, std::abs(v));
  return m;
}

double inner_sin(const Grid& g, std::span<const double> u,
                 std::span<const double> v) {
  std::vector<double> prod(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) prod[i] = u[i] * v[i];
  return kernels::weighted_sum(g.weights(), prod);
}

TridiagonalOperator assemble_second_variation(const Profile& p,
                                              const EnergyParams& params) {
  const Grid& g = p.grid();
  const int n = g.n();
  const double h2 = g.step() * g.step();
  const auto a = g.flux();
  const auto s = g.sin();

  TridiagonalOperator op;
  op.dimension = n - 1;
  op.diag.resize(static_cast<std::size_t>(n - 1));
  op.coupling.resize(static_cast<std::size_t>(n - 2));
  op.weight.assign(s.begin() + 1, s.end() - 1);

  kernels::potential(g, p.values(), params.kappa, op.diag);
  for (int i = 1; i < n; ++i) {
    op.diag[i - 1] += (a[i] + a[i - 1]) / (s[i] * h2);
  }
  for (int i = 1; i < n - 1; ++i) op.coupling[i - 1] = -a[i] / h2;
  return op;
}

double second_variation_form(const Profile& p, const EnergyParams& params,
                             std::span<const double> g) {
  const Grid& grid = p.grid();
  if (g.size() != p.size()) {
    throw std::invalid_argument("second_variation_form: direction has wrong length");
  }
  if (g.front() != 0.0 || g.back() != 0.0) {
    throw std::invalid_argument(
        "second_variation_form: direction must vanish at both poles");
  }
  const int n = grid.n();
  const auto a = grid.flux();
  double grad = 0.0;
  for (int j = 0; j < n; ++j) {
    const double d = g[j + 1] - g[j];
    grad += a[j] * d * d;
  }
  grad /= grid.step();

  std::vector<double> v(static_cast<std::size_t>(n - 1));
  kernels::potential(grid, p.values(), params.kappa, v);
  std::vector<double> vg2(p.size(), 0.0);
  for (int i = 1; i < n; ++i) vg2[i] = v[i - 1] * g[i] * g[i];
  return grad + kernels::weighted_sum(grid.weights(), vg2);
}

}  // namespace ferro
