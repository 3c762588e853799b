#include "ferro/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ferro/kernels.hpp"

namespace ferro {

std::string to_string(Stability s) {
  switch (s) {
    case Stability::minimum: return "minimum";
    case Stability::saddle: return "saddle";
    case Stability::marginal: return "marginal";
  }
  return "unknown";
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(std::vector<double>& v) {
  const double nv = std::sqrt(dot(v, v));
  if (nv == 0.0 || !std::isfinite(nv)) {
    throw std::runtime_error("inverse iteration: vector collapsed");
  }
  for (double& x : v) x /= nv;
}

// Inverse iteration for the symmetric tridiagonal (diag, off) near sigma.
std::vector<double> inverse_iteration(const std::vector<double>& diag,
                                      const std::vector<double>& off, double sigma,
                                      double scale,
                                      const std::vector<std::vector<double>>& previous,
                                      std::mt19937_64& rng) {
  const std::size_t n = diag.size();
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = unif(rng);
  normalize(x);

  std::vector<double> shifted(n);
  double shift = sigma;
  for (int iter = 0; iter < 4; ++iter) {
    for (std::size_t i = 0; i < n; ++i) shifted[i] = diag[i] - shift;
    std::vector<double> y;
    try {
      y = solve_tridiagonal_pivoted(off, shifted, off, x);
    } catch (const std::runtime_error&) {
      // sigma hit an eigenvalue exactly; nudge it.
      shift += 4 * std::numeric_limits<double>::epsilon() * scale;
      --iter;
      continue;
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : previous) {
        const double c = dot(y, q);
        for (std::size_t i = 0; i < n; ++i) y[i] -= c * q[i];
      }
    }
    normalize(y);
    x = std::move(y);
  }
  return x;
}

}  // namespace

SpectrumResult eigs_lowest(const TridiagonalOperator& op, int k, double tol,
                           double quad_step) {
  op.validate();
  if (k < 1 || k > op.dimension) {
    throw std::invalid_argument("eigs_lowest: k must be in [1, dimension]");
  }
  if (!(tol >= 0)) throw std::invalid_argument("eigs_lowest: tol must be >= 0");
  if (!(quad_step > 0)) throw std::invalid_argument("eigs_lowest: quad_step must be > 0");

  const std::vector<double> off = op.symmetric_offdiag();
  std::vector<double> off_sq(off.size());
  for (std::size_t i = 0; i < off.size(); ++i) off_sq[i] = off[i] * off[i];
  auto [lo, hi] = op.gershgorin();
  const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  lo -= 1e-12 * scale;
  hi += 1e-12 * scale;

  SpectrumResult res;
  res.tol = tol;
  res.eigenvalues.resize(static_cast<std::size_t>(k));
  kernels::bisect_eigenvalues(op.diag, off_sq, lo, hi, 0, res.eigenvalues);
  res.morse_index = kernels::sturm_count(op.diag, off_sq, -tol);
  for (double l : res.eigenvalues) {
    if (std::abs(l) <= tol) res.marginal = true;
  }

  std::mt19937_64 rng(0x5eed);
  std::vector<std::vector<double>> sym_vecs;
  for (int j = 0; j < k; ++j) {
    sym_vecs.push_back(
        inverse_iteration(op.diag, off, res.eigenvalues[j], scale, sym_vecs, rng));
  }
  for (const auto& y : sym_vecs) {
    // Back to the unsymmetrized operator: v = W^{-1/2} y.
    std::vector<double> v(static_cast<std::size_t>(op.dimension) + 2, 0.0);
    double nrm = 0.0;
    double sum = 0.0;
    for (int i = 0; i < op.dimension; ++i) {
      v[i + 1] = y[i] / std::sqrt(op.weight[i]);
      nrm += quad_step * op.weight[i] * v[i + 1] * v[i + 1];
      sum += v[i + 1];
    }
    const double c = (sum < 0 ? -1.0 : 1.0) / std::sqrt(nrm);
    for (double& x : v) x *= c;
    res.eigenvectors.push_back(std::move(v));
  }
  return res;
}

namespace {

struct LegendreRun {
  std::vector<double> eigenvalues;
  double max_dev = 0.0;
  double correlation = 0.0;
  double endpoint_ratio = 0.0;
};

LegendreRun legendre_once(GridPtr grid, int l_max) {
  const Profile p = double_angle(grid);
  const TridiagonalOperator op =
      assemble_second_variation(p, EnergyParams(4.0)).shifted(4.0);
  const SpectrumResult sr = eigs_lowest(op, l_max, 0.0, grid->step());
  LegendreRun r;
  for (int l = 1; l <= l_max; ++l) {
    const double got = -sr.eigenvalues[l - 1];
    r.eigenvalues.push_back(got);
    r.max_dev = std::max(r.max_dev, std::abs(got + l * (l + 1.0)));
  }
  const auto s = grid->sin();
  const auto& v1 = sr.eigenvectors[0];
  const std::vector<double> sv(s.begin(), s.end());
  const double num = inner_sin(*grid, v1, sv);
  r.correlation = num / std::sqrt(inner_sin(*grid, v1, v1) * inner_sin(*grid, sv, sv));
  const int n = grid->n();
  for (const auto& v : sr.eigenvectors) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    r.endpoint_ratio = std::max(r.endpoint_ratio,
                                std::max(std::abs(v[1]), std::abs(v[n - 1])) / m);
  }
  return r;
}

}  // namespace

LegendreReport legendre_validation(const Grid& grid, int l_max) {
  if (l_max < 1) throw std::invalid_argument("legendre_validation: l_max must be >= 1");
  const LegendreRun coarse = legendre_once(make_grid(grid.n()), l_max);
  const LegendreRun fine = legendre_once(make_grid(2 * grid.n()), l_max);
  LegendreReport rep;
  rep.n = grid.n();
  rep.l_max = l_max;
  rep.eigenvalues = coarse.eigenvalues;
  for (int l = 1; l <= l_max; ++l) rep.expected.push_back(-l * (l + 1.0));
  rep.max_deviation = coarse.max_dev;
  rep.refined_max_deviation = fine.max_dev;
  rep.observed_order = std::log2(coarse.max_dev / fine.max_dev);
  rep.first_mode_correlation = coarse.correlation;
  rep.endpoint_ratio = coarse.endpoint_ratio;
  return rep;
}

Classification classify(const Profile& p, const EnergyParams& params, int k) {
  const double res = sup_residual(p, params);
  if (!(res < 1e-6)) {
    throw std::invalid_argument("classify: profile is not stationary (sup residual " +
                                std::to_string(res) + ")");
  }
  Classification c;
  const double tol = 1e-6 * std::max(1.0, params.kappa);
  c.spectrum = eigs_lowest(assemble_second_variation(p, params), k, tol, p.grid().step());
  c.explicit_direction_value =
      second_variation_form(p, params, perturbation_direction(p));
  if (c.spectrum.marginal) {
    c.stability = Stability::marginal;
  } else if (c.spectrum.morse_index > 0) {
    c.stability = Stability::saddle;
  } else {
    c.stability = Stability::minimum;
  }
  return c;
}

}  // namespace ferro
