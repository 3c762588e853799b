#include "ferro/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ferro/grid.hpp"

namespace ferro::kernels {
namespace {

inline double divergence_at(const Grid& g, std::span<const double> u, int i) {
  const auto a = g.flux();
  const double h2 = g.step() * g.step();
  return (a[i] * (u[i + 1] - u[i]) - a[i - 1] * (u[i] - u[i - 1])) /
         (g.sin()[i] * h2);
}

inline double residual_at(const Grid& g, std::span<const double> u,
                          double kappa, int i) {
  const double s = g.sin()[i];
  const double th = g.nodes()[i];
  return divergence_at(g, u, i) - std::sin(2 * u[i]) / (2 * s * s) -
         0.5 * kappa * std::sin(2 * u[i] - 2 * th);
}

inline double potential_at(const Grid& g, std::span<const double> u,
                           double kappa, int i) {
  const double s = g.sin()[i];
  return std::cos(2 * u[i]) / (s * s) +
         kappa * std::cos(2 * u[i] - 2 * g.nodes()[i]);
}

inline double dirichlet_term(const Grid& g, std::span<const double> u,
                             std::size_t j) {
  const double d = u[j + 1] - u[j];
  return g.flux()[j] * d * d;
}

inline double potential_term(const Grid& g, std::span<const double> u,
                             double kappa, std::size_t i) {
  const double s = g.sin()[i];
  const double a = std::sin(u[i]);
  const double b = std::sin(u[i] - g.nodes()[i]);
  return g.weights()[i] * (a * a / (s * s) + kappa * b * b);
}

// Fixed-partition reduction: block partial sums in parallel, then a serial
// pass over the blocks.
template <class Term>
double blocked_sum(std::size_t begin, std::size_t end, Term term) {
  if (end <= begin) return 0.0;
  const std::size_t count = end - begin;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<long>(blocks);
#pragma omp parallel for schedule(static) if (count >= kParallelCutoff)
  for (long b = 0; b < nb; ++b) {
    const std::size_t lo = begin + static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(end, lo + kBlock);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double bisect_one(std::span<const double> diag, std::span<const double> off_sq,
                  double lower, double upper, int index) {
  double lo = lower;
  double hi = upper;
  // Stop when the bracket stops shrinking in floating point.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, off_sq, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double weighted_sum(std::span<const double> w, std::span<const double> values) {
  if (values.empty()) {
    return blocked_sum(0, w.size(), [&](std::size_t i) { return w[i]; });
  }
  return blocked_sum(0, w.size(),
                     [&](std::size_t i) { return w[i] * values[i]; });
}

void divergence(const Grid& g, std::span<const double> u, std::span<double> out,
                int lo, int hi) {
#pragma omp parallel for schedule(static) if (hi - lo >= static_cast<int>(kParallelCutoff))
  for (int i = lo + 1; i < hi; ++i) out[i] = divergence_at(g, u, i);
}

void el_residual(const Grid& g, std::span<const double> u, double kappa,
                 std::span<double> out, int lo, int hi) {
  out[lo] = 0.0;
  out[hi] = 0.0;
#pragma omp parallel for schedule(static) if (hi - lo >= static_cast<int>(kParallelCutoff))
  for (int i = lo + 1; i < hi; ++i) out[i] = residual_at(g, u, kappa, i);
}

void potential(const Grid& g, std::span<const double> u, double kappa,
               std::span<double> out) {
  const int n = g.n();
#pragma omp parallel for schedule(static) if (n >= static_cast<int>(kParallelCutoff))
  for (int i = 1; i < n; ++i) out[i - 1] = potential_at(g, u, kappa, i);
}

double dirichlet_energy(const Grid& g, std::span<const double> u) {
  const auto n = static_cast<std::size_t>(g.n());
  return 0.5 / g.step() *
         blocked_sum(0, n, [&](std::size_t j) { return dirichlet_term(g, u, j); });
}

double potential_energy(const Grid& g, std::span<const double> u,
                        double kappa) {
  const auto n = static_cast<std::size_t>(g.n());
  return 0.5 * blocked_sum(1, n, [&](std::size_t i) {
           return potential_term(g, u, kappa, i);
         });
}

int sturm_count(std::span<const double> diag, std::span<const double> off_sq,
                double x) {
  // LDL^T pivots of (T - xI); count the negative ones.
  constexpr double tiny = std::numeric_limits<double>::min() * 1e10;
  int count = 0;
  double q = diag[0] - x;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (std::abs(q) < tiny) q = q < 0 ? -tiny : tiny;
    q = diag[i] - x - off_sq[i - 1] / q;
    if (q < 0) ++count;
  }
  return count;
}

void bisect_eigenvalues(std::span<const double> diag,
                        std::span<const double> off_sq, double lower,
                        double upper, int first, std::span<double> out) {
  const int count = static_cast<int>(out.size());
#pragma omp parallel for schedule(dynamic) if (count > 1 && diag.size() >= 512)
  for (int j = 0; j < count; ++j) {
    out[j] = bisect_one(diag, off_sq, lower, upper, first + j);
  }
}

namespace serial {

double weighted_sum(std::span<const double> w, std::span<const double> values) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i] * (values.empty() ? 1.0 : values[i]);
  }
  return acc;
}

void divergence(const Grid& g, std::span<const double> u, std::span<double> out,
                int lo, int hi) {
  for (int i = lo + 1; i < hi; ++i) out[i] = divergence_at(g, u, i);
}

void el_residual(const Grid& g, std::span<const double> u, double kappa,
                 std::span<double> out, int lo, int hi) {
  out[lo] = 0.0;
  out[hi] = 0.0;
  for (int i = lo + 1; i < hi; ++i) out[i] = residual_at(g, u, kappa, i);
}

void potential(const Grid& g, std::span<const double> u, double kappa,
               std::span<double> out) {
  for (int i = 1; i < g.n(); ++i) out[i - 1] = potential_at(g, u, kappa, i);
}

double dirichlet_energy(const Grid& g, std::span<const double> u) {
  double acc = 0.0;
  for (std::size_t j = 0; j < static_cast<std::size_t>(g.n()); ++j) {
    acc += dirichlet_term(g, u, j);
  }
  return 0.5 * acc / g.step();
}

double potential_energy(const Grid& g, std::span<const double> u,
                        double kappa) {
  double acc = 0.0;
  for (std::size_t i = 1; i < static_cast<std::size_t>(g.n()); ++i) {
    acc += potential_term(g, u, kappa, i);
  }
  return 0.5 * acc;
}

void bisect_eigenvalues(std::span<const double> diag,
                        std::span<const double> off_sq, double lower,
                        double upper, int first, std::span<double> out) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = bisect_one(diag, off_sq, lower, upper, first + static_cast<int>(j));
  }
}

}  // namespace serial
}  // namespace ferro::kernels
