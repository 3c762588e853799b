#include "ferro/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ferro {

std::vector<double> TridiagonalOperator::apply(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(dimension));
  for (int i = 0; i < dimension; ++i) {
    double acc = diag[i] * x[i];
    if (i > 0) acc += lower(i - 1) * x[i - 1];
    if (i + 1 < dimension) acc += upper(i) * x[i + 1];
    y[i] = acc;
  }
  return y;
}

std::vector<double> TridiagonalOperator::symmetric_offdiag() const {
  std::vector<double> off(coupling.size());
  for (std::size_t i = 0; i < off.size(); ++i) {
    off[i] = coupling[i] / std::sqrt(weight[i] * weight[i + 1]);
  }
  return off;
}

TridiagonalOperator TridiagonalOperator::shifted(double c) const {
  TridiagonalOperator out = *this;
  for (double& d : out.diag) d += c;
  return out;
}

std::pair<double, double> TridiagonalOperator::gershgorin() const {
  const auto off = symmetric_offdiag();
  double lo = 0.0;
  double hi = 0.0;
  for (int i = 0; i < dimension; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < dimension) r += std::abs(off[i]);
    const double a = diag[i] - r;
    const double b = diag[i] + r;
    if (i == 0 || a < lo) lo = a;
    if (i == 0 || b > hi) hi = b;
  }
  return {lo, hi};
}

double TridiagonalOperator::norm() const {
  const auto [lo, hi] = gershgorin();
  return std::max(std::abs(lo), std::abs(hi));
}

void TridiagonalOperator::validate() const {
  const auto n = static_cast<std::size_t>(dimension);
  if (dimension < 1 || diag.size() != n || weight.size() != n ||
      coupling.size() != n - 1) {
    throw std::invalid_argument("tridiagonal operator: inconsistent sizes");
  }
  for (double w : weight) {
    if (!(w > 0)) throw std::invalid_argument("tridiagonal operator: weight <= 0");
  }
}

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n);
  std::vector<double> x(rhs.begin(), rhs.end());
  double piv = diag[0];
  if (piv == 0.0) throw std::runtime_error("tridiagonal solve: zero pivot at row 0");
  c[0] = n > 1 ? upper[0] / piv : 0.0;
  x[0] /= piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = diag[i] - lower[i - 1] * c[i - 1];
    if (piv == 0.0) {
      throw std::runtime_error("tridiagonal solve: zero pivot at row " +
                               std::to_string(i));
    }
    c[i] = i + 1 < n ? upper[i] / piv : 0.0;
    x[i] = (x[i] - lower[i - 1] * x[i - 1]) / piv;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

std::vector<double> solve_tridiagonal_pivoted(std::span<const double> lower,
                                              std::span<const double> diag,
                                              std::span<const double> upper,
                                              std::span<const double> rhs) {
  // Same scheme as LAPACK dgtsv: row i may swap with row i+1, which fills a
  // second super-diagonal.
  const std::size_t n = diag.size();
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> du(n, 0.0);
  std::vector<double> du2(n, 0.0);
  std::vector<double> dl(n, 0.0);
  std::vector<double> b(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    du[i] = upper[i];
    dl[i] = lower[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (dl[i] != 0.0) {
        const double f = dl[i] / d[i];
        d[i + 1] -= f * du[i];
        b[i + 1] -= f * b[i];
      }
      du2[i] = 0.0;
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - f * tmp;
      du2[i] = i + 2 < n ? du[i + 1] : 0.0;
      if (i + 2 < n) du[i + 1] = -f * du2[i];
      du[i] = tmp;
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= f * b[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == 0.0) {
      throw std::runtime_error("tridiagonal solve: singular at row " +
                               std::to_string(i));
    }
  }
  std::vector<double> x(n);
  if (n == 1) {
    x[0] = b[0] / d[0];
    return x;
  }
  x[n - 1] = b[n - 1] / d[n - 1];
  if (n > 1) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) {
    x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  }
  return x;
}

}  // namespace ferro
