#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ferro/tridiagonal.hpp"

using namespace ferro;

namespace {

std::vector<double> dense_apply(const std::vector<double>& lo, const std::vector<double>& d,
                                const std::vector<double>& up, const std::vector<double>& x) {
  const std::size_t n = d.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = d[i] * x[i];
    if (i > 0) y[i] += lo[i - 1] * x[i - 1];
    if (i + 1 < n) y[i] += up[i] * x[i + 1];
  }
  return y;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("thomas and pivoted solvers agree on dominant systems") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const int n = 200;
  std::vector<double> lo(n - 1), up(n - 1), d(n), b(n);
  for (int i = 0; i < n; ++i) {
    d[i] = 4 + u(rng);
    b[i] = u(rng);
    if (i + 1 < n) {
      lo[i] = u(rng);
      up[i] = u(rng);
    }
  }
  const auto x1 = solve_tridiagonal(lo, d, up, b);
  const auto x2 = solve_tridiagonal_pivoted(lo, d, up, b);
  CHECK(max_diff(x1, x2) < 1e-13);
  CHECK(max_diff(dense_apply(lo, d, up, x1), b) < 1e-13);
}

TEST_CASE("pivoted solver handles a zero leading diagonal") {
  std::vector<double> lo{1.0, 1.0}, d{0.0, 0.0, 1.0}, up{1.0, 2.0}, b{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(solve_tridiagonal(lo, d, up, b), std::runtime_error);
  const auto x = solve_tridiagonal_pivoted(lo, d, up, b);
  CHECK(max_diff(dense_apply(lo, d, up, x), b) < 1e-14);
}

TEST_CASE("pivoted solver on an indefinite system and size one") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  const int n = 64;
  std::vector<double> lo(n - 1), up(n - 1), d(n), b(n);
  for (int i = 0; i < n; ++i) {
    d[i] = 0.1 * u(rng);
    b[i] = u(rng);
    if (i + 1 < n) lo[i] = up[i] = 1 + u(rng);
  }
  const auto x = solve_tridiagonal_pivoted(lo, d, up, b);
  CHECK(max_diff(dense_apply(lo, d, up, x), b) < 1e-10);

  std::vector<double> one{2.0}, rhs{3.0}, none;
  CHECK(solve_tridiagonal_pivoted(none, one, none, rhs)[0] == 1.5);
  std::vector<double> zero{0.0};
  CHECK_THROWS_AS(solve_tridiagonal_pivoted(none, zero, none, rhs), std::runtime_error);
}

TEST_CASE("operator apply, symmetrization and shift") {
  TridiagonalOperator op;
  op.dimension = 3;
  op.diag = {2.0, 3.0, 4.0};
  op.coupling = {-1.0, -0.5};
  op.weight = {1.0, 4.0, 0.25};
  op.validate();
  const auto y = op.apply(std::vector<double>{1.0, 1.0, 1.0});
  CHECK(y[0] == doctest::Approx(2.0 - 1.0));
  CHECK(y[1] == doctest::Approx(3.0 - 0.25 - 0.125));
  CHECK(y[2] == doctest::Approx(4.0 - 2.0));
  const auto off = op.symmetric_offdiag();
  CHECK(off[0] == doctest::Approx(-0.5));
  CHECK(off[1] == doctest::Approx(-0.5));
  CHECK(op.shifted(1.5).diag[2] == 5.5);
  const auto [lo, hi] = op.gershgorin();
  CHECK(lo == doctest::Approx(1.5));
  CHECK(hi == doctest::Approx(4.5));

  op.weight[1] = 0.0;
  CHECK_THROWS_AS(op.validate(), std::invalid_argument);
}
