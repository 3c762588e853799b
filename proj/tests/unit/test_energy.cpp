#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ferro/energy.hpp"
#include "ferro/validate.hpp"

using namespace ferro;
constexpr double pi = std::numbers::pi;

TEST_CASE("exact solutions have residual at the stencil floor") {
  const GridPtr g = make_grid(1024);
  for (double k : {0.0, 1.0, 4.0, 10.0}) {
    CHECK(sup_residual(identity_profile(g), EnergyParams(k)) < 1e-6);
  }
  CHECK(sup_residual(double_angle(g), EnergyParams(4.0)) < 1e-6);
  // 2 theta off kappa = 4 has residual (2 - kappa/2) sin 2 theta.
  const auto r = el_residual(double_angle(g), EnergyParams(6.0));
  CHECK(r[256] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(r.front() == 0.0);
  CHECK(r.back() == 0.0);
}

TEST_CASE("analytic energies") {
  const GridPtr g = make_grid(1024);
  // E(theta) = 1/2 Int (sin + sin) = 2 for every kappa (the anisotropy term vanishes).
  CHECK(reduced_energy(identity_profile(g), EnergyParams(0.0)) == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(reduced_energy(identity_profile(g), EnergyParams(7.0)) == doctest::Approx(2.0).epsilon(1e-5));
  // E(2 theta, 4) = 1/2 Int [4 sin + 4 sin cos^2 ... ] = 8.
  CHECK(reduced_energy(double_angle(g), EnergyParams(4.0)) == doctest::Approx(8.0).epsilon(1e-5));
  // E(pi, kappa) = kappa/2 Int sin^3 = 2 kappa / 3.
  for (double k : {1.0, 5.0, 12.0}) {
    CHECK(reduced_energy(constant_pi(g), EnergyParams(k)) == doctest::Approx(2 * k / 3).epsilon(1e-5));
  }
  CHECK(full_energy(identity_profile(g), EnergyParams(0.0)) ==
        doctest::Approx(4 * pi).epsilon(1e-5));
}

TEST_CASE("kappa must be finite and non-negative") {
  CHECK_THROWS_AS(EnergyParams(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(EnergyParams(NAN), std::invalid_argument);
}

TEST_CASE("residual is the negative sin-weighted gradient of the energy") {
  const GridPtr g = make_grid(128);
  std::mt19937_64 rng(5);
  const EnergyParams ep(6.0);
  const Profile h = Profile::from_function(g, 0, 2, [](double t) {
    return 2 * t + 0.2 * std::sin(t) * std::sin(3 * t);
  });
  const auto r = el_residual(h, ep);
  // Perturb a single node: dE/du_i = -w_i r_i.
  for (int i : {1, 17, 64, 127}) {
    const double eps = 1e-6;
    std::vector<double> up(h.values().begin(), h.values().end()), dn = up;
    up[i] += eps;
    dn[i] -= eps;
    const double d = (reduced_energy(Profile(g, up, 0, 2), ep) -
                      reduced_energy(Profile(g, dn, 0, 2), ep)) / (2 * eps);
    CHECK(d == doctest::Approx(-g->weights()[i] * r[i]).epsilon(1e-6));
  }
}

TEST_CASE("jacobian of the residual is minus the second-variation operator") {
  const GridPtr g = make_grid(64);
  const EnergyParams ep(5.0);
  const Profile h = Profile::from_function(g, 1, 1, [](double t) {
    return pi + 0.3 * std::sin(t) * std::sin(2 * t);
  });
  const auto op = assemble_second_variation(h, ep);
  const auto r0 = el_residual(h, ep);
  for (int j : {1, 20, 32, 63}) {
    const double eps = 1e-6;
    std::vector<double> v(h.values().begin(), h.values().end());
    v[j] += eps;
    const auto r1 = el_residual(Profile(g, v, 1, 1), ep);
    for (int i = std::max(1, j - 1); i <= std::min(63, j + 1); ++i) {
      const double fd = (r1[i] - r0[i]) / eps;
      double a = 0;
      if (i == j) a = op.diag[i - 1];
      else if (i == j - 1) a = op.upper(i - 1);
      else a = op.lower(j - 1);
      CHECK(fd == doctest::Approx(-a).epsilon(1e-4).scale(1.0));
    }
  }
}

TEST_CASE("second-variation form at 2 theta, kappa 4") {
  const GridPtr g = make_grid(1024);
  const Profile p = double_angle(g);
  const EnergyParams ep(4.0);
  std::vector<double> s1(1025), s2(1025);
  for (int i = 1; i < 1024; ++i) {
    s1[i] = g->sin()[i];
    s2[i] = 2 * g->sin()[i] * g->cos()[i];
  }
  // <A sin, sin> = -2 * Int sin^3 = -8/3, <A sin 2t, sin 2t> = 2 * Int 4 sin^3 cos^2 = 32/15.
  CHECK(second_variation_form(p, ep, s1) == doctest::Approx(-8.0 / 3).epsilon(1e-5));
  CHECK(second_variation_form(p, ep, s2) == doctest::Approx(32.0 / 15).epsilon(1e-5));
  std::vector<double> bad(1025, 1.0);
  CHECK_THROWS_AS(second_variation_form(p, ep, bad), std::invalid_argument);
}

TEST_CASE("form equals <A g, g> and the finite-difference hessian") {
  const GridPtr g = make_grid(512);
  std::mt19937_64 rng(9);
  const EnergyParams ep(3.3);
  const Profile h = double_angle(g);
  const auto dir = random_smooth_direction(*g, rng);
  const auto op = assemble_second_variation(h, ep);
  std::vector<double> x(dir.begin() + 1, dir.end() - 1);
  const auto ax = op.apply(x);
  std::vector<double> axn(dir.size(), 0.0);
  for (std::size_t i = 0; i < ax.size(); ++i) axn[i + 1] = ax[i];
  const double form = second_variation_form(h, ep, dir);
  CHECK(form == doctest::Approx(inner_sin(*g, axn, dir)).epsilon(1e-12));

  const double eps = 1e-4;
  auto e = [&](double t) {
    std::vector<double> v(h.values().begin(), h.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += t * dir[i];
    return reduced_energy(Profile(g, v, 0, 2), ep);
  };
  const double d2 = (e(eps) - 2 * e(0) + e(-eps)) / (eps * eps);
  CHECK(d2 == doctest::Approx(form).epsilon(1e-4));
}

TEST_CASE("wedge certificates") {
  CHECK(certificate_f(4.0, 0.0, pi) == doctest::Approx(0.0).scale(1.0));
  for (double k : {4.0, 5.0, 10.0, 100.0}) {
    const auto rep = wedge_certificates(k, 200);
    CHECK(rep.ok());
    CHECK(rep.f_min_w1 >= -rep.slack);
    CHECK(rep.f_max_w2 <= rep.slack);
    CHECK(rep.lambda_min_w1_quarter >= -rep.slack);
    CHECK(rep.lambda_max_w2 <= rep.slack);
  }
  CHECK_THROWS_AS(wedge_certificates(3.0, 200), std::invalid_argument);
  CHECK_THROWS_AS(wedge_certificates(5.0, 10), std::invalid_argument);
}
