// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "ferro/energy.hpp"
#include "ferro/flow.hpp"
#include "ferro/profile_io.hpp"
#include "ferro/saddle.hpp"
#include "ferro/spectrum.hpp"
#include "ferro/stationary.hpp"
#include "ferro/validate.hpp"

using namespace ferro;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string f(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

Outcome exact_solutions() {
  const GridPtr g = make_grid(1024);
  double worst = 0;
  for (double k : {0.0, 1.0, 4.0, 10.0}) {
    worst = std::max(worst, sup_residual(identity_profile(g), EnergyParams(k)));
  }
  worst = std::max(worst, sup_residual(double_angle(g), EnergyParams(4.0)));
  return {worst < 1e-6, "max sup residual " + f(worst) + " (limit 1e-6)"};
}

Outcome analytic_energies() {
  const GridPtr g = make_grid(1024);
  double worst = 0;
  auto rel = [&](double got, double want) {
    worst = std::max(worst, std::abs(got - want) / std::abs(want));
  };
  for (double k : {0.0, 1.0, 4.0, 10.0}) rel(reduced_energy(identity_profile(g), EnergyParams(k)), 2.0);
  rel(reduced_energy(double_angle(g), EnergyParams(4.0)), 8.0);
  for (double k : {1.0, 5.0, 10.0, 100.0}) {
    rel(reduced_energy(constant_pi(g), EnergyParams(k)), 2 * k / 3);
  }
  return {worst < 1e-5, "max relative error " + f(worst) + " (limit 1e-5)"};
}

Outcome legendre_spectrum() {
  const double expect[] = {-2, 2, 8, 16, 26};
  auto lowest = [](int n) {
    const GridPtr g = make_grid(n);
    return eigs_lowest(assemble_second_variation(double_angle(g), EnergyParams(4.0)), 5, 0.0,
                       g->step())
        .eigenvalues;
  };
  const auto a = lowest(1024);
  const auto b = lowest(2048);
  double ea = 0, eb = 0;
  for (int j = 0; j < 5; ++j) {
    ea = std::max(ea, std::abs(a[j] - expect[j]));
    eb = std::max(eb, std::abs(b[j] - expect[j]));
  }
  const double ratio = ea / eb;
  std::string vals;
  for (double x : b) vals += (vals.empty() ? "" : ", ") + f(x);
  return {eb < 1e-2 && ratio > 3.5 && ratio < 4.5,
          "n=2048: (" + vals + "), max error " + f(eb) + ", error ratio 1024->2048 " + f(ratio)};
}

Outcome kappa4_certificate() {
  const GridPtr g = make_grid(1024);
  const Profile p = double_angle(g);
  const EnergyParams ep(4.0);
  std::vector<double> s1(1025, 0.0), s2(1025, 0.0);
  for (int i = 1; i < 1024; ++i) {
    s1[i] = g->sin()[i];
    s2[i] = 2 * g->sin()[i] * g->cos()[i];
  }
  const double f1 = second_variation_form(p, ep, s1);
  const double f2 = second_variation_form(p, ep, s2);
  const int morse = classify(p, ep, 2).spectrum.morse_index;
  const bool ok =
      std::abs(f1 + 8.0 / 3) <= 1e-3 && std::abs(f2 - 32.0 / 15) <= 1e-3 && morse == 1;
  return {ok, "form(sin) " + f(f1) + " vs -8/3, form(sin 2theta) " + f(f2) +
                  " vs 32/15, morse index " + std::to_string(morse)};
}

Outcome gradient_hessian() {
  const GridPtr g = make_grid(512);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> kap(0.0, 10.0);
  const double eps = 1e-4;
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const double k = kap(rng);
    const EnergyParams ep(k);
    const auto bump = random_smooth_direction(*g, rng, 4);
    std::vector<double> base(513);
    for (int i = 0; i <= 512; ++i) base[i] = 2 * g->nodes()[i] + 0.2 * bump[i];
    const Profile h(g, base, 0, 2);
    const auto dir = random_smooth_direction(*g, rng);
    auto e = [&](double s) {
      std::vector<double> v(base);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * dir[i];
      return reduced_energy(Profile(g, v, 0, 2), ep);
    };
    const double ep_ = e(eps), em = e(-eps), e0 = e(0);
    const double d1 = (ep_ - em) / (2 * eps);
    const double d2 = (ep_ - 2 * e0 + em) / (eps * eps);
    const double grad = -inner_sin(*g, el_residual(h, ep), dir);
    const double hess = second_variation_form(h, ep, dir);
    worst = std::max({worst, std::abs(d1 - grad) / (1 + std::abs(grad)),
                      std::abs(d2 - hess) / (1 + std::abs(hess))});
  }
  return {worst < 1e-4, "20 directions, worst mismatch " + f(worst) + " (limit 1e-4)"};
}

Outcome flow_dissipation() {
  const GridPtr g = make_grid(1024);
  FlowConfig cfg = FlowConfig::for_kappa(5.0);
  cfg.record_every = 1;
  cfg.wedge = WedgeSpec(WedgeKind::W1, 1e-8);
  const FlowResult r = run(constant_pi(g), EnergyParams(5.0), cfg);
  const double e0 = r.initial_energy;
  const double slack = 1e-10 * (1 + e0);
  bool mono = r.energy_violations == 0;
  bool wedge = true;
  bool hemi = true;
  for (std::size_t i = 1; i < r.energy_trace.size(); ++i) {
    mono = mono && r.energy_trace[i].energy <= r.energy_trace[i - 1].energy + slack;
  }
  for (std::size_t i = 0; i < r.monitor_log.size(); ++i) {
    wedge = wedge && r.energy_trace[i].wedge_ok;
    hemi = hemi && r.monitor_log[i].hemispheric_deviation &&
           *r.monitor_log[i].hemispheric_deviation <= 1e-8;
  }
  const bool cls = r.final.m() == 1 && r.final.n_end() == 1 && degree(r.final) == 0;
  const bool ok = r.status == FlowStatus::stationary && r.final_residual < 1e-9 &&
                  r.t_final <= 1e3 && mono && wedge && hemi && cls;
  return {ok, "status " + to_string(r.status) + " at t=" + f(r.t_final) + ", residual " +
                  f(r.final_residual) + ", E " + f(e0) + " -> " +
                  f(r.energy_trace.back().energy) + ", max step increase " +
                  f(r.max_energy_increase) + ", " + std::to_string(r.energy_trace.size()) +
                  " iterates checked (monotone " + (mono ? "yes" : "no") + ", W1 " +
                  (wedge ? "yes" : "no") + ", hemispheric " + (hemi ? "yes" : "no") + ")"};
}

Outcome derivative_bounds() {
  const GridPtr g = make_grid(1024);
  double max_first = -INFINITY, min_second = INFINITY;
  for (double k : {4.0, 9.0, 25.0}) {
    const SaddleReport a = find_first_type(k, g);
    for (double d : derivative(a.profile)) max_first = std::max(max_first, d);
    const SaddleReport b = find_second_type(k, g);
    for (double d : derivative(b.profile)) min_second = std::min(min_second, d);
  }
  return {max_first <= 1 + 1e-6 && min_second >= 1 - 1e-6,
          "first type max h' " + f(max_first) + ", second type min h' " + f(min_second)};
}

Outcome comparison_principle() {
  const GridPtr g = make_grid(512);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> kap(4.0, 10.0);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const auto [lo, up] = random_ordered_pair(g, rng);
    const double k = kap(rng);
    FlowConfig cfg = FlowConfig::for_kappa(k);
    cfg.t_max = 10.0;
    worst = std::max(worst, comparison_trial(lo, up, EnergyParams(k), cfg).max_violation);
  }
  return {worst <= 1e-6, "20 pairs to t=10, max ordering violation " + f(worst)};
}

Outcome kappa0_bracket() {
  std::vector<double> ks;
  for (int i = 0; i <= 16; ++i) ks.push_back(4.0 + 0.25 * i);
  SweepOptions opt;
  opt.n = 1024;
  opt.keep_profiles = false;
  const SweepResult r = sweep(ks, {SaddleType::first}, opt);
  if (!r.kappa0) return {false, "explicit-direction value never changes sign"};
  const Bracket b = *r.kappa0;
  std::string eig = r.kappa0_eigen ? ", lowest eigenvalue changes sign in [" +
                                         f(r.kappa0_eigen->lo) + ", " +
                                         f(r.kappa0_eigen->hi) + "]"
                                   : "";
  return {b.width() <= 0.05 && b.lo > 4.0 && b.hi < 6.7,
          "bracket [" + format_double(b.lo) + ", " + format_double(b.hi) + "]" + eig};
}

Outcome second_type_certificate() {
  const GridPtr g = make_grid(1024);
  bool ok = true;
  std::string vals;
  for (double k : {4.0, 6.0, 8.0, 10.0, 20.0}) {
    const SaddleReport r = find_second_type(k, g);
    ok = ok && r.explicit_direction_value < 0;
    vals += (vals.empty() ? "" : ", ") + f(r.explicit_direction_value);
  }
  return {ok, "values at kappa 4,6,8,10,20: " + vals};
}

Outcome continuation_below_4() {
  const GridPtr g = make_grid(1024);
  NewtonConfig nc;
  nc.residual_tol = 1e-10;
  const Branch br = continue_branch(4.0, double_angle(g), 3.8, -0.05, nc);
  bool ok = br.reached_target;
  double worst_res = 0, worst_hemi = 0;
  bool morse = true;
  for (const auto& p : br.points) {
    worst_res = std::max(worst_res, sup_residual(p.profile, EnergyParams(p.kappa)));
    worst_hemi = std::max(worst_hemi, hemispheric_deviation(p.profile).value_or(INFINITY));
    morse = morse && p.lambda1 < 0 && p.lambda2 > 0;
  }
  ok = ok && worst_res < 1e-9 && worst_hemi <= 1e-8 && morse;
  // Reachable extent, reported only.
  const Branch far = continue_branch(4.0, double_angle(g), 0.05, -0.05, nc);
  const std::string extent =
      far.reached_target ? "reaches 0.05"
                         : "last converged kappa " + format_double(far.points.back().kappa);
  return {ok, std::to_string(br.points.size()) + " points to 3.8, max residual " +
                  f(worst_res) + ", hemispheric deviation " + f(worst_hemi) +
                  ", lambda1 < 0 < lambda2 " + (morse ? "yes" : "no") + "; " + extent};
}

Outcome scaling_laws() {
  std::vector<double> e_ratio, slope_ratio, dist;
  for (double k : {16.0, 64.0, 256.0, 1024.0}) {
    const GridPtr g = make_grid(grid_size_for(k, 1024));
    e_ratio.push_back(reduced_energy(make_initial_first_type(g, k), EnergyParams(k)) /
                      std::sqrt(k));
    const SaddleReport r = find_first_type(k, g);
    slope_ratio.push_back(-derivative(r.profile)[g->equator()] / std::sqrt(k));
    double d = 0;
    for (int i = 0; i <= g->n() / 4; ++i) {
      d = std::max(d, std::abs(r.profile[i] - (pi + g->nodes()[i])));
    }
    dist.push_back(d);
  }
  bool ok = true;
  for (std::size_t i = 0; i < 4; ++i) {
    ok = ok && e_ratio[i] <= 2 * e_ratio[0] && slope_ratio[i] <= 2 * slope_ratio[0];
    if (i > 0) ok = ok && dist[i] < dist[i - 1];
  }
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ", ") + f(x);
    return "(" + s + ")";
  };
  return {ok, "kappa 16,64,256,1024: E(h0)/sqrt(k) " + list(e_ratio) + ", -h'(pi/2)/sqrt(k) " +
                  list(slope_ratio) + ", dist on [0,pi/4] " + list(dist)};
}

Outcome eigensolver_oracle() {
  const GridPtr g = make_grid(64);
  std::vector<TridiagonalOperator> ops;
  ops.push_back(assemble_second_variation(double_angle(g), EnergyParams(4.0)));
  ops.push_back(assemble_second_variation(identity_profile(g), EnergyParams(10.0)));
  ops.push_back(assemble_second_variation(constant_pi(g), EnergyParams(5.0)));
  ops.push_back(assemble_second_variation(double_angle(g), EnergyParams(4.0)).shifted(4.0));
  for (double k : {6.0, 10.0}) {
    const SaddleReport a = find_first_type(k, g);
    ops.push_back(assemble_second_variation(a.profile, EnergyParams(k)));
    const SaddleReport b = find_second_type(k, g);
    ops.push_back(assemble_second_variation(b.profile, EnergyParams(k)));
  }
  const SaddleReport c = find_second_type(3.8, g);
  ops.push_back(assemble_second_variation(c.profile, EnergyParams(3.8)));
  double worst = 0;
  for (const auto& op : ops) {
    const auto dense = testing::dense_eigenvalues(op);
    const SpectrumResult sr = eigs_lowest(op, op.dimension);
    for (int j = 0; j < op.dimension; ++j) {
      worst = std::max(worst, std::abs(sr.eigenvalues[j] - dense[j]) / std::abs(dense[j]));
    }
  }
  return {worst <= 1e-8, std::to_string(ops.size()) +
                             " operators, full spectra, worst relative difference " + f(worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"exact solutions", exact_solutions},
      {"analytic energies", analytic_energies},
      {"legendre spectrum", legendre_spectrum},
      {"saddle certificate at kappa 4", kappa4_certificate},
      {"gradient/hessian consistency", gradient_hessian},
      {"flow dissipation and symmetry", flow_dissipation},
      {"derivative bounds on limits", derivative_bounds},
      {"comparison principle", comparison_principle},
      {"kappa0 bracket", kappa0_bracket},
      {"second-type certificate", second_type_certificate},
      {"continuation below 4", continuation_below_4},
      {"scaling laws", scaling_laws},
      {"eigensolver oracle", eigensolver_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
