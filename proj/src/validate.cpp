#include "ferro/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ferro/energy.hpp"
#include "ferro/flow.hpp"
#include "ferro/profile_io.hpp"
#include "ferro/spectrum.hpp"

namespace ferro {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double x) { return format_double(x); }

PropertyVerdict check_exact_solutions(const GridPtr& g) {
  double worst = 0.0;
  for (double k : {0.0, 1.0, 4.0, 10.0}) {
    worst = std::max(worst, sup_residual(identity_profile(g), EnergyParams(k)));
  }
  worst = std::max(worst, sup_residual(double_angle(g), EnergyParams(4.0)));
  return {"exact_solutions", worst < 1e-6, "max sup residual " + fmt(worst)};
}

PropertyVerdict check_energies(const GridPtr& g) {
  double worst = 0.0;
  auto rel = [&](double got, double want) {
    worst = std::max(worst, std::abs(got - want) / std::abs(want));
  };
  rel(reduced_energy(identity_profile(g), EnergyParams(0.0)), 2.0);
  rel(reduced_energy(double_angle(g), EnergyParams(4.0)), 8.0);
  for (double k : {1.0, 5.0, 10.0}) {
    rel(reduced_energy(constant_pi(g), EnergyParams(k)), 2 * k / 3);
  }
  return {"analytic_energies", worst < 1e-5, "max relative error " + fmt(worst)};
}

PropertyVerdict check_legendre(const GridPtr& g) {
  const LegendreReport r = legendre_validation(*g, 5);
  const bool ok = r.max_deviation < 1e-2 && r.observed_order > 1.8 &&
                  r.observed_order < 2.2 && r.first_mode_correlation > 1 - 1e-4;
  return {"legendre_table", ok,
          "max deviation " + fmt(r.max_deviation) + ", order " + fmt(r.observed_order) +
              ", sin correlation " + fmt(r.first_mode_correlation)};
}

PropertyVerdict check_kappa4_forms(const GridPtr& g) {
  const Profile p = double_angle(g);
  const EnergyParams ep(4.0);
  const auto s = g->sin();
  const auto c = g->cos();
  std::vector<double> g1(s.begin(), s.end());
  std::vector<double> g2(g1.size());
  for (std::size_t i = 0; i < g2.size(); ++i) g2[i] = 2 * s[i] * c[i];
  g1.front() = g1.back() = 0.0;
  g2.front() = g2.back() = 0.0;
  const double f1 = second_variation_form(p, ep, g1);
  const double f2 = second_variation_form(p, ep, g2);
  const int morse = classify(p, ep, 2).spectrum.morse_index;
  const bool ok = std::abs(f1 + 8.0 / 3) < 1e-3 && std::abs(f2 - 32.0 / 15) < 1e-3 &&
                  morse == 1;
  return {"kappa4_second_variation", ok,
          "form(sin) " + fmt(f1) + ", form(sin 2theta) " + fmt(f2) + ", morse " +
              std::to_string(morse)};
}

PropertyVerdict check_gradient_hessian(const GridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> kap(0.0, 10.0);
  const double eps = 1e-4;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double k = kap(rng);
    const EnergyParams ep(k);
    const auto bump = random_smooth_direction(*g, rng, 4);
    std::vector<double> base(g->n() + 1);
    for (int i = 0; i <= g->n(); ++i) base[i] = 2 * g->nodes()[i] + 0.2 * bump[i];
    const Profile h(g, base, 0, 2);
    const auto dir = random_smooth_direction(*g, rng);
    auto shifted = [&](double t) {
      std::vector<double> v(base);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += t * dir[i];
      return reduced_energy(Profile(g, v, 0, 2), ep);
    };
    const double ep_ = shifted(eps), em = shifted(-eps), e0 = reduced_energy(h, ep);
    const double d1 = (ep_ - em) / (2 * eps);
    const double d2 = (ep_ - 2 * e0 + em) / (eps * eps);
    const double grad = -inner_sin(*g, el_residual(h, ep), dir);
    const double hess = second_variation_form(h, ep, dir);
    worst = std::max(worst, std::abs(d1 - grad) / (1 + std::abs(grad)));
    worst = std::max(worst, std::abs(d2 - hess) / (1 + std::abs(hess)));
  }
  return {"gradient_hessian_consistency", worst < 1e-4,
          "worst relative mismatch " + fmt(worst) + " over 20 directions"};
}

PropertyVerdict check_certificates() {
  int violations = 0;
  for (double k : {4.0, 6.0, 10.0, 100.0}) violations += wedge_certificates(k, 200).violations;
  return {"wedge_certificates", violations == 0,
          std::to_string(violations) + " sign violations on 200x200 lattices"};
}

PropertyVerdict check_eigenpairs(const GridPtr& g) {
  double worst = 0.0;
  const std::vector<std::pair<Profile, double>> fixtures = {
      {double_angle(g), 4.0}, {identity_profile(g), 10.0}, {constant_pi(g), 5.0}};
  for (const auto& [p, k] : fixtures) {
    const TridiagonalOperator op = assemble_second_variation(p, EnergyParams(k));
    const SpectrumResult sr = eigs_lowest(op, 4, 0.0, g->step());
    const double nrm = op.norm();
    for (std::size_t j = 0; j < sr.eigenvalues.size(); ++j) {
      const auto& v = sr.eigenvectors[j];
      std::vector<double> x(v.begin() + 1, v.end() - 1);
      const auto ax = op.apply(x);
      double r = 0.0, xm = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        r = std::max(r, std::abs(ax[i] - sr.eigenvalues[j] * x[i]));
        xm = std::max(xm, std::abs(x[i]));
      }
      worst = std::max(worst, r / (nrm * xm));
    }
  }
  return {"eigenpair_residuals", worst < 1e-8, "max |Av - lv| / (|A| |v|) " + fmt(worst)};
}

PropertyVerdict check_half_full_agreement(const GridPtr& g) {
  const EnergyParams ep(5.0);
  FlowConfig cfg = FlowConfig::for_kappa(5.0);
  const FlowResult half = run(constant_pi(g), ep, cfg);
  cfg.reduce_hemispheric = false;
  const FlowResult full = run(constant_pi(g), ep, cfg);
  const double d = half.final.sup_distance(full.final);
  const bool ok = half.status == FlowStatus::stationary &&
                  full.status == FlowStatus::stationary && d < 1e-8;
  return {"half_full_flow_agreement", ok, "sup distance " + fmt(d)};
}

PropertyVerdict check_comparison(const GridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> kap(4.0, 10.0);
  double worst = 0.0;
  const int trials = 5;
  for (int t = 0; t < trials; ++t) {
    const auto [lo, up] = random_ordered_pair(g, rng);
    const double k = kap(rng);
    FlowConfig cfg = FlowConfig::for_kappa(k);
    cfg.t_max = 2.0;
    worst = std::max(worst, comparison_trial(lo, up, EnergyParams(k), cfg).max_violation);
  }
  return {"comparison_principle", worst <= 1e-6,
          "max ordering violation " + fmt(worst) + " over " + std::to_string(trials) +
              " pairs"};
}

}  // namespace

std::vector<double> random_smooth_direction(const Grid& g, std::mt19937_64& rng,
                                            int modes) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(modes));
  for (int j = 0; j < modes; ++j) c[j] = nd(rng) / (j + 1.0);
  std::vector<double> v(static_cast<std::size_t>(g.n()) + 1, 0.0);
  const auto th = g.nodes();
  for (int i = 1; i < g.n(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < modes; ++j) acc += c[j] * std::sin((j + 1) * th[i]);
    v[i] = acc;
  }
  return v;
}

std::pair<Profile, Profile> random_ordered_pair(GridPtr g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(0.0, 0.5);
  std::uniform_int_distribution<int> mode(1, 6);
  const auto bump = random_smooth_direction(*g, rng, 5);
  const double b = amp(rng);
  const int k = mode(rng);
  const auto th = g->nodes();
  std::vector<double> lo(bump.size()), up(bump.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = pi + 0.3 * bump[i];
    up[i] = lo[i] + b * std::sin(th[i]) * (1 + 0.5 * std::sin(k * th[i]));
  }
  return {Profile(g, lo, 1, 1), Profile(std::move(g), up, 1, 1)};
}

std::vector<PropertyVerdict> run_property_suite(int n, std::uint64_t seed) {
  const GridPtr g = make_grid(n);
  std::mt19937_64 rng(seed);
  std::vector<PropertyVerdict> out;
  out.push_back(check_exact_solutions(g));
  out.push_back(check_energies(g));
  out.push_back(check_legendre(g));
  out.push_back(check_kappa4_forms(g));
  out.push_back(check_gradient_hessian(g, rng));
  out.push_back(check_certificates());
  out.push_back(check_eigenpairs(g));
  out.push_back(check_half_full_agreement(g));
  out.push_back(check_comparison(g, rng));
  return out;
}

}  // namespace ferro
