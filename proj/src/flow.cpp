#include "ferro/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ferro/kernels.hpp"

namespace ferro {

std::string to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::stationary: return "stationary";
    case FlowStatus::horizon_reached: return "horizon_reached";
    case FlowStatus::blowup_suspected: return "blowup_suspected";
  }
  return "unknown";
}

void FlowConfig::validate() const {
  if (!(dt > 0) || !std::isfinite(dt)) throw std::invalid_argument("flow: dt must be > 0");
  if (!(t_max > 0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("flow: t_max must be > 0");
  }
  if (!(stationary_tol > 0)) throw std::invalid_argument("flow: stationary_tol must be > 0");
  if (record_every < 1) throw std::invalid_argument("flow: record_every must be >= 1");
  if (!(blowup_grad_threshold > 0)) {
    throw std::invalid_argument("flow: blowup_grad_threshold must be > 0");
  }
}

FlowConfig FlowConfig::for_kappa(double kappa) {
  FlowConfig c;
  c.dt = std::min(1e-2, 0.5 / std::max(kappa, 1.0));
  return c;
}

namespace {

constexpr double pi = std::numbers::pi;

// Holds the factored implicit matrix (I - dt L) for one grid, dt and
// index range [0, hi]. L is the Legendre part, an M-matrix, so the
// unpivoted Thomas factorization is safe and is done once.
class Stepper {
 public:
  Stepper(const Profile& p, double kappa, double dt, bool half)
      : g_(p.grid()), kappa_(kappa), dt_(dt), half_(half),
        hi_(half ? p.grid().n() / 2 : p.grid().n()),
        sum_ends_(p.m() + p.n_end()),
        u_(p.values().begin(), p.values().end()) {
    const auto s = g_.sin();
    const auto a = g_.flux();
    const double h2 = g_.step() * g_.step();
    const int dim = hi_ - 1;
    lower_.resize(dim);
    upper_.resize(dim);
    cprime_.resize(dim);
    inv_piv_.resize(dim);
    for (int i = 1; i < hi_; ++i) {
      const double c = dt / (s[i] * h2);
      lower_[i - 1] = -c * a[i - 1];
      upper_[i - 1] = -c * a[i];
    }
    for (int k = 0; k < dim; ++k) {
      const int i = k + 1;
      const double d = 1.0 + dt * ((a[i] + a[i - 1]) / (s[i] * h2) + 1.0 / (s[i] * s[i]));
      const double piv = k == 0 ? d : d - lower_[k] * cprime_[k - 1];
      inv_piv_[k] = 1.0 / piv;
      cprime_[k] = upper_[k] * inv_piv_[k];
    }
    rhs_.resize(dim);
    if (half_) mirror();
  }

  void advance() {
    const auto s = g_.sin();
    const auto th = g_.nodes();
    const int dim = hi_ - 1;
    const double half_k = 0.5 * kappa_;
    const double dt = dt_;
    const double* u = u_.data();
    double* r = rhs_.data();
#pragma omp parallel for if (dim >= static_cast<int>(kernels::kParallelCutoff))
    for (int k = 0; k < dim; ++k) {
      const int i = k + 1;
      const double ui = u[i];
      const double expl = (ui - 0.5 * std::sin(2 * ui)) / (s[i] * s[i]) -
                          half_k * std::sin(2 * ui - 2 * th[i]);
      r[k] = ui + dt * expl;
    }
    // Dirichlet values enter through the first and last rows.
    r[0] -= lower_[0] * u_[0];
    r[dim - 1] -= upper_[dim - 1] * u_[hi_];

    r[0] *= inv_piv_[0];
    for (int k = 1; k < dim; ++k) r[k] = (r[k] - lower_[k] * r[k - 1]) * inv_piv_[k];
    for (int k = dim - 1; k-- > 0;) r[k] -= cprime_[k] * r[k + 1];
    for (int k = 0; k < dim; ++k) u_[k + 1] = r[k];
    if (half_) mirror();
  }

  std::span<const double> values() const { return u_; }

 private:
  void mirror() {
    const int n = g_.n();
    const double total = sum_ends_ * pi;
    u_[n / 2] = 0.5 * total;
    for (int i = 1; i < n / 2; ++i) u_[n - i] = total - u_[i];
  }

  const Grid& g_;
  double kappa_;
  double dt_;
  bool half_;
  int hi_;
  int sum_ends_;
  std::vector<double> u_;
  std::vector<double> lower_, upper_, cprime_, inv_piv_, rhs_;
};

bool use_half(const Profile& p, const FlowConfig& cfg) {
  if (!cfg.reduce_hemispheric) return false;
  return is_hemispheric(p, 1e-12);
}

Stepper make_stepper(const Profile& p, double kappa, double dt, bool half) {
  return Stepper(p, kappa, dt, half);
}

double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

Profile step(const Profile& p, const EnergyParams& params, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("flow: dt must be > 0");
  Stepper st = make_stepper(p, params.kappa, dt, false);
  st.advance();
  const auto v = st.values();
  return Profile(p.grid_ptr(), std::vector<double>(v.begin(), v.end()), p.m(), p.n_end());
}

bool detect_blowup(std::span<const double> u, const Grid& grid, const FlowConfig& cfg) {
  for (double x : u) {
    if (!std::isfinite(x)) return true;
  }
  const int n = grid.n();
  const double inv = 1.0 / grid.step();
  // Nodes with theta < 5 dtheta or theta > pi - 5 dtheta; differences over
  // adjacent nodes on each side.
  for (int i = 0; i < 5; ++i) {
    if (std::abs(u[i + 1] - u[i]) * inv > cfg.blowup_grad_threshold) return true;
    if (std::abs(u[n - i] - u[n - i - 1]) * inv > cfg.blowup_grad_threshold) return true;
  }
  return false;
}

bool detect_blowup(const Profile& p, const FlowConfig& cfg) {
  return detect_blowup(p.values(), p.grid(), cfg);
}

FlowResult run(const Profile& p0, const EnergyParams& params, const FlowConfig& cfg) {
  cfg.validate();
  const Grid& g = p0.grid();
  const int n = g.n();
  const bool half = use_half(p0, cfg);
  Stepper st = make_stepper(p0, params.kappa, cfg.dt, half);

  FlowResult res(p0);
  res.reduced = half;
  std::vector<double> resid(p0.size());

  auto residual_now = [&] {
    kernels::el_residual(g, st.values(), params.kappa, resid, 0, n);
    return sup_abs(resid);
  };
  auto energy_now = [&] {
    return kernels::dirichlet_energy(g, st.values()) +
           kernels::potential_energy(g, st.values(), params.kappa);
  };
  auto snapshot = [&] {
    const auto v = st.values();
    return Profile(p0.grid_ptr(), std::vector<double>(v.begin(), v.end()), p0.m(),
                   p0.n_end());
  };
  auto record = [&](double t, double e, double r) {
    const Profile cur = snapshot();
    MonitorEntry me;
    me.t = t;
    me.step = res.steps;
    bool ok = true;
    if (cfg.wedge) {
      const auto verdict = wedge_check(cur, *cfg.wedge);
      if (!inside(verdict)) {
        ok = false;
        me.wedge_violation = std::get<WedgeViolation>(verdict);
      }
    }
    me.hemispheric_deviation = hemispheric_deviation(cur);
    res.monitor_log.push_back(me);
    res.energy_trace.push_back({t, e, r, ok});
  };

  double e = energy_now();
  double r = residual_now();
  res.initial_energy = e;
  const double slack = 1e-10 * (1.0 + std::abs(e));
  record(0.0, e, r);

  const long max_steps = static_cast<long>(std::ceil(cfg.t_max / cfg.dt - 1e-9));
  bool recorded_last = true;
  if (r < cfg.stationary_tol) {
    res.status = FlowStatus::stationary;
  } else {
    res.status = FlowStatus::horizon_reached;
    while (res.steps < max_steps) {
      st.advance();
      ++res.steps;
      const double t = res.steps * cfg.dt;
      if (detect_blowup(st.values(), g, cfg)) {
        res.status = FlowStatus::blowup_suspected;
        recorded_last = false;
        break;
      }
      const double e_new = energy_now();
      const double inc = e_new - e;
      if (inc > res.max_energy_increase) res.max_energy_increase = inc;
      if (inc > slack) ++res.energy_violations;
      e = e_new;
      r = residual_now();
      recorded_last = false;
      if (res.steps % cfg.record_every == 0) {
        record(t, e, r);
        recorded_last = true;
      }
      if (r < cfg.stationary_tol) {
        res.status = FlowStatus::stationary;
        break;
      }
    }
  }
  res.t_final = res.steps * cfg.dt;
  if (!recorded_last) {
    if (res.status == FlowStatus::blowup_suspected) {
      bool finite = true;
      for (double x : st.values()) finite = finite && std::isfinite(x);
      if (finite) {
        e = energy_now();
        r = residual_now();
        record(res.t_final, e, r);
      }
    } else {
      record(res.t_final, e, r);
    }
  }
  res.final_residual = r;
  bool finite = true;
  for (double x : st.values()) finite = finite && std::isfinite(x);
  if (finite) res.final = snapshot();
  return res;
}

ComparisonVerdict comparison_trial(const Profile& lower, const Profile& upper,
                                   const EnergyParams& params, const FlowConfig& cfg) {
  cfg.validate();
  if (lower.grid().n() != upper.grid().n()) {
    throw std::invalid_argument("comparison_trial: profiles on different grids");
  }
  const int n = lower.grid().n();
  for (int i = 0; i <= n; ++i) {
    if (lower[i] > upper[i] + 1e-12) {
      throw std::invalid_argument("comparison_trial: initial data not ordered at node " +
                                  std::to_string(i));
    }
  }
  Stepper lo = make_stepper(lower, params.kappa, cfg.dt, use_half(lower, cfg));
  Stepper up = make_stepper(upper, params.kappa, cfg.dt, use_half(upper, cfg));
  ComparisonVerdict v;
  const long max_steps = static_cast<long>(std::ceil(cfg.t_max / cfg.dt - 1e-9));
  for (long k = 1; k <= max_steps; ++k) {
    lo.advance();
    up.advance();
    const auto a = lo.values();
    const auto b = up.values();
    for (int i = 0; i <= n; ++i) {
      const double d = a[i] - b[i];
      if (d > v.max_violation) {
        v.max_violation = d;
        v.worst_node = i;
        v.worst_time = k * cfg.dt;
      }
    }
    v.steps = k;
  }
  v.t_final = v.steps * cfg.dt;
  return v;
}

}  // namespace ferro
