#include "ferro/profile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ferro {

namespace {
constexpr double kPi = std::numbers::pi;
}

Profile::Profile(GridPtr grid, std::vector<double> values, int m, int n_end)
    : grid_(std::move(grid)), values_(std::move(values)), m_(m), n_end_(n_end) {
  if (!grid_) throw std::invalid_argument("profile: null grid");
  const auto expected = static_cast<std::size_t>(grid_->n()) + 1;
  if (values_.size() != expected) {
    throw std::invalid_argument("profile: expected " + std::to_string(expected) +
                                " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 1; i + 1 < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("profile: non-finite value at node " +
                                  std::to_string(i));
    }
  }
  values_.front() = m_ * kPi;
  values_.back() = n_end_ * kPi;
}

void Profile::set_values(std::span<const double> v) {
  if (v.size() != values_.size()) {
    throw std::invalid_argument("profile: set_values length mismatch");
  }
  std::copy(v.begin() + 1, v.end() - 1, values_.begin() + 1);
}

double Profile::sup_distance(const Profile& other) const {
  if (other.size() != size()) {
    throw std::invalid_argument("profile: sup_distance on different grids");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    d = std::max(d, std::abs(values_[i] - other.values_[i]));
  }
  return d;
}

Profile constant_pi(GridPtr grid) {
  return Profile::from_function(std::move(grid), 1, 1,
                                [](double) { return kPi; });
}

Profile identity_profile(GridPtr grid) {
  return Profile::from_function(std::move(grid), 0, 1,
                                [](double t) { return t; });
}

Profile double_angle(GridPtr grid) {
  return Profile::from_function(std::move(grid), 0, 2,
                                [](double t) { return 2 * t; });
}

int degree(const Profile& p) {
  const int cm = p.m() % 2 == 0 ? 1 : -1;
  const int cn = p.n_end() % 2 == 0 ? 1 : -1;
  return (cm - cn) / 2;
}

std::vector<double> derivative(const Profile& p) {
  const auto h = p.values();
  const int n = p.grid().n();
  const double dt = p.grid().step();
  std::vector<double> d(h.size());
  for (int i = 1; i < n; ++i) d[i] = (h[i + 1] - h[i - 1]) / (2 * dt);
  d[0] = (-3 * h[0] + 4 * h[1] - h[2]) / (2 * dt);
  d[n] = (3 * h[n] - 4 * h[n - 1] + h[n - 2]) / (2 * dt);
  return d;
}

double degree_integral(const Profile& p) {
  const auto h = p.values();
  const int n = p.grid().n();
  const double dt = p.grid().step();
  double acc = 0.0;
  for (int i = 1; i < n; ++i) {
    acc += (h[i + 1] - h[i - 1]) / (2 * dt) * std::sin(h[i]);
  }
  // End nodes: sin(m pi) = 0 up to rounding, weight dt/2.
  return 0.5 * acc * dt;
}

Profile antipodal_reflect(const Profile& p) {
  if ((p.m() + p.n_end()) % 2 != 0) {
    throw std::invalid_argument("not hemispheric-compatible: m + n = " +
                                std::to_string(p.m() + p.n_end()) + " is odd");
  }
  const int n = p.grid().n();
  const double shift = (p.m() + p.n_end()) * kPi;
  std::vector<double> v(p.size());
  for (int i = 0; i <= n; ++i) v[i] = shift - p[n - i];
  // h(0) = 2 pi k - n_end pi, h(pi) = 2 pi k - m pi.
  const int k2 = p.m() + p.n_end();
  return Profile(p.grid_ptr(), std::move(v), k2 - p.n_end(), k2 - p.m());
}

std::optional<double> hemispheric_deviation(const Profile& p) {
  if ((p.m() + p.n_end()) % 2 != 0) return std::nullopt;
  const int n = p.grid().n();
  const double shift = (p.m() + p.n_end()) * kPi;
  double dev = 0.0;
  for (int i = 0; i <= n; ++i) {
    dev = std::max(dev, std::abs(p[i] - (shift - p[n - i])));
  }
  return dev;
}

bool is_hemispheric(const Profile& p, double tol) {
  const auto dev = hemispheric_deviation(p);
  return dev && *dev <= tol;
}

Profile symmetrize(const Profile& p) {
  if ((p.m() + p.n_end()) % 2 != 0) {
    throw std::invalid_argument("not hemispheric-compatible: cannot symmetrize");
  }
  const int n = p.grid().n();
  const int half = n / 2;
  const double shift = (p.m() + p.n_end()) * kPi;
  std::vector<double> v(p.values().begin(), p.values().end());
  for (int i = 1; i < half; ++i) {
    const double a = 0.5 * (p[i] + (shift - p[n - i]));
    v[i] = a;
    v[n - i] = shift - a;
  }
  v[half] = 0.5 * shift;
  return Profile(p.grid_ptr(), std::move(v), p.m(), p.n_end());
}

WedgeSpec::WedgeSpec(WedgeKind k, double tol) : kind(k), tolerance(tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("wedge tolerance must be >= 0");
}

WedgeVerdict wedge_check(const Profile& p, const WedgeSpec& w) {
  const auto th = p.grid().nodes();
  const int half = p.grid().equator();
  for (int i = 0; i <= half; ++i) {
    double lo = 0.0;
    double hi = 0.0;
    if (w.kind == WedgeKind::W1) {
      lo = kPi;
      hi = kPi + th[i];
    } else {
      lo = th[i];
      hi = 2 * th[i];
    }
    const double below = lo - p[i];
    const double above = p[i] - hi;
    const double excess = std::max(below, above);
    if (excess > w.tolerance) return WedgeViolation{i, excess};
  }
  return WedgeInside{};
}

std::string to_string(WedgeKind k) { return k == WedgeKind::W1 ? "W1" : "W2"; }

std::optional<WedgeKind> parse_wedge_kind(std::string_view s) {
  if (s == "W1" || s == "w1") return WedgeKind::W1;
  if (s == "W2" || s == "w2") return WedgeKind::W2;
  return std::nullopt;
}

double first_type_corner(double kappa) {
  return kPi / 2 - kPi / (2 * std::sqrt(kappa));
}

Profile make_initial_first_type(GridPtr grid, double kappa) {
  if (!(kappa >= 4.0)) {
    throw std::invalid_argument("first-type initial profile needs kappa >= 4, got " +
                                std::to_string(kappa));
  }
  const double t0 = first_type_corner(kappa);
  const double slope = t0 / (kPi / 2 - t0);
  auto p = Profile::from_function(grid, 1, 1, [&](double t) {
    if (t <= t0) return kPi + t;
    if (t <= kPi - t0) return kPi - slope * (t - kPi / 2);
    return t;
  });
  // The node formula is symmetric only up to rounding; pin the exact mirror
  // image and the equator value.
  return symmetrize(p);
}

Profile make_initial_second_type(GridPtr grid) { return double_angle(std::move(grid)); }

std::vector<double> perturbation_direction(const Profile& p) {
  auto d = derivative(p);
  const auto s = p.grid().sin();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (d[i] - 1.0) * s[i];
  d.front() = 0.0;
  d.back() = 0.0;
  return d;
}

}  // namespace ferro
