#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ferro/grid.hpp"

namespace ferro {

/// Discrete profile h: [0, pi] -> R of an axisymmetric field, with
/// h(0) = m*pi and h(pi) = n_end*pi.
///
/// The boundary integers are stored, and the end values are always written
/// as m*pi and n_end*pi, never read back from floating-point data.
class Profile {
 public:
  /// `values` must have grid->n()+1 finite entries; the end entries are
  /// overwritten with m*pi and n_end*pi.
  Profile(GridPtr grid, std::vector<double> values, int m, int n_end);

  /// Profile with h(theta_i) = fn(theta_i) and the given boundary class.
  template <class Fn>
  static Profile from_function(GridPtr grid, int m, int n_end, Fn&& fn) {
    std::vector<double> v(static_cast<std::size_t>(grid->n()) + 1);
    const auto th = grid->nodes();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(th[i]);
    return Profile(std::move(grid), std::move(v), m, n_end);
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  int m() const { return m_; }
  int n_end() const { return n_end_; }
  std::size_t size() const { return values_.size(); }

  /// Replace the interior values (end values stay pinned).
  void set_values(std::span<const double> v);

  /// Largest |h_i - other_i|. Both profiles must live on grids with equal n.
  double sup_distance(const Profile& other) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  int m_;
  int n_end_;
};

// Builtin profiles.
Profile constant_pi(GridPtr grid);
Profile identity_profile(GridPtr grid);   // h = theta, class (0, 1)
Profile double_angle(GridPtr grid);       // h = 2 theta, class (0, 2)

/// Mapping degree from the boundary integers: ((-1)^m - (-1)^n_end) / 2.
/// For profiles this is always an integer in {-1, 0, 1}.
int degree(const Profile& p);

/// (1/2) Int_0^pi h' sin(h) dtheta by the trapezoid rule with centered
/// differences at interior nodes (the integrand vanishes at the poles).
double degree_integral(const Profile& p);

/// h'(theta_i): centered inside, one-sided second order at the ends.
std::vector<double> derivative(const Profile& p);

/// theta -> 2 pi k - h(pi - theta) with k = (m + n_end)/2. Throws
/// std::invalid_argument("not hemispheric-compatible ...") if m + n_end is odd.
Profile antipodal_reflect(const Profile& p);

/// max_i |h_i - (2 pi k - h_{n-i})|, or nullopt when m + n_end is odd.
std::optional<double> hemispheric_deviation(const Profile& p);

bool is_hemispheric(const Profile& p, double tol);

/// Exact odd-symmetric projection h <- (h + h_A)/2, mirrored so the result is
/// hemispheric bitwise. Requires m + n_end even.
Profile symmetrize(const Profile& p);

enum class WedgeKind { W1, W2 };

struct WedgeSpec {
  WedgeKind kind = WedgeKind::W1;
  double tolerance = 0.0;

  WedgeSpec() = default;
  WedgeSpec(WedgeKind k, double tol);
};

struct WedgeInside {};
struct WedgeViolation {
  int node = 0;
  double excess = 0.0;
};
using WedgeVerdict = std::variant<WedgeInside, WedgeViolation>;

inline bool inside(const WedgeVerdict& v) {
  return std::holds_alternative<WedgeInside>(v);
}

/// W1: pi <= h <= pi + theta, W2: theta <= h <= 2 theta, both checked on the
/// nodes with theta <= pi/2. Reports the first violating node.
WedgeVerdict wedge_check(const Profile& p, const WedgeSpec& w);

std::string to_string(WedgeKind k);
std::optional<WedgeKind> parse_wedge_kind(std::string_view s);

/// Sawtooth first-type initial profile in class (1, 1):
///   pi + theta on [0, t0], linear through (pi/2, pi) on (t0, pi - t0],
///   theta on (pi - t0, pi], with t0 = pi/2 - pi/(2 sqrt(kappa)).
/// Throws std::invalid_argument for kappa < 4.
Profile make_initial_first_type(GridPtr grid, double kappa);

/// The angle t0 used by make_initial_first_type.
double first_type_corner(double kappa);

/// h = 2 theta, class (0, 2).
Profile make_initial_second_type(GridPtr grid);

/// g_i = (h'(theta_i) - 1) sin(theta_i); zero at both poles.
std::vector<double> perturbation_direction(const Profile& p);

}  // namespace ferro
