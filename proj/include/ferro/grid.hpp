#pragma once

#include <memory>
#include <span>
#include <vector>

namespace ferro {

/// Uniform discretization of the polar angle interval [0, pi].
///
/// Nodes are theta_i = i * dtheta for i = 0..n with dtheta = pi / n. The trig
/// tables are mirrored about the equator (sin exactly even, cos exactly odd)
/// so that reflection theta -> pi - theta is exact on the discrete level.
///
/// Quadrature of f(theta) sin(theta) uses the trapezoid weights
/// w_i = sin(theta_i) * dtheta, which vanish at the poles.
class Grid {
 public:
  /// Throws std::invalid_argument unless n >= 16 and n is even.
  explicit Grid(int n);

  int n() const { return n_; }
  int equator() const { return n_ / 2; }
  double step() const { return step_; }

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> half_nodes() const { return half_nodes_; }
  std::span<const double> sin() const { return sin_; }
  std::span<const double> cos() const { return cos_; }
  std::span<const double> weights() const { return weights_; }

  /// Flux coefficients of the divergence-form stencil at theta_{i+1/2},
  /// i = 0..n-1. Equal to sin(theta_{i+1/2}) scaled by (dtheta/2)/sin(dtheta/2),
  /// which makes the stencil exact on linear profiles.
  std::span<const double> flux() const { return flux_; }

  double weight_sum() const;

 private:
  int n_;
  double step_;
  std::vector<double> nodes_;
  std::vector<double> half_nodes_;
  std::vector<double> sin_;
  std::vector<double> cos_;
  std::vector<double> weights_;
  std::vector<double> flux_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int n);

/// Sum_i w_i * values_i, i.e. the integral of values(theta) sin(theta) over
/// [0, pi]. Throws std::invalid_argument on a length mismatch or a non-finite
/// entry (the message names the node index).
double quad_sin(const Grid& grid, std::span<const double> values);

}  // namespace ferro
