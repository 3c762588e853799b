#pragma once

#include <string>
#include <vector>

#include "ferro/energy.hpp"
#include "ferro/grid.hpp"
#include "ferro/profile.hpp"
#include "ferro/tridiagonal.hpp"

namespace ferro {

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  /// Node-indexed (dimension + 2 entries, zero at both ends), normalized in
  /// the sin-weighted inner product with step `quad_step`, sign fixed so the
  /// component sum is positive.
  std::vector<std::vector<double>> eigenvectors;
  /// Number of eigenvalues of the whole operator below -tol.
  int morse_index = 0;
  double tol = 0.0;
  /// Some computed eigenvalue has |lambda| <= tol.
  bool marginal = false;
};

/// k lowest eigenpairs of a sin-self-adjoint tridiagonal operator by Sturm
/// bisection on the symmetrized matrix and inverse iteration. `quad_step`
/// scales the weights in the normalization (dtheta for grid operators).
SpectrumResult eigs_lowest(const TridiagonalOperator& op, int k, double tol = 1e-6,
                           double quad_step = 1.0);

struct LegendreReport {
  int n = 0;
  int l_max = 0;
  /// Eigenvalues of the discrete Legendre operator (1/sin)(sin g')' - g/sin^2,
  /// descending, compared to -l(l+1), l = 1..l_max.
  std::vector<double> eigenvalues;
  std::vector<double> expected;
  double max_deviation = 0.0;
  /// The same on the grid with 2n intervals.
  double refined_max_deviation = 0.0;
  /// log2(max_deviation / refined_max_deviation).
  double observed_order = 0.0;
  /// Correlation of the first eigenfunction with sin(theta).
  double first_mode_correlation = 0.0;
  /// max over the first l_max eigenfunctions of |g| at the nodes next to the
  /// poles divided by max |g|.
  double endpoint_ratio = 0.0;
};

/// Builds the Legendre operator from the second variation at h = 2 theta,
/// kappa = 4 shifted by the constant 4, and checks it against -l(l+1).
LegendreReport legendre_validation(const Grid& grid, int l_max);

enum class Stability { minimum, saddle, marginal };

std::string to_string(Stability s);

struct Classification {
  SpectrumResult spectrum;
  /// delta^2 E along g = (h' - 1) sin theta.
  double explicit_direction_value = 0.0;
  Stability stability = Stability::minimum;
};

/// Spectrum of the second variation at a stationary profile, with
/// tol = 1e-6 max(1, kappa). Throws std::invalid_argument if the sup residual
/// is >= 1e-6.
Classification classify(const Profile& p, const EnergyParams& params, int k);

}  // namespace ferro
