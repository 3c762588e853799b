#pragma once

#include <span>
#include <vector>

#include "ferro/profile.hpp"
#include "ferro/tridiagonal.hpp"

namespace ferro {

struct EnergyParams {
  double kappa = 0.0;

  EnergyParams() = default;
  /// Throws std::invalid_argument for negative or non-finite kappa.
  explicit EnergyParams(double k);
};

/// Reduced energy
///   E(h) = 1/2 Int_0^pi [h'^2 sin + sin^2 h / sin + kappa sin^2(h - theta) sin] dtheta.
///
/// The gradient term is summed over half nodes with the stencil's flux
/// weights, the potential terms by the sin-weighted trapezoid rule. With this
/// pairing el_residual is exactly the negative sin-weighted gradient of E.
double reduced_energy(const Profile& p, const EnergyParams& params);

/// 2 pi E(h): the energy of the axisymmetric field on the sphere.
double full_energy(const Profile& p, const EnergyParams& params);

/// Euler-Lagrange residual
///   h'' + cot(theta) h' - sin(2h)/(2 sin^2) - (kappa/2) sin(2h - 2theta)
/// in divergence form at interior nodes. Returned node-indexed with zeros at
/// the two poles.
std::vector<double> el_residual(const Profile& p, const EnergyParams& params);

/// max_i |el_residual_i|.
double sup_residual(const Profile& p, const EnergyParams& params);

/// Quadratic form
///   Int [g'^2 sin + (cos 2h / sin^2 + kappa cos(2h - 2theta)) g^2 sin] dtheta
/// evaluated as <A g, g>_sin for the operator of assemble_second_variation.
/// Throws std::invalid_argument if g is nonzero at a pole.
double second_variation_form(const Profile& p, const EnergyParams& params,
                             std::span<const double> g);

/// Operator A g = -(1/sin)(sin g')' + V g, V = cos 2h / sin^2 + kappa cos(2h - 2theta),
/// on the n-1 interior nodes with Dirichlet rows removed. A is the exact
/// Hessian of the discrete energy divided by the quadrature weights, and the
/// Jacobian of el_residual is exactly -A.
TridiagonalOperator assemble_second_variation(const Profile& p,
                                              const EnergyParams& params);

/// <u, v>_sin over node-indexed arrays.
double inner_sin(const Grid& g, std::span<const double> u, std::span<const double> v);

struct CertificateReport {
  double kappa = 0.0;
  int samples = 0;
  double slack = 0.0;
  // f(x, y) = sin 2x - sin 2y - kappa sin(2y - 2x) sin^2 x
  double f_min_w1 = 0.0;           // claim: >= 0 on W1
  double f_max_w2 = 0.0;           // claim: <= 0 on W2
  // lambda(x, y) = cos 2x - cos 2y - kappa sin(2y - 2x) sin x cos x
  double lambda_min_w1_quarter = 0.0;  // claim: >= 0 on W1, x <= pi/4
  double lambda_max_w2 = 0.0;          // claim: <= 0 on W2
  int violations = 0;

  bool ok() const { return violations == 0; }
};

double certificate_f(double kappa, double x, double y);
double certificate_lambda(double kappa, double x, double y);

/// Dense check of the sign claims of f and lambda on the wedges. Each wedge
/// is sampled on a samples x samples lattice in (x, t) with y = lo(x) + t (hi(x) - lo(x)).
/// Requires kappa >= 4 and samples >= 100.
CertificateReport wedge_certificates(double kappa, int samples);

}  // namespace ferro
