#pragma once

#include <span>
#include <vector>

namespace ferro {

/// Tridiagonal operator on interior nodes that is self-adjoint in the
/// sin-weighted inner product <x, y> = Sum_i weight_i x_i y_i.
///
/// Stored as A = W^{-1} K with K symmetric:
///   A_ii       = diag_i
///   A_{i,i+1}  = coupling_i / weight_i
///   A_{i+1,i}  = coupling_i / weight_{i+1}
/// so W^{1/2} A W^{-1/2} is symmetric with off-diagonal
/// coupling_i / sqrt(weight_i weight_{i+1}).
struct TridiagonalOperator {
  int dimension = 0;
  std::vector<double> diag;      // dimension
  std::vector<double> coupling;  // dimension - 1
  std::vector<double> weight;    // dimension, all > 0

  double upper(int i) const { return coupling[i] / weight[i]; }
  double lower(int i) const { return coupling[i] / weight[i + 1]; }

  std::vector<double> apply(std::span<const double> x) const;

  /// Off-diagonal of the symmetrized matrix.
  std::vector<double> symmetric_offdiag() const;

  /// A + c I.
  TridiagonalOperator shifted(double c) const;

  /// Gershgorin interval of the symmetrized matrix.
  std::pair<double, double> gershgorin() const;

  /// Infinity norm of the symmetrized matrix.
  double norm() const;

  void validate() const;
};

/// Thomas algorithm without pivoting; meant for diagonally dominant systems.
/// lower/upper have length n-1. Throws std::runtime_error on a zero pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

/// Gaussian elimination with partial pivoting (indefinite or nearly singular
/// systems). Throws std::runtime_error if a pivot is exactly zero.
std::vector<double> solve_tridiagonal_pivoted(std::span<const double> lower,
                                              std::span<const double> diag,
                                              std::span<const double> upper,
                                              std::span<const double> rhs);

}  // namespace ferro
