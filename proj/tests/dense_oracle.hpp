#pragma once

// Brute-force eigenvalues of a tridiagonal operator through a dense
// self-adjoint solve. Independent of the bisection path.

#include <Eigen/Dense>
#include <vector>

#include "ferro/tridiagonal.hpp"

namespace ferro::testing {

inline std::vector<double> dense_eigenvalues(const TridiagonalOperator& op) {
  const int n = op.dimension;
  // Symmetrize W^{1/2} A W^{-1/2} from the unsymmetric entries directly.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = op.diag[i];
    if (i + 1 < n) {
      const double s = std::sqrt(op.upper(i) * op.lower(i));
      const double sign = op.coupling[i] < 0 ? -1.0 : 1.0;
      a(i, i + 1) = a(i + 1, i) = sign * s;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + n);
}

}  // namespace ferro::testing
