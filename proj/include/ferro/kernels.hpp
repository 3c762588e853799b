#pragma once

// Inner loops of the solver. Every kernel exists twice: the default
// OpenMP version in namespace ferro::kernels and a plain loop in
// ferro::kernels::serial kept as the reference the tests compare against.
//
// Reductions use a fixed block partition that does not depend on the thread
// count, so results are bitwise reproducible for any OMP_NUM_THREADS.

#include <cstddef>
#include <span>

namespace ferro {

class Grid;

namespace kernels {

/// Nodes per reduction block.
inline constexpr std::size_t kBlock = 256;
/// Loops shorter than this stay single-threaded.
inline constexpr std::size_t kParallelCutoff = 4096;

/// Sum_i w_i * v_i. An empty `values` means v == 1.
double weighted_sum(std::span<const double> w, std::span<const double> values);

/// Divergence-form Laplace-Beltrami stencil
///   (D u)_i = [a_{i+1/2}(u_{i+1} - u_i) - a_{i-1/2}(u_i - u_{i-1})] / (sin_i dtheta^2)
/// written to out[i] for lo < i < hi. Entries outside that range are untouched.
void divergence(const Grid& g, std::span<const double> u, std::span<double> out,
                int lo, int hi);

/// Euler-Lagrange residual
///   (D u)_i - sin(2u_i)/(2 sin^2) - (kappa/2) sin(2u_i - 2theta_i)
/// for lo < i < hi; out[lo] and out[hi] are set to zero.
void el_residual(const Grid& g, std::span<const double> u, double kappa,
                 std::span<double> out, int lo, int hi);

/// Second-variation potential cos(2u)/sin^2 + kappa cos(2u - 2theta) at the
/// interior nodes 1..n-1 (out has length n-1).
void potential(const Grid& g, std::span<const double> u, double kappa,
               std::span<double> out);

/// 1/2 Sum_{i+1/2} a_{i+1/2} (u_{i+1}-u_i)^2 / dtheta.
double dirichlet_energy(const Grid& g, std::span<const double> u);

/// 1/2 Sum_i w_i [sin^2(u_i)/sin^2(theta_i) + kappa sin^2(u_i - theta_i)].
double potential_energy(const Grid& g, std::span<const double> u, double kappa);

/// Number of eigenvalues below x of the symmetric tridiagonal matrix with
/// diagonal `diag` and squared off-diagonal `off_sq` (length dim-1).
int sturm_count(std::span<const double> diag, std::span<const double> off_sq,
                double x);

/// Bisection for eigenvalues first..first+count-1 (0-based, ascending).
/// Each index is bracketed independently, so indices run in parallel.
void bisect_eigenvalues(std::span<const double> diag,
                        std::span<const double> off_sq, double lower,
                        double upper, int first, std::span<double> out);

namespace serial {

double weighted_sum(std::span<const double> w, std::span<const double> values);
void divergence(const Grid& g, std::span<const double> u, std::span<double> out,
                int lo, int hi);
void el_residual(const Grid& g, std::span<const double> u, double kappa,
                 std::span<double> out, int lo, int hi);
void potential(const Grid& g, std::span<const double> u, double kappa,
               std::span<double> out);
double dirichlet_energy(const Grid& g, std::span<const double> u);
double potential_energy(const Grid& g, std::span<const double> u, double kappa);
void bisect_eigenvalues(std::span<const double> diag,
                        std::span<const double> off_sq, double lower,
                        double upper, int first, std::span<double> out);

}  // namespace serial
}  // namespace kernels
}  // namespace ferro
