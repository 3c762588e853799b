#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ferro/energy.hpp"
#include "ferro/profile.hpp"

namespace ferro {

struct NewtonConfig {
  int max_iter = 50;
  /// Target sup-norm of the residual. The residual cannot go below roughly
  /// eps max|h| / dtheta^2; an iterate stuck at that floor is accepted too.
  double residual_tol = 1e-10;
  /// Initial step length; backtracking halves it down to 2^-20.
  double damping = 1.0;
  /// Keep hemispheric starts exactly hemispheric.
  bool preserve_hemispheric = true;

  void validate() const;
};

struct NewtonResult {
  Profile profile;
  int iterations = 0;
  double residual = 0.0;
  /// Converged at the rounding floor rather than below residual_tol.
  bool at_rounding_floor = false;
};

class NewtonError : public std::runtime_error {
 public:
  NewtonError(const std::string& what, double last_residual, int iterations,
              bool singular)
      : std::runtime_error(what), last_residual_(last_residual),
        iterations_(iterations), singular_(singular) {}
  double last_residual() const { return last_residual_; }
  int iterations() const { return iterations_; }
  /// The Jacobian was exactly singular (a fold or bifurcation nearby).
  bool singular() const { return singular_; }

 private:
  double last_residual_;
  int iterations_;
  bool singular_;
};

/// Estimate of the smallest attainable sup residual for profile p.
double residual_floor(const Profile& p);

/// Damped Newton on el_residual(h) = 0 with the exact tridiagonal Jacobian.
/// Throws NewtonError on non-convergence.
NewtonResult newton_solve(const Profile& start, const EnergyParams& params,
                          const NewtonConfig& cfg = {});

struct BranchPoint {
  double kappa = 0.0;
  Profile profile;
  double energy = 0.0;
  double residual = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct Branch {
  std::vector<BranchPoint> points;
  bool reached_target = false;
  /// When the branch stops early: last converged kappa and the kappa whose
  /// Newton solve failed.
  std::optional<std::pair<double, double>> failure_bracket;
  std::string failure_reason;
};

/// Natural-parameter continuation kappa_j = start_kappa + j dk (last step
/// clamped to target), each solve started from the previous solution.
/// The start itself is re-solved at start_kappa. Throws NewtonError if that
/// first solve fails, std::invalid_argument if dk points away from target.
Branch continue_branch(double start_kappa, const Profile& start, double target_kappa,
                       double dk, const NewtonConfig& cfg = {});

}  // namespace ferro
