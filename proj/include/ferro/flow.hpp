#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ferro/energy.hpp"
#include "ferro/profile.hpp"

namespace ferro {

enum class FlowStatus { stationary, horizon_reached, blowup_suspected };

std::string to_string(FlowStatus s);

struct FlowConfig {
  double dt = 1e-2;
  double t_max = 1e3;
  /// Stop once the sup-norm of the Euler-Lagrange residual drops below this.
  double stationary_tol = 1e-9;
  /// Trace and monitor stride, in steps. The initial and final states are
  /// always recorded.
  int record_every = 100;
  std::optional<WedgeSpec> wedge;
  double blowup_grad_threshold = 1e3;
  /// Hemispheric initial data is evolved on [0, pi/2] with h(pi/2) = k pi
  /// and mirrored after every step.
  bool reduce_hemispheric = true;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// dt = min(1e-2, 0.5 / max(kappa, 1)), other fields default.
  static FlowConfig for_kappa(double kappa);
};

struct TracePoint {
  double t = 0.0;
  double energy = 0.0;
  double sup_residual = 0.0;
  bool wedge_ok = true;
};

struct MonitorEntry {
  double t = 0.0;
  long step = 0;
  std::optional<WedgeViolation> wedge_violation;
  /// Deviation from hemispheric symmetry; nullopt when m + n_end is odd.
  std::optional<double> hemispheric_deviation;
};

struct FlowResult {
  explicit FlowResult(Profile p) : final(std::move(p)) {}

  Profile final;
  FlowStatus status = FlowStatus::horizon_reached;
  std::vector<TracePoint> energy_trace;
  std::vector<MonitorEntry> monitor_log;
  long steps = 0;
  double t_final = 0.0;
  double final_residual = 0.0;
  double initial_energy = 0.0;
  /// Largest single-step energy increase (0 if the energy never rose).
  double max_energy_increase = 0.0;
  /// Steps whose increase exceeded 1e-10 (1 + |E0|).
  int energy_violations = 0;
  bool reduced = false;
};

/// One IMEX step of
///   h_t = h'' + cot h' - sin 2h / (2 sin^2) - (kappa/2) sin(2h - 2theta)
/// on the full interval. Implicit: the Legendre part (1/sin)(sin h')' - h/sin^2.
/// Explicit: (h - sin(2h)/2)/sin^2 - (kappa/2) sin(2h - 2theta).
/// Fixed points are exactly the zeros of el_residual. Pole values stay m pi, n pi.
Profile step(const Profile& p, const EnergyParams& params, double dt);

/// Integrates until stationary, t >= t_max, or the blowup detector fires.
FlowResult run(const Profile& p0, const EnergyParams& params, const FlowConfig& cfg);

/// True iff some |h'| within 5 dtheta of a pole exceeds
/// cfg.blowup_grad_threshold, or any value is non-finite.
bool detect_blowup(std::span<const double> values, const Grid& grid,
                   const FlowConfig& cfg);
bool detect_blowup(const Profile& p, const FlowConfig& cfg);

struct ComparisonVerdict {
  /// max over steps and nodes of (lower - upper), clamped at 0.
  double max_violation = 0.0;
  double worst_time = 0.0;
  int worst_node = -1;
  long steps = 0;
  double t_final = 0.0;
};

/// Evolves both profiles with identical steps up to cfg.t_max (no early stop)
/// and tracks the worst ordering violation. Throws std::invalid_argument if
/// lower > upper + 1e-12 somewhere at t = 0.
ComparisonVerdict comparison_trial(const Profile& lower, const Profile& upper,
                                   const EnergyParams& params, const FlowConfig& cfg);

}  // namespace ferro
