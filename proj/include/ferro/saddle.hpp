#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ferro/energy.hpp"
#include "ferro/flow.hpp"
#include "ferro/profile.hpp"
#include "ferro/spectrum.hpp"
#include "ferro/stationary.hpp"

namespace ferro {

enum class SaddleType { first, second };
enum class Provenance { flow, continuation, flow_then_newton, exact };

std::string to_string(SaddleType t);
std::string to_string(Provenance p);
std::optional<SaddleType> parse_saddle_type(std::string_view s);

struct SaddleReport {
  SaddleReport(double k, SaddleType t, Profile p)
      : kappa(k), type(t), profile(std::move(p)) {}

  double kappa = 0.0;
  SaddleType type = SaddleType::first;
  Profile profile;
  double energy = 0.0;
  double residual = 0.0;
  SpectrumResult spectrum;
  Stability stability = Stability::minimum;
  double explicit_direction_value = 0.0;
  WedgeVerdict wedge_verdict;
  bool hemispheric = false;
  Provenance provenance = Provenance::flow_then_newton;
  /// Explicit direction is negative and some eigenvalue is positive.
  bool certified = false;
  /// Flow status and time when a flow was run.
  std::optional<FlowStatus> flow_status;
  double flow_time = 0.0;
};

/// Problems with a report's invariants (empty when valid): residual < 1e-9,
/// boundary class (1,1) or (0,2), degree 0, wedge and hemispheric flags for
/// first-type reports.
std::vector<std::string> validate_report(const SaddleReport& r);

/// Flow ended in the blowup detector. Never retried.
class BlowupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Continuation below 4 stopped before the requested kappa.
class ContinuationError : public std::runtime_error {
 public:
  ContinuationError(const std::string& what, double last_kappa)
      : std::runtime_error(what), last_kappa_(last_kappa) {}
  double last_successful_kappa() const { return last_kappa_; }

 private:
  double last_kappa_;
};

struct PipelineOptions {
  FlowConfig flow{};
  /// Replace flow.dt by FlowConfig::for_kappa(kappa).dt.
  bool auto_dt = true;
  NewtonConfig newton{};
  /// Continuation step below kappa = 4.
  double continuation_dk = 0.05;
  int eigen_count = 4;
  double wedge_tol = 1e-8;
};

/// kappa >= 4. Flow from the sawtooth profile, Newton polish, classify.
SaddleReport find_first_type(double kappa, GridPtr grid, const PipelineOptions& opt = {});

/// kappa > 0. kappa == 4: the exact 2 theta. kappa > 4: flow from 2 theta and
/// Newton polish. kappa < 4: continuation from (4, 2 theta).
SaddleReport find_second_type(double kappa, GridPtr grid, const PipelineOptions& opt = {});

/// Smallest even n >= max(n_requested, 32 sqrt(kappa)).
int grid_size_for(double kappa, int n_requested);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SweepRow {
  double kappa = 0.0;
  SaddleType type = SaddleType::first;
  double energy = kNaN;
  double lambda1 = kNaN;
  double lambda2 = kNaN;
  double dir_value = kNaN;
  /// certified, marginal, not_certified, or a failure tag.
  std::string status;
  int n_used = 0;
  std::optional<Profile> profile;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double estimate() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by kappa within type, first type first
  /// Sign change of the first-type explicit-direction value, from >= 0 to < 0.
  std::optional<Bracket> kappa0;
  /// Sign change of the first-type lowest eigenvalue (reported alongside).
  std::optional<Bracket> kappa0_eigen;
  /// Lower edge of the second-type branch below 4.
  std::optional<Bracket> kappa1;
};

struct SweepOptions {
  PipelineOptions pipeline{};
  int n = 1024;
  double bisect_width = 0.05;
  bool keep_profiles = true;
};

/// Runs the requested pipelines at each kappa (ascending, positive). Per-kappa
/// failures are recorded in rows, never thrown.
SweepResult sweep(const std::vector<double>& kappas, const std::vector<SaddleType>& types,
                  const SweepOptions& opt = {});

}  // namespace ferro
