// ferro: command-line driver for the profile flow, saddle pipelines, sweeps,
// spectra and the property suite.
//
// Exit codes: 0 success, 1 invalid input or failure, 2 flow horizon reached
// or continuation stopped early, 3 blowup suspected.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ferro/energy.hpp"
#include "ferro/flow.hpp"
#include "ferro/profile_io.hpp"
#include "ferro/saddle.hpp"
#include "ferro/spectrum.hpp"
#include "ferro/stationary.hpp"
#include "ferro/validate.hpp"
#include "run_io.hpp"

namespace fs = std::filesystem;
using namespace ferro;
using cli::ojson;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kHorizon = 2;
constexpr int kBlowup = 3;

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void write_timing(const fs::path& dir, const std::string& hash, const Clock& c) {
  cli::write_json(dir / "timing.json", hash, ojson{{"wall_seconds", c.seconds()}});
}

// Builtin name or CSV path. Builtins need n; a CSV brings its own grid.
struct Loaded {
  Profile profile;
  std::optional<double> file_kappa;
};

Loaded load_profile(const std::string& spec, int n, double kappa) {
  if (spec == "pi") return {constant_pi(make_grid(n)), {}};
  if (spec == "theta") return {identity_profile(make_grid(n)), {}};
  if (spec == "two-theta") return {double_angle(make_grid(n)), {}};
  if (spec == "first-type") return {make_initial_first_type(make_grid(n), kappa), {}};
  if (!fs::exists(spec)) {
    throw std::runtime_error("profile '" + spec +
                             "' is neither a builtin (pi, theta, two-theta, first-type) "
                             "nor a readable file");
  }
  ProfileFile f = read_profile_csv(fs::path(spec));
  return {std::move(f.profile), f.kappa};
}

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw std::invalid_argument("invalid --" + field + ": " + why);
}

// ---- flow -----------------------------------------------------------------

struct FlowArgs {
  std::string init = "pi";
  double kappa = 5.0;
  int n = 1024;
  double dt = 0.0;
  double t_max = 1e3;
  double tol = 1e-9;
  int record_every = 100;
  std::string wedge = "none";
  double blowup = 1e3;
  bool full_interval = false;
};

int cmd_flow(const FlowArgs& a, const std::string& out) {
  require(std::isfinite(a.kappa) && a.kappa >= 0, "kappa", "must be >= 0");
  require(a.dt >= 0, "dt", "must be > 0 (or 0 for automatic)");
  std::optional<WedgeKind> wk;
  if (a.wedge != "none") {
    wk = parse_wedge_kind(a.wedge);
    require(wk.has_value(), "wedge", "expected W1, W2 or none");
  }
  FlowConfig cfg = FlowConfig::for_kappa(a.kappa);
  if (a.dt > 0) cfg.dt = a.dt;
  cfg.t_max = a.t_max;
  cfg.stationary_tol = a.tol;
  cfg.record_every = a.record_every;
  cfg.blowup_grad_threshold = a.blowup;
  cfg.reduce_hemispheric = !a.full_interval;
  if (wk) cfg.wedge = WedgeSpec(*wk, 1e-8);
  cfg.validate();

  const Loaded ld = load_profile(a.init, a.n, a.kappa);
  const Profile& p0 = ld.profile;
  ojson config{{"command", "flow"},     {"init", a.init},
               {"kappa", a.kappa},      {"n", p0.grid().n()},
               {"dt", cfg.dt},          {"t_max", cfg.t_max},
               {"stationary_tol", cfg.stationary_tol},
               {"record_every", cfg.record_every},
               {"wedge", a.wedge},      {"blowup_grad_threshold", cfg.blowup_grad_threshold},
               {"reduce_hemispheric", cfg.reduce_hemispheric}};
  const std::string hash = cli::config_hash(config);
  const fs::path dir = cli::run_directory(cli::output_base(out), "flow", hash);

  Clock clock;
  const EnergyParams ep(a.kappa);
  const FlowResult r = run(p0, ep, cfg);
  const double e_final = reduced_energy(r.final, ep);

  cli::write_trace(dir / "energy_trace.csv", hash, r);
  cli::write_profile(dir / "final_profile.csv", hash, r.final, a.kappa);
  ojson rec{{"config", config},
            {"status", to_string(r.status)},
            {"steps", r.steps},
            {"t_final", r.t_final},
            {"E_initial", cli::number(r.initial_energy)},
            {"E_final", cli::number(e_final)},
            {"sup_residual", cli::number(r.final_residual)},
            {"max_energy_increase", cli::number(r.max_energy_increase)},
            {"energy_violations", r.energy_violations},
            {"half_interval", r.reduced},
            {"boundary_class", {r.final.m(), r.final.n_end()}},
            {"degree", degree(r.final)}};
  if (cfg.wedge) rec["wedge_final"] = cli::wedge_json(wedge_check(r.final, *cfg.wedge));
  cli::write_json(dir / "run.json", hash, rec);
  write_timing(dir, hash, clock);

  std::cout << "flow: " << to_string(r.status) << " after " << r.steps
            << " steps, t=" << format_double(r.t_final) << ", E=" << format_double(e_final)
            << ", residual=" << format_double(r.final_residual) << "\n"
            << "output: " << dir.string() << "\n";
  switch (r.status) {
    case FlowStatus::stationary: return kOk;
    case FlowStatus::horizon_reached: return kHorizon;
    case FlowStatus::blowup_suspected: return kBlowup;
  }
  return kFail;
}

// ---- saddle ---------------------------------------------------------------

struct SaddleArgs {
  std::string type = "first";
  double kappa = 10.0;
  int n = 1024;
  double dk = 0.05;
};

int cmd_saddle(const SaddleArgs& a, const std::string& out) {
  const auto type = parse_saddle_type(a.type);
  require(type.has_value(), "type", "expected first or second");
  require(std::isfinite(a.kappa) && a.kappa > 0, "kappa", "must be > 0");
  if (*type == SaddleType::first) require(a.kappa >= 4, "kappa", "first type needs kappa >= 4");
  require(a.dk > 0, "dk", "must be > 0");
  const int n = grid_size_for(a.kappa, a.n);
  const GridPtr g = make_grid(n);
  PipelineOptions opt;
  opt.continuation_dk = a.dk;

  ojson config{{"command", "saddle"}, {"type", a.type}, {"kappa", a.kappa},
               {"n", n},              {"dk", a.dk}};
  const std::string hash = cli::config_hash(config);
  const fs::path dir = cli::run_directory(cli::output_base(out), "saddle", hash);

  Clock clock;
  const SaddleReport r = *type == SaddleType::first ? find_first_type(a.kappa, g, opt)
                                                    : find_second_type(a.kappa, g, opt);
  const auto problems = validate_report(r);
  ojson rec = cli::report_json(r, n);
  rec["config"] = config;
  rec["valid"] = problems.empty();
  rec["problems"] = problems;
  cli::write_json(dir / "report.json", hash, rec);
  cli::write_profile(dir / "profile.csv", hash, r.profile, a.kappa);
  write_timing(dir, hash, clock);

  std::cout << "saddle " << a.type << " kappa=" << format_double(a.kappa)
            << ": E=" << format_double(r.energy)
            << " lambda1=" << format_double(r.spectrum.eigenvalues[0])
            << " dir_value=" << format_double(r.explicit_direction_value)
            << (r.certified ? " certified" : " not certified") << "\n";
  for (const auto& p : problems) std::cerr << "invalid report: " << p << "\n";
  std::cout << "output: " << dir.string() << "\n";
  return problems.empty() ? kOk : kFail;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::vector<std::string> types{"first"};
  double from = 4.0;
  double to = 8.0;
  double step = 0.25;
  std::vector<double> kappas;
  int n = 1024;
  double width = 0.05;
};

int cmd_sweep(const SweepArgs& a, const std::string& out) {
  std::vector<SaddleType> types;
  for (const auto& t : a.types) {
    if (t == "both") {
      types = {SaddleType::first, SaddleType::second};
      continue;
    }
    const auto st = parse_saddle_type(t);
    require(st.has_value(), "type", "expected first, second or both");
    types.push_back(*st);
  }
  std::vector<double> ks = a.kappas;
  if (ks.empty()) {
    require(a.step > 0, "step", "must be > 0");
    require(a.from > 0, "from", "must be > 0");
    require(a.to >= a.from, "to", "must be >= --from");
    const long count = static_cast<long>(std::floor((a.to - a.from) / a.step + 1e-9));
    for (long i = 0; i <= count; ++i) ks.push_back(a.from + i * a.step);
  }
  require(a.width > 0, "bisect-width", "must be > 0");

  SweepOptions opt;
  opt.n = a.n;
  opt.bisect_width = a.width;
  ojson tj = ojson::array();
  for (SaddleType t : types) tj.push_back(to_string(t));
  ojson config{{"command", "sweep"}, {"types", tj},          {"kappas", ks},
               {"n", a.n},           {"bisect_width", a.width}};
  const std::string hash = cli::config_hash(config);
  const fs::path dir = cli::run_directory(cli::output_base(out), "sweep", hash);
  cli::write_json(dir / "config.json", hash, config);

  Clock clock;
  const SweepResult res = sweep(ks, types, opt);

  std::vector<std::vector<std::string>> rows;
  for (const auto& r : res.rows) {
    auto f = [](double x) { return std::isfinite(x) ? format_double(x) : std::string("nan"); };
    rows.push_back({format_double(r.kappa), to_string(r.type), f(r.energy), f(r.lambda1),
                    f(r.lambda2), f(r.dir_value), r.status});
    if (r.profile) {
      cli::write_profile(dir / "profiles" /
                             ("kappa_" + cli::kappa_tag(r.kappa) + "_" + to_string(r.type) +
                              ".csv"),
                         hash, *r.profile, r.kappa);
    }
  }
  cli::write_csv(dir / "sweep.csv", hash,
                 {"kappa", "type", "E", "lambda1", "lambda2", "dir_value", "status"}, rows);
  auto bracket = [](const std::optional<Bracket>& b) -> ojson {
    if (!b) return nullptr;
    return ojson{{"lo", b->lo}, {"hi", b->hi}, {"estimate", b->estimate()}};
  };
  cli::write_json(dir / "summary.json", hash,
                  ojson{{"config", config},
                        {"kappa0_explicit_direction", bracket(res.kappa0)},
                        {"kappa0_lowest_eigenvalue", bracket(res.kappa0_eigen)},
                        {"kappa1", bracket(res.kappa1)},
                        {"rows", res.rows.size()}});
  write_timing(dir, hash, clock);

  for (const auto& r : rows) {
    std::cout << r[0] << " " << r[1] << " E=" << r[2] << " lambda1=" << r[3]
              << " dir=" << r[5] << " " << r[6] << "\n";
  }
  if (res.kappa0) {
    std::cout << "kappa0 bracket: [" << format_double(res.kappa0->lo) << ", "
              << format_double(res.kappa0->hi) << "]\n";
  }
  if (res.kappa1) {
    std::cout << "kappa1 bracket: [" << format_double(res.kappa1->lo) << ", "
              << format_double(res.kappa1->hi) << "]\n";
  }
  std::cout << "output: " << dir.string() << "\n";
  return kOk;
}

// ---- spectrum -------------------------------------------------------------

struct SpectrumArgs {
  std::string profile = "two-theta";
  double kappa = 4.0;
  int n = 1024;
  int k = 5;
  bool vectors = false;
};

int cmd_spectrum(const SpectrumArgs& a, const std::string& out) {
  require(std::isfinite(a.kappa) && a.kappa >= 0, "kappa", "must be >= 0");
  require(a.k >= 1, "k", "must be >= 1");
  const Loaded ld = load_profile(a.profile, a.n, a.kappa);
  const Profile& p = ld.profile;
  require(a.k <= p.grid().n() - 1, "k", "exceeds the operator dimension");
  ojson config{{"command", "spectrum"}, {"profile", a.profile}, {"kappa", a.kappa},
               {"n", p.grid().n()},     {"k", a.k},             {"vectors", a.vectors}};
  const std::string hash = cli::config_hash(config);
  const fs::path dir = cli::run_directory(cli::output_base(out), "spectrum", hash);

  Clock clock;
  const EnergyParams ep(a.kappa);
  const double res = sup_residual(p, ep);
  const SpectrumResult sr = eigs_lowest(assemble_second_variation(p, ep), a.k,
                                        1e-6 * std::max(1.0, a.kappa), p.grid().step());
  const double dir_value = second_variation_form(p, ep, perturbation_direction(p));

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < sr.eigenvalues.size(); ++i) {
    rows.push_back({std::to_string(i + 1), format_double(sr.eigenvalues[i])});
  }
  cli::write_csv(dir / "spectrum.csv", hash, {"index", "lambda"}, rows);
  if (a.vectors) {
    const auto th = p.grid().nodes();
    for (std::size_t j = 0; j < sr.eigenvectors.size(); ++j) {
      std::vector<std::vector<std::string>> vr;
      for (std::size_t i = 0; i < th.size(); ++i) {
        vr.push_back({format_double(th[i]), format_double(sr.eigenvectors[j][i])});
      }
      cli::write_csv(dir / ("eigenvector_" + std::to_string(j + 1) + ".csv"), hash,
                     {"theta", "g"}, vr);
    }
  }
  ojson rec = cli::spectrum_json(sr);
  rec["config"] = config;
  rec["sup_residual"] = cli::number(res);
  rec["stationary"] = res < 1e-6;
  rec["explicit_direction_value"] = cli::number(dir_value);
  cli::write_json(dir / "run.json", hash, rec);
  write_timing(dir, hash, clock);

  for (const auto& r : rows) std::cout << r[0] << " " << r[1] << "\n";
  std::cout << "morse_index " << sr.morse_index << "\noutput: " << dir.string() << "\n";
  return kOk;
}

// ---- continue -------------------------------------------------------------

struct ContinueArgs {
  std::string init = "two-theta";
  double from = 4.0;
  double to = 3.5;
  double dk = -0.05;
  int n = 1024;
};

int cmd_continue(const ContinueArgs& a, const std::string& out) {
  require(a.dk != 0, "dk", "must be nonzero");
  require((a.to - a.from) * a.dk >= 0, "dk", "must point from --from toward --to");
  const Loaded ld = load_profile(a.init, a.n, a.from);
  ojson config{{"command", "continue"}, {"init", a.init}, {"from", a.from},
               {"to", a.to},            {"dk", a.dk},     {"n", ld.profile.grid().n()}};
  const std::string hash = cli::config_hash(config);
  const fs::path dir = cli::run_directory(cli::output_base(out), "continue", hash);

  Clock clock;
  const Branch br = continue_branch(a.from, ld.profile, a.to, a.dk);
  std::vector<std::vector<std::string>> rows;
  for (const auto& pt : br.points) {
    rows.push_back({format_double(pt.kappa), format_double(pt.energy),
                    format_double(pt.lambda1), format_double(pt.lambda2)});
    cli::write_profile(dir / "profiles" / ("kappa_" + cli::kappa_tag(pt.kappa) + ".csv"),
                       hash, pt.profile, pt.kappa);
  }
  cli::write_csv(dir / "branch.csv", hash, {"kappa", "E", "lambda1", "lambda2"}, rows);
  ojson rec{{"config", config},
            {"reached_target", br.reached_target},
            {"points", br.points.size()},
            {"last_kappa", br.points.back().kappa}};
  if (br.failure_bracket) {
    rec["failure_bracket"] = {br.failure_bracket->first, br.failure_bracket->second};
    rec["failure_reason"] = br.failure_reason;
  }
  cli::write_json(dir / "run.json", hash, rec);
  write_timing(dir, hash, clock);

  for (const auto& r : rows) {
    std::cout << r[0] << " E=" << r[1] << " lambda1=" << r[2] << " lambda2=" << r[3] << "\n";
  }
  if (!br.reached_target) {
    std::cout << "stopped: " << br.failure_reason << "\n";
  }
  std::cout << "output: " << dir.string() << "\n";
  return br.reached_target ? kOk : kHorizon;
}

// ---- validate -------------------------------------------------------------

int cmd_validate(int n, std::uint64_t seed, const std::string& out) {
  ojson config{{"command", "validate"}, {"n", n}, {"seed", seed}};
  const std::string hash = cli::config_hash(config);
  const fs::path dir = cli::run_directory(cli::output_base(out), "validate", hash);
  Clock clock;
  const auto verdicts = run_property_suite(n, seed);
  ojson list = ojson::array();
  int failed = 0;
  for (const auto& v : verdicts) {
    std::cout << (v.passed ? "[PASS] " : "[FAIL] ") << v.name << ": " << v.detail << "\n";
    list.push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
    if (!v.passed) ++failed;
  }
  cli::write_json(dir / "validate.json", hash, ojson{{"config", config}, {"properties", list}});
  write_timing(dir, hash, clock);
  if (failed) {
    std::cerr << failed << " propert" << (failed == 1 ? "y" : "ies") << " failed:";
    for (const auto& v : verdicts) {
      if (!v.passed) std::cerr << " " << v.name;
    }
    std::cerr << "\n";
    return kFail;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axisymmetric ferromagnet saddle-point solver"};
  app.require_subcommand(1);
  std::string out;
  app.add_option("--out", out, "Output base directory (default $FERRO_OUT_DIR or ./ferro_runs)");

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "Run the profile heat flow");
  flow->add_option("--init", fa.init, "pi, theta, two-theta, first-type or a profile CSV");
  flow->add_option("--kappa", fa.kappa, "Anisotropy");
  flow->add_option("--n", fa.n, "Grid intervals (even, >= 16)");
  flow->add_option("--dt", fa.dt, "Time step (default min(1e-2, 0.5/max(kappa,1)))");
  flow->add_option("--t-max", fa.t_max, "Horizon");
  flow->add_option("--tol", fa.tol, "Stationarity threshold on the sup residual");
  flow->add_option("--record-every", fa.record_every, "Trace stride in steps");
  flow->add_option("--wedge", fa.wedge, "Wedge to monitor: W1, W2 or none");
  flow->add_option("--blowup-threshold", fa.blowup, "Pole gradient cutoff");
  flow->add_flag("--full-interval", fa.full_interval,
                 "Do not reduce hemispheric data to [0, pi/2]");

  SaddleArgs sa;
  auto* saddle = app.add_subcommand("saddle", "Compute a first- or second-type saddle");
  saddle->add_option("--type", sa.type, "first or second");
  saddle->add_option("--kappa", sa.kappa, "Anisotropy");
  saddle->add_option("--n", sa.n, "Grid intervals (raised to 32 sqrt(kappa) if smaller)");
  saddle->add_option("--dk", sa.dk, "Continuation step below kappa = 4");

  SweepArgs swa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep kappa and bracket the thresholds");
  sweep_cmd->add_option("--type", swa.types, "first, second or both (repeatable)");
  sweep_cmd->add_option("--from", swa.from, "First kappa");
  sweep_cmd->add_option("--to", swa.to, "Last kappa");
  sweep_cmd->add_option("--step", swa.step, "Kappa step");
  sweep_cmd->add_option("--kappas", swa.kappas, "Explicit ascending kappa list");
  sweep_cmd->add_option("--n", swa.n, "Grid intervals");
  sweep_cmd->add_option("--bisect-width", swa.width, "Target bracket width for kappa0");

  SpectrumArgs spa;
  auto* spectrum = app.add_subcommand("spectrum", "Lowest eigenvalues of the second variation");
  spectrum->add_option("--profile", spa.profile, "pi, theta, two-theta or a profile CSV");
  spectrum->add_option("--kappa", spa.kappa, "Anisotropy");
  spectrum->add_option("--n", spa.n, "Grid intervals for builtin profiles");
  spectrum->add_option("--k", spa.k, "Number of eigenvalues");
  spectrum->add_flag("--vectors", spa.vectors, "Also write eigenvector CSVs");

  ContinueArgs ca;
  auto* cont = app.add_subcommand("continue", "Continue a stationary profile in kappa");
  cont->add_option("--init", ca.init, "Start profile (builtin or CSV)");
  cont->add_option("--from", ca.from, "Start kappa");
  cont->add_option("--to", ca.to, "Target kappa");
  cont->add_option("--dk", ca.dk, "Signed kappa step");
  cont->add_option("--n", ca.n, "Grid intervals for builtin profiles");

  int vn = 512;
  std::uint64_t seed = 0;
  auto* validate = app.add_subcommand("validate", "Run the property suite");
  validate->add_option("--n", vn, "Grid intervals");
  validate->add_option("--seed", seed, "Seed for randomized trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFail;
  }

  try {
    if (*flow) return cmd_flow(fa, out);
    if (*saddle) return cmd_saddle(sa, out);
    if (*sweep_cmd) return cmd_sweep(swa, out);
    if (*spectrum) return cmd_spectrum(spa, out);
    if (*cont) return cmd_continue(ca, out);
    if (*validate) return cmd_validate(vn, seed, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kFail;
}
