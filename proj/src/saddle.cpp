#include "ferro/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ferro {

std::string to_string(SaddleType t) {
  return t == SaddleType::first ? "first" : "second";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::flow: return "flow";
    case Provenance::continuation: return "continuation";
    case Provenance::flow_then_newton: return "flow_then_newton";
    case Provenance::exact: return "exact";
  }
  return "unknown";
}

std::optional<SaddleType> parse_saddle_type(std::string_view s) {
  if (s == "first") return SaddleType::first;
  if (s == "second") return SaddleType::second;
  return std::nullopt;
}

std::vector<std::string> validate_report(const SaddleReport& r) {
  std::vector<std::string> problems;
  const double res = sup_residual(r.profile, EnergyParams(r.kappa));
  if (!(res < 1e-9)) {
    problems.push_back("residual " + std::to_string(res) + " is not below 1e-9");
  }
  const int want_m = r.type == SaddleType::first ? 1 : 0;
  const int want_n = r.type == SaddleType::first ? 1 : 2;
  if (r.profile.m() != want_m || r.profile.n_end() != want_n) {
    problems.push_back("boundary class (" + std::to_string(r.profile.m()) + "," +
                       std::to_string(r.profile.n_end()) + ") is wrong for this type");
  }
  if (degree(r.profile) != 0) problems.push_back("degree is not 0");
  if (r.type == SaddleType::first) {
    if (!inside(wedge_check(r.profile, WedgeSpec(WedgeKind::W1, 1e-8)))) {
      problems.push_back("profile leaves the W1 wedge");
    }
    if (!is_hemispheric(r.profile, 1e-8)) problems.push_back("profile is not hemispheric");
  }
  if (r.hemispheric != is_hemispheric(r.profile, 1e-8)) {
    problems.push_back("hemispheric flag does not match the profile");
  }
  return problems;
}

int grid_size_for(double kappa, int n_requested) {
  const int need = static_cast<int>(std::ceil(32.0 * std::sqrt(std::max(kappa, 0.0))));
  int n = std::max({n_requested, need, 16});
  if (n % 2 != 0) ++n;
  return n;
}

namespace {

FlowConfig flow_config(const PipelineOptions& opt, double kappa, WedgeKind w) {
  FlowConfig cfg = opt.flow;
  if (opt.auto_dt) cfg.dt = FlowConfig::for_kappa(kappa).dt;
  cfg.wedge = WedgeSpec(w, opt.wedge_tol);
  return cfg;
}

SaddleReport finish(double kappa, SaddleType type, Profile p, Provenance prov,
                    const PipelineOptions& opt) {
  const EnergyParams ep(kappa);
  SaddleReport r(kappa, type, std::move(p));
  r.provenance = prov;
  r.energy = reduced_energy(r.profile, ep);
  r.residual = sup_residual(r.profile, ep);
  const Classification c = classify(r.profile, ep, opt.eigen_count);
  r.spectrum = c.spectrum;
  r.stability = c.stability;
  r.explicit_direction_value = c.explicit_direction_value;
  const WedgeKind w = type == SaddleType::first ? WedgeKind::W1 : WedgeKind::W2;
  r.wedge_verdict = wedge_check(r.profile, WedgeSpec(w, opt.wedge_tol));
  r.hemispheric = is_hemispheric(r.profile, 1e-8);
  const bool has_positive = r.spectrum.eigenvalues.back() > r.spectrum.tol;
  r.certified = r.explicit_direction_value < 0 && has_positive;
  return r;
}

Profile flow_and_polish(const Profile& p0, double kappa, const FlowConfig& cfg,
                        const NewtonConfig& ncfg, FlowResult& fr) {
  const EnergyParams ep(kappa);
  fr = run(p0, ep, cfg);
  if (fr.status == FlowStatus::blowup_suspected) {
    throw BlowupError("flow at kappa " + std::to_string(kappa) +
                      " hit the blowup detector at t = " + std::to_string(fr.t_final));
  }
  try {
    return newton_solve(fr.final, ep, ncfg).profile;
  } catch (const NewtonError&) {
    if (fr.status == FlowStatus::stationary) return fr.final;
    throw;
  }
}

}  // namespace

SaddleReport find_first_type(double kappa, GridPtr grid, const PipelineOptions& opt) {
  if (!(kappa >= 4.0)) {
    throw std::invalid_argument("first-type saddle needs kappa >= 4, got " +
                                std::to_string(kappa));
  }
  const Profile p0 = make_initial_first_type(grid, kappa);
  FlowResult fr(p0);
  Profile p = flow_and_polish(p0, kappa, flow_config(opt, kappa, WedgeKind::W1),
                              opt.newton, fr);
  SaddleReport r =
      finish(kappa, SaddleType::first, std::move(p), Provenance::flow_then_newton, opt);
  r.flow_status = fr.status;
  r.flow_time = fr.t_final;
  return r;
}

SaddleReport find_second_type(double kappa, GridPtr grid, const PipelineOptions& opt) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("second-type saddle needs kappa > 0");
  }
  const Profile p0 = make_initial_second_type(grid);
  if (kappa == 4.0) return finish(kappa, SaddleType::second, p0, Provenance::exact, opt);
  if (kappa > 4.0) {
    FlowResult fr(p0);
    Profile p = flow_and_polish(p0, kappa, flow_config(opt, kappa, WedgeKind::W2),
                                opt.newton, fr);
    SaddleReport r =
        finish(kappa, SaddleType::second, std::move(p), Provenance::flow_then_newton, opt);
    r.flow_status = fr.status;
    r.flow_time = fr.t_final;
    return r;
  }
  const Branch br = continue_branch(4.0, p0, kappa, -std::abs(opt.continuation_dk), opt.newton);
  if (!br.reached_target) {
    const double last = br.points.back().kappa;
    throw ContinuationError("continuation from kappa 4 stopped at " + std::to_string(last) +
                                " before reaching " + std::to_string(kappa) + ": " +
                                br.failure_reason,
                            last);
  }
  return finish(kappa, SaddleType::second, br.points.back().profile,
                Provenance::continuation, opt);
}

namespace {

struct Task {
  double kappa;
  SaddleType type;
};

struct Outcome {
  SweepRow row;
  std::optional<double> continuation_edge;  // last converged kappa
};

Outcome run_one(const Task& t, const SweepOptions& opt) {
  Outcome out;
  SweepRow& row = out.row;
  row.kappa = t.kappa;
  row.type = t.type;
  row.n_used = grid_size_for(t.kappa, opt.n);
  try {
    const GridPtr g = make_grid(row.n_used);
    const SaddleReport r = t.type == SaddleType::first
                               ? find_first_type(t.kappa, g, opt.pipeline)
                               : find_second_type(t.kappa, g, opt.pipeline);
    row.energy = r.energy;
    row.lambda1 = r.spectrum.eigenvalues[0];
    row.lambda2 = r.spectrum.eigenvalues.size() > 1 ? r.spectrum.eigenvalues[1] : kNaN;
    row.dir_value = r.explicit_direction_value;
    if (r.certified) {
      row.status = "certified";
    } else if (r.stability == Stability::marginal) {
      row.status = "marginal";
    } else if (r.spectrum.morse_index > 0) {
      row.status = "saddle_by_spectrum";
    } else {
      row.status = "not_certified";
    }
    if (opt.keep_profiles) row.profile = r.profile;
  } catch (const ContinuationError& e) {
    row.status = "continuation_failed";
    out.continuation_edge = e.last_successful_kappa();
  } catch (const BlowupError&) {
    row.status = "blowup";
  } catch (const NewtonError&) {
    row.status = "newton_failed";
  } catch (const std::exception&) {
    row.status = "error";
  }
  return out;
}

double first_type_dir(double kappa, const SweepOptions& opt) {
  const GridPtr g = make_grid(grid_size_for(kappa, opt.n));
  return find_first_type(kappa, g, opt.pipeline).explicit_direction_value;
}

}  // namespace

SweepResult sweep(const std::vector<double>& kappas, const std::vector<SaddleType>& types,
                  const SweepOptions& opt) {
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    if (!(kappas[i] > 0) || !std::isfinite(kappas[i])) {
      throw std::invalid_argument("sweep: kappa values must be positive");
    }
    if (i > 0 && !(kappas[i] > kappas[i - 1])) {
      throw std::invalid_argument("sweep: kappa values must be strictly ascending");
    }
  }
  std::vector<Task> tasks;
  for (SaddleType t : {SaddleType::first, SaddleType::second}) {
    if (std::find(types.begin(), types.end(), t) == types.end()) continue;
    for (double k : kappas) tasks.push_back({k, t});
  }
  std::vector<Outcome> outcomes(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    Task t = tasks[i];
    if (t.type == SaddleType::first && t.kappa < 4.0) {
      outcomes[i].row.kappa = t.kappa;
      outcomes[i].row.type = t.type;
      outcomes[i].row.status = "skipped_kappa_below_4";
      outcomes[i].row.n_used = grid_size_for(t.kappa, opt.n);
      continue;
    }
    outcomes[i] = run_one(t, opt);
  }

  SweepResult res;
  for (auto& o : outcomes) res.rows.push_back(o.row);

  // kappa0: dir_value goes from >= 0 to < 0, refined by bisection.
  std::vector<const SweepRow*> first;
  for (const auto& r : res.rows) {
    if (r.type == SaddleType::first && std::isfinite(r.dir_value)) first.push_back(&r);
  }
  for (std::size_t i = 0; i + 1 < first.size(); ++i) {
    if (first[i]->dir_value >= 0 && first[i + 1]->dir_value < 0) {
      Bracket b{first[i]->kappa, first[i + 1]->kappa};
      while (b.width() > opt.bisect_width) {
        const double mid = b.estimate();
        double v = kNaN;
        try {
          v = first_type_dir(mid, opt);
        } catch (const std::exception&) {
          break;
        }
        (v >= 0 ? b.lo : b.hi) = mid;
      }
      res.kappa0 = b;
      break;
    }
  }
  for (std::size_t i = 0; i + 1 < first.size(); ++i) {
    if (first[i]->lambda1 >= 0 && first[i + 1]->lambda1 < 0) {
      res.kappa0_eigen = Bracket{first[i]->kappa, first[i + 1]->kappa};
      break;
    }
  }

  // kappa1: walking down from 4, the first second-type kappa where the branch
  // is lost (continuation failed) or the Morse structure lambda1 < 0 < lambda2
  // breaks.
  std::optional<double> last_good;
  for (std::size_t i = outcomes.size(); i-- > 0;) {
    const Outcome& o = outcomes[i];
    const SweepRow& r = o.row;
    if (r.type != SaddleType::second || r.kappa > 4.0) continue;
    if (o.continuation_edge) {
      const double edge = *o.continuation_edge;
      res.kappa1 = Bracket{edge - std::abs(opt.pipeline.continuation_dk), edge};
      break;
    }
    const bool ok = std::isfinite(r.lambda1) && r.lambda1 < 0 && r.lambda2 > 0;
    if (!ok && last_good) {
      res.kappa1 = Bracket{r.kappa, *last_good};
      break;
    }
    if (ok) last_good = r.kappa;
  }
  return res;
}

}  // namespace ferro
