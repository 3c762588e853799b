#include "ferro/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ferro/spectrum.hpp"

namespace ferro {

void NewtonConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("newton: max_iter must be >= 1");
  if (!(residual_tol > 0)) throw std::invalid_argument("newton: residual_tol must be > 0");
  if (!(damping > 0 && damping <= 1)) {
    throw std::invalid_argument("newton: damping must be in (0, 1]");
  }
}

double residual_floor(const Profile& p) {
  double m = 1.0;
  for (double v : p.values()) m = std::max(m, std::abs(v));
  const double h = p.grid().step();
  return 4 * std::numeric_limits<double>::epsilon() * m / (h * h);
}

namespace {

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Profile with_interior(const Profile& base, const std::vector<double>& u, bool sym) {
  Profile p(base.grid_ptr(), u, base.m(), base.n_end());
  return sym ? symmetrize(p) : p;
}

}  // namespace

NewtonResult newton_solve(const Profile& start, const EnergyParams& params,
                          const NewtonConfig& cfg) {
  cfg.validate();
  const bool sym = cfg.preserve_hemispheric && is_hemispheric(start, 1e-10);
  Profile cur = sym ? symmetrize(start) : start;
  std::vector<double> r = el_residual(cur, params);
  double res = sup_abs(r);
  const double floor = residual_floor(cur);
  int it = 0;
  while (res >= cfg.residual_tol) {
    if (it >= cfg.max_iter) {
      if (res <= floor) return {cur, it, res, true};
      throw NewtonError("newton: no convergence after " + std::to_string(it) +
                            " iterations (residual " + std::to_string(res) + ")",
                        res, it, false);
    }
    ++it;
    // J = -A, so J du = -r is A du = r.
    const TridiagonalOperator a = assemble_second_variation(cur, params);
    const int dim = a.dimension;
    std::vector<double> lo(dim - 1), up(dim - 1), rhs(r.begin() + 1, r.end() - 1);
    for (int i = 0; i + 1 < dim; ++i) {
      lo[i] = a.lower(i);
      up[i] = a.upper(i);
    }
    std::vector<double> du;
    try {
      du = solve_tridiagonal_pivoted(lo, a.diag, up, rhs);
    } catch (const std::runtime_error&) {
      throw NewtonError("newton: singular Jacobian", res, it, true);
    }
    bool accepted = false;
    double step = cfg.damping;
    const std::vector<double> base(cur.values().begin(), cur.values().end());
    std::vector<double> trial = base;
    while (step >= std::ldexp(1.0, -20)) {
      for (int i = 0; i < dim; ++i) trial[i + 1] = base[i + 1] + step * du[i];
      Profile cand = with_interior(cur, trial, sym);
      std::vector<double> rc = el_residual(cand, params);
      const double rn = sup_abs(rc);
      if (std::isfinite(rn) && rn < res) {
        cur = std::move(cand);
        r = std::move(rc);
        res = rn;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (res <= floor) return {cur, it, res, true};
      throw NewtonError("newton: line search failed (residual " + std::to_string(res) + ")",
                        res, it, false);
    }
  }
  return {cur, it, res, false};
}

Branch continue_branch(double start_kappa, const Profile& start, double target_kappa,
                       double dk, const NewtonConfig& cfg) {
  if (!(dk != 0) || !std::isfinite(dk)) {
    throw std::invalid_argument("continuation: dk must be nonzero");
  }
  if ((target_kappa - start_kappa) * dk < 0) {
    throw std::invalid_argument("continuation: dk points away from the target");
  }
  auto make_point = [](double k, const NewtonResult& nr) {
    const EnergyParams ep(k);
    BranchPoint bp{k, nr.profile};
    bp.energy = reduced_energy(nr.profile, ep);
    bp.residual = nr.residual;
    const SpectrumResult sr = eigs_lowest(assemble_second_variation(nr.profile, ep), 2,
                                          0.0, nr.profile.grid().step());
    bp.lambda1 = sr.eigenvalues[0];
    bp.lambda2 = sr.eigenvalues[1];
    return bp;
  };

  Branch br;
  const NewtonResult first = newton_solve(start, EnergyParams(start_kappa), cfg);
  br.points.push_back(make_point(start_kappa, first));
  if (start_kappa == target_kappa) {
    br.reached_target = true;
    return br;
  }
  const long steps = static_cast<long>(
      std::ceil(std::abs(target_kappa - start_kappa) / std::abs(dk) - 1e-9));
  for (long j = 1; j <= steps; ++j) {
    double k = start_kappa + j * dk;
    if (j == steps || (dk > 0 ? k > target_kappa : k < target_kappa)) k = target_kappa;
    if (!(k >= 0)) {
      br.failure_bracket = {br.points.back().kappa, k};
      br.failure_reason = "kappa left the admissible range";
      return br;
    }
    try {
      const NewtonResult nr = newton_solve(br.points.back().profile, EnergyParams(k), cfg);
      br.points.push_back(make_point(k, nr));
    } catch (const NewtonError& e) {
      br.failure_bracket = {br.points.back().kappa, k};
      br.failure_reason = e.what();
      return br;
    }
  }
  br.reached_target = true;
  return br;
}

}  // namespace ferro
