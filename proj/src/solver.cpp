#include "fracheat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracheat/lorentz.hpp"
#include "fracheat/multipliers.hpp"
#include "fracheat/transforms.hpp"

namespace fracheat {

void SolverConfig::validate(const Grid& g) const {
  validate_theta(model.theta);
  if (!(model.gamma > 1.0))
    throw std::invalid_argument("SolverConfig: gamma must exceed 1");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("SolverConfig: p must lie in ]1, inf[");
  if (!(T > 0.0)) throw std::invalid_argument("SolverConfig: T must be positive");
  if (n_time < 1) throw std::invalid_argument("SolverConfig: n_time must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
  if (!(g.half_length > 1.0))
    throw std::invalid_argument("SolverConfig: windowed norms need half_length > 1");
  if (!override_hypotheses) {
    if (!(p > model.gamma))
      throw std::invalid_argument(
          "SolverConfig: solution-space hypothesis p > gamma violated "
          "(set override_hypotheses to experiment outside it)");
    if (!(p >= g.dim * (model.gamma - 1.0) / model.theta))
      throw std::invalid_argument(
          "SolverConfig: solution-space hypothesis p >= N(gamma-1)/theta violated "
          "(set override_hypotheses to experiment outside it)");
    if (T > 1.0)
      throw std::invalid_argument(
          "SolverConfig: horizon T <= 1 assumed by the contraction setup "
          "(set override_hypotheses to experiment outside it)");
  }
}

SpaceTimeField::SpaceTimeField(const Grid& g, double horizon, int n_time)
    : grid(g), T(horizon) {
  if (n_time < 1) throw std::invalid_argument("SpaceTimeField: n_time must be >= 1");
  slices.assign(static_cast<std::size_t>(n_time) + 1, SpectralField(g));
}

double xt_norm(const SpaceTimeField& u, double p) {
  double worst = 0.0;
  for (std::size_t n = 1; n < u.slices.size(); ++n) {
    if (!u.slices[n].all_finite()) return std::numeric_limits<double>::infinity();
    worst = std::max(worst,
                     uniformly_local_lorentz_norm(inverse_transform(u.slices[n]), p, kInf));
  }
  return worst;
}

SpaceTimeField linear_part(const SpectralField& mu, const SolverConfig& cfg) {
  cfg.validate(mu.grid);
  SpaceTimeField out(mu.grid, cfg.T, cfg.n_time);
  for (int n = 1; n <= cfg.n_time; ++n) {
    const auto w = duhamel_multiplier(mu.grid, out.time(n), cfg.model.theta);
    auto& slice = out.slices[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < w.size(); ++i) slice.coeff[i] = w[i] * mu.coeff[i];
  }
  return out;
}

SpaceTimeField semigroup_part(const SpectralField& mu, const SolverConfig& cfg) {
  cfg.validate(mu.grid);
  SpaceTimeField out(mu.grid, cfg.T, cfg.n_time);
  out.slices[0] = mu;
  for (int n = 1; n <= cfg.n_time; ++n)
    out.slices[static_cast<std::size_t>(n)] = semigroup(mu, out.time(n), cfg.model.theta);
  return out;
}

namespace {

// sign(u) |u|^gamma sampled pointwise; false on overflow
bool power_nonlinearity(const SpaceTimeField& u, const SolverConfig& cfg,
                        std::vector<SpectralField>& out) {
  const auto n_slices = u.slices.size();
  out.assign(n_slices, SpectralField(u.grid));
  for (std::size_t n = 0; n < n_slices; ++n) {
    if (!u.slices[n].all_finite()) return false;
    SpectralField spec = u.slices[n];
    if (cfg.dealias_nonlinearity) dealias(spec);
    auto phys = inverse_transform(spec);
    for (auto& v : phys.values) {
      v = v >= 0.0 ? std::pow(v, cfg.model.gamma) : -std::pow(-v, cfg.model.gamma);
      if (!std::isfinite(v)) return false;
    }
    out[n] = forward_transform(phys);
    if (cfg.dealias_nonlinearity) dealias(out[n]);
  }
  return true;
}

}  // namespace

NonlinearImage nonlinear_part(const SpaceTimeField& u, const SolverConfig& cfg) {
  NonlinearImage out{SpaceTimeField(u.grid, u.T, u.steps()), true};
  if (cfg.disable_nonlinearity) return out;

  std::vector<SpectralField> fhat;
  if (!power_nonlinearity(u, cfg, fhat)) {
    out.finite = false;
    return out;
  }

  const double dt = u.T / u.steps();
  const auto symbol = fractional_symbol(u.grid, cfg.model.theta);
  const auto step_weight = duhamel_multiplier(u.grid, dt, cfg.model.theta);
  std::vector<double> step_semigroup(symbol.size());
  for (std::size_t i = 0; i < symbol.size(); ++i)
    step_semigroup[i] = std::exp(-dt * symbol[i]);

  // slab recursion: J(t_{n+1}) = S(dt) J(t_n) + D(dt) F_n, with F_n the
  // left-endpoint or endpoint-averaged nonlinearity on [t_n, t_{n+1}]
  for (int n = 0; n < u.steps(); ++n) {
    const auto& prev = out.field.slices[static_cast<std::size_t>(n)];
    auto& next = out.field.slices[static_cast<std::size_t>(n) + 1];
    const auto& fl = fhat[static_cast<std::size_t>(n)];
    const auto& fr = fhat[static_cast<std::size_t>(n) + 1];
    for (std::size_t i = 0; i < symbol.size(); ++i) {
      const auto f_eff = cfg.rule == TimeRule::left
                             ? fl.coeff[i]
                             : 0.5 * (fl.coeff[i] + fr.coeff[i]);
      next.coeff[i] = step_semigroup[i] * prev.coeff[i] + step_weight[i] * f_eff;
    }
  }
  return out;
}

namespace {

SpaceTimeField base_part(const SpectralField& mu, const SolverConfig& cfg) {
  return cfg.mode == SolveMode::forcing ? linear_part(mu, cfg) : semigroup_part(mu, cfg);
}

double max_step_difference(const SpaceTimeField& a, const SpaceTimeField& b, double p) {
  SpaceTimeField diff(a.grid, a.T, a.steps());
  for (std::size_t n = 0; n < a.slices.size(); ++n)
    for (std::size_t i = 0; i < a.slices[n].coeff.size(); ++i)
      diff.slices[n].coeff[i] = a.slices[n].coeff[i] - b.slices[n].coeff[i];
  return xt_norm(diff, p);
}

}  // namespace

AdmissibilityRecord probe_admissibility(const SpectralField& mu, const SolverConfig& cfg) {
  const DyadicPartition part(mu.grid);
  AdmissibilityRecord rec;
  rec.max_block = part.max_block();
  const double theta = cfg.model.theta;

  rec.clause1_norm =
      besov_lorentz_norm(mu, NormSpec{cfg.p, kInf, -theta, 1.0}, part).value;

  // the shifted index N p / (N + p eps) must stay > 1; cap eps accordingly
  const double n_dim = mu.grid.dim;
  const double eps_cap = n_dim * (1.0 - 1.0 / cfg.p);
  const double eps = 0.5 * std::min(theta, eps_cap);
  if (eps > 0.0) {
    const double p_eff = n_dim * cfg.p / (n_dim + cfg.p * eps);
    rec.clause2_probed = true;
    rec.clause2_eps = eps;
    rec.clause2_p_eff = p_eff;
    rec.clause2_space_norm =
        besov_lorentz_norm(mu, NormSpec{p_eff, kInf, eps - theta, kInf}, part).value;
    const int j0 = (part.max_block() + 1) / 2;
    rec.clause2_tail = tail_seminorm(mu, eps, theta, p_eff, j0, part);
  }

  rec.clause3_s = -0.5 * theta;
  rec.clause3_norm =
      besov_lorentz_norm(mu, NormSpec{cfg.p, kInf, rec.clause3_s, kInf}, part).value;
  return rec;
}

double solve_residual(const SpaceTimeField& u, const SpectralField& mu,
                      const SolverConfig& cfg) {
  auto base = base_part(mu, cfg);
  auto nl = nonlinear_part(u, cfg);
  if (!nl.finite) return std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < base.slices.size(); ++n)
    for (std::size_t i = 0; i < base.slices[n].coeff.size(); ++i)
      base.slices[n].coeff[i] += nl.field.slices[n].coeff[i];
  return max_step_difference(u, base, cfg.p);
}

SolveResult picard_solve(const SpectralField& mu, const SolverConfig& cfg) {
  auto base = base_part(mu, cfg);
  SolveResult res{base, SolveReport{}};
  auto& rep = res.report;
  rep.admissibility = probe_admissibility(mu, cfg);

  const double norm0 = xt_norm(res.u, cfg.p);
  rep.iterate_xt_norms.push_back(norm0);
  if (!std::isfinite(norm0)) {
    rep.diverged = true;
    return res;
  }
  const double blowup = 1e6 * std::max(norm0, 1e-300);

  for (int k = 1; k <= cfg.max_iters; ++k) {
    rep.iterations = k;
    auto nl = nonlinear_part(res.u, cfg);
    if (!nl.finite) {
      rep.diverged = true;
      break;
    }
    SpaceTimeField next(base.grid, base.T, base.steps());
    for (std::size_t n = 0; n < next.slices.size(); ++n)
      for (std::size_t i = 0; i < next.slices[n].coeff.size(); ++i)
        next.slices[n].coeff[i] =
            base.slices[n].coeff[i] + nl.field.slices[n].coeff[i];

    const double diff = max_step_difference(next, res.u, cfg.p);
    const double norm_next = xt_norm(next, cfg.p);
    res.u = std::move(next);
    rep.step_differences.push_back(diff);
    rep.iterate_xt_norms.push_back(norm_next);
    if (rep.step_differences.size() >= 2) {
      const auto m = rep.step_differences.size();
      const double prev = rep.step_differences[m - 2];
      rep.contraction_ratios.push_back(prev > 0.0 ? diff / prev : 0.0);
    }

    if (!std::isfinite(norm_next) || norm_next > blowup) {
      rep.diverged = true;
      break;
    }
    if (diff <= cfg.tol) {
      rep.converged = true;
      break;
    }
  }

  rep.xt_norm_value = rep.iterate_xt_norms.back();
  if (rep.converged) {
    rep.final_residual = solve_residual(res.u, mu, cfg);
    if (cfg.m_ball > 0.0) rep.ball_bound_ok = rep.xt_norm_value <= cfg.m_ball;
  } else if (!rep.diverged) {
    rep.final_residual = solve_residual(res.u, mu, cfg);
  } else {
    rep.final_residual = std::numeric_limits<double>::infinity();
  }
  return res;
}

InitialDecayFit weak_star_initial_decay(const SpaceTimeField& u, double s_mu,
                                        const SolverConfig& cfg) {
  const DyadicPartition part(u.grid);
  const double smoothness = s_mu - u.grid.dim / cfg.p;

  InitialDecayFit out;
  for (int n = 1; n <= u.steps() / 2; n *= 2) {
    out.times.push_back(u.time(n));
    out.norms.push_back(
        besov_norm(u.slices[static_cast<std::size_t>(n)], smoothness, kInf, kInf, part)
            .value);
  }
  if (out.times.size() < 4)
    throw std::invalid_argument(
        "weak_star_initial_decay: fewer than 4 early-time slices (raise n_time)");
  if (*std::max_element(out.norms.begin(), out.norms.end()) == 0.0) {
    out.trivial = true;
    return out;
  }
  out.fit = fit_loglog(out.times, out.norms);
  return out;
}

}  // namespace fracheat
