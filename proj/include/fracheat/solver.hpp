#pragma once

#include <vector>

#include "fracheat/besov.hpp"
#include "fracheat/field.hpp"
#include "fracheat/fit.hpp"

namespace fracheat {

struct ModelParams {
  double theta = 2.0;  // diffusion order, ]0, 2]
  double gamma = 2.0;  // nonlinearity power, > 1
};

enum class SolveMode { forcing, initial_data };
// Quadrature for the nonlinear Duhamel term: piecewise-constant integrand
// taken at the left endpoint, or the average of the two endpoints.
enum class TimeRule { left, midpoint };

struct SolverConfig {
  ModelParams model;
  double p = 4.0;     // solution-space Lorentz index
  double T = 0.5;     // horizon, 0 < T <= 1 unless overridden
  int n_time = 128;   // uniform steps, slice times t_n = n T / n_time
  int max_iters = 32;
  double tol = 1e-10;  // fixed-point stopping tolerance in the sup-in-time norm
  SolveMode mode = SolveMode::forcing;
  double m_ball = 0.0;  // > 0 enables the a-priori ball diagnostic
  bool dealias_nonlinearity = true;
  TimeRule rule = TimeRule::left;
  bool disable_nonlinearity = false;  // test hook: pure linear evolution
  // The solution-space hypotheses p > gamma, p >= N(gamma-1)/theta and
  // T <= 1 are enforced unless this is set (out-of-hypothesis experiments).
  bool override_hypotheses = false;

  double dt() const { return T / n_time; }
  void validate(const Grid& g) const;
};

// u(., t_n) for n = 0..n_time, stored spectrally.
struct SpaceTimeField {
  Grid grid;
  double T = 0.0;
  std::vector<SpectralField> slices;

  SpaceTimeField(const Grid& g, double horizon, int n_time);
  int steps() const { return static_cast<int>(slices.size()) - 1; }
  double time(int n) const { return T * n / steps(); }
};

// Which sufficient conditions the forcing satisfies, as measured quantities;
// reported, never used to block a run.
struct AdmissibilityRecord {
  double clause1_norm = 0.0;  // block-sum norm at smoothness -theta, r = 1
  bool clause2_probed = false;
  double clause2_eps = 0.0;
  double clause2_p_eff = 0.0;
  double clause2_space_norm = 0.0;  // smoothness eps-theta, r = inf
  double clause2_tail = 0.0;        // high-block tail proxy
  double clause3_s = 0.0;
  double clause3_norm = 0.0;  // smoothness s in ]-theta, 0[, r = inf
  int max_block = 0;
};

AdmissibilityRecord probe_admissibility(const SpectralField& mu, const SolverConfig& cfg);

struct SolveReport {
  std::vector<double> iterate_xt_norms;   // after each iteration
  std::vector<double> step_differences;   // sup-in-time norm of u^{k+1} - u^k
  std::vector<double> contraction_ratios; // consecutive difference quotients
  double final_residual = 0.0;
  bool converged = false;
  bool diverged = false;
  int iterations = 0;
  double xt_norm_value = 0.0;
  bool ball_bound_ok = true;
  AdmissibilityRecord admissibility;
};

// sup over positive slice times of the windowed weak-L^p norm.
double xt_norm(const SpaceTimeField& u, double p);

// Exact linear response to the forcing: slice n carries the diagonal weight
// (1 - e^{-t_n |xi|^theta}) / |xi|^theta on mu.
SpaceTimeField linear_part(const SpectralField& mu, const SolverConfig& cfg);

// Semigroup evolution of initial data: slice n = e^{-t_n |xi|^theta} mu.
SpaceTimeField semigroup_part(const SpectralField& mu, const SolverConfig& cfg);

// Duhamel image of the nonlinearity sign(u)|u|^gamma, first-order
// exponential integrator (exact semigroup weights between slices).
// finite = false reports overflow of the power nonlinearity (a divergence
// signal, not an error).
struct NonlinearImage {
  SpaceTimeField field;
  bool finite = true;
};
NonlinearImage nonlinear_part(const SpaceTimeField& u, const SolverConfig& cfg);

// Fixed-point defect sup_n || u(t_n) - linear(t_n) - J[u](t_n) ||.
double solve_residual(const SpaceTimeField& u, const SpectralField& mu,
                      const SolverConfig& cfg);

// Picard iteration u^{k+1} = linear + J[u^k], starting from the linear part.
// Stops on step difference <= tol, max_iters, or divergence (non-finite
// values, or sup norm beyond 1e6 x the linear part's).
struct SolveResult {
  SpaceTimeField u;
  SolveReport report;
};
SolveResult picard_solve(const SpectralField& mu, const SolverConfig& cfg);

// Early-time decay fit of the sup-norm Besov norm at smoothness
// s_mu - N/p against t on a geometric sub-grid of slices; evidence that the
// solution collapses to zero data in the dual-space sense.
struct InitialDecayFit {
  bool trivial = false;  // all sampled norms vanish
  LogLogFit fit;
  std::vector<double> times;
  std::vector<double> norms;
};
InitialDecayFit weak_star_initial_decay(const SpaceTimeField& u, double s_mu,
                                        const SolverConfig& cfg);

}  // namespace fracheat
