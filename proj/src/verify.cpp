#include "fracheat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fracheat/besov.hpp"
#include "fracheat/dyadic.hpp"
#include "fracheat/forcing.hpp"
#include "fracheat/lorentz.hpp"
#include "fracheat/multipliers.hpp"
#include "fracheat/parallel.hpp"
#include "fracheat/transforms.hpp"

namespace fracheat {
namespace {

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        std::exp(la + (lb - la) * i / std::max(1, n - 1));
  return out;
}

// Spectral prolongation: same function represented on a finer grid, so
// refinement studies compare identical inputs across ladder levels.
SpectralField prolong(const SpectralField& coarse, const Grid& fine) {
  if (fine.dim != coarse.grid.dim ||
      fine.half_length != coarse.grid.half_length ||
      fine.points < coarse.grid.points)
    throw std::invalid_argument("prolong: target grid must refine the source box");
  SpectralField out(fine);
  for (std::size_t i = 0; i < coarse.coeff.size(); ++i) {
    auto idx = coarse.grid.unflatten(i);
    for (int a = 0; a < coarse.grid.dim; ++a) {
      const int k = idx[a] < coarse.grid.points / 2 ? idx[a]
                                                    : idx[a] - coarse.grid.points;
      idx[a] = k >= 0 ? k : fine.points + k;
    }
    out.coeff[fine.flatten(idx)] = coarse.coeff[i];
  }
  return out;
}

// Torus convolution executed spectrally: (g * f)^ = |box| g^ f^.
SpectralField convolve(const SpectralField& g, const SpectralField& f) {
  if (!(g.grid == f.grid)) throw std::invalid_argument("convolve: grid mismatch");
  SpectralField out(g.grid);
  const double vol = g.grid.box_volume();
  for (std::size_t i = 0; i < out.coeff.size(); ++i)
    out.coeff[i] = vol * g.coeff[i] * f.coeff[i];
  return out;
}

PhysicalField box_indicator(const Grid& g, double radius) {
  PhysicalField out(g);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto idx = g.unflatten(i);
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double x = g.coordinate(idx[a]);
      r2 += x * x;
    }
    out.values[i] = r2 <= radius * radius ? 1.0 : 0.0;
  }
  return out;
}

double uln(const PhysicalField& f, double p) {
  return uniformly_local_lorentz_norm(f, p, kInf);
}

// Short value tag for case labels; full precision belongs in value columns.
std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void append_note(std::string& note, const std::string& line) {
  if (!note.empty()) note += "; ";
  note += line;
}

}  // namespace

VerifyReport verify_young_ul(const ExperimentPlan& plan) {
  plan.validate();
  VerifyReport report;
  report.id = plan.id;
  const double L = plan.half_length;
  const std::vector<double> kernel_times =
      plan.times.empty() ? std::vector<double>{0.02, 0.1} : plan.times;
  bool gates_ok = true;

  // Ensemble drawn once on the coarsest grid, prolonged upward: each level
  // measures the same functions.
  Grid coarse(1, plan.grid_ladder.front(), L);
  std::vector<SpectralField> members;
  for (int e = 0; e < plan.ensemble; ++e)
    members.push_back(make_random_bandlimited(coarse, plan.seed + static_cast<std::uint64_t>(e),
                                              -0.5, 1, 5, 1.0));

  const int levels = static_cast<int>(plan.grid_ladder.size());
  std::vector<std::vector<RatioCase>> level_cases(static_cast<std::size_t>(levels));
  std::string note;

  run_cells(plan.jobs, levels, [&](int li) {
    Grid g(1, plan.grid_ladder[static_cast<std::size_t>(li)], L);
    auto& cases = level_cases[static_cast<std::size_t>(li)];

    // discrete point mass: convolution identity, ratio exactly 1
    const auto delta = make_delta(g, 1.0);
    const auto f_ind = forward_transform(box_indicator(g, 0.5));
    const double ind_norm = uln(inverse_transform(f_ind), plan.p);
    const double delta_l1 = lp_norm(inverse_transform(delta), 1.0);
    const double r_delta =
        uln(inverse_transform(convolve(delta, f_ind)), plan.p) / (delta_l1 * ind_norm);
    // exactness gate, kept out of the trend statistics
    cases.push_back({"delta_identity", li, r_delta, true, "identity_gate"});

    // averaging kernel against the indicator: contraction up to window leakage
    const auto heat = semigroup(make_delta(g, 1.0), 0.05, 2.0);
    const double heat_l1 = lp_norm(inverse_transform(heat), 1.0);
    const double r_heat =
        uln(inverse_transform(convolve(heat, f_ind)), plan.p) / (heat_l1 * ind_norm);
    cases.push_back({"heat_indicator", li, r_heat, false, ""});

    for (int e = 0; e < plan.ensemble; ++e) {
      const auto f = prolong(members[static_cast<std::size_t>(e)], g);
      const double fn = uln(inverse_transform(f), plan.p);
      for (double t : kernel_times) {
        const auto gk = semigroup(make_delta(g, 1.0), t, 2.0);
        const double g1 = lp_norm(inverse_transform(gk), 1.0);
        const double ratio = uln(inverse_transform(convolve(gk, f)), plan.p) / (g1 * fn);
        cases.push_back({"ensemble_" + std::to_string(e) + "_t" + tag(t),
                         li, ratio, false, ""});
      }
    }
  });

  for (auto& cases : level_cases)
    for (auto& c : cases) {
      if (c.label == "delta_identity" && std::abs(c.ratio - 1.0) > 1e-9) {
        gates_ok = false;
        append_note(note, "convolution identity violated at level " +
                              std::to_string(c.level));
      }
      if (c.label == "heat_indicator" && c.ratio > 1.10) {
        gates_ok = false;
        append_note(note, "averaging ratio exceeds leakage band at level " +
                              std::to_string(c.level));
      }
      report.ratios.cases.push_back(std::move(c));
    }

  report.ratios.finalize(levels, 0.85, 1.15, 3);
  report.pass = report.ratios.pass && gates_ok;
  report.note = note.empty() ? "max ratio stable across refinement" : note;
  return report;
}

VerifyReport verify_semigroup_decay_lorentz(const ExperimentPlan& plan) {
  plan.validate();
  VerifyReport report;
  report.id = plan.id;
  const double L = plan.half_length;
  const int levels = static_cast<int>(plan.grid_ladder.size());
  bool gates_ok = true;
  std::string note;

  // p = q branch: no decay factor, constant uniform over t in [1e-3, 1].
  const auto t_grid = logspace(1e-3, 1.0, 9);
  std::vector<std::vector<RatioCase>> level_cases(static_cast<std::size_t>(levels));
  run_cells(plan.jobs, levels, [&](int li) {
    Grid g(1, plan.grid_ladder[static_cast<std::size_t>(li)], L);
    const auto f = forward_transform(box_indicator(g, 0.5));
    const double fn = uln(inverse_transform(f), plan.p);
    for (double t : t_grid) {
      const double ratio = uln(inverse_transform(semigroup(f, t, 2.0)), plan.p) / fn;
      level_cases[static_cast<std::size_t>(li)].push_back(
          {"pq_indicator_t" + tag(t), li, ratio, false, ""});
    }
  });
  for (auto& cases : level_cases)
    for (auto& c : cases) {
      if (c.ratio > 1.2) {
        gates_ok = false;
        append_note(note, "p=q uniformity band exceeded");
      }
      report.ratios.cases.push_back(std::move(c));
    }

  // point-mass fits on the finest grid: reference index p = 1 (unit mass),
  // expected small-time exponent (N/theta)(1/q - 1)
  Grid fine(1, plan.grid_ladder.back(), L);
  const double h = fine.spacing();
  struct Triple {
    double q, theta;
  };
  const std::vector<Triple> triples = {{2.0, 2.0}, {4.0, 1.5}, {3.0, 1.2}};
  for (const auto& tr : triples) {
    const double t_lo = std::pow(10.0 * h, tr.theta);
    const double t_hi = std::min(0.25, t_lo * 64.0);
    if (t_hi <= t_lo * 4.0)
      throw std::invalid_argument("semigroup_lorentz: fit window collapsed; refine the grid");
    const auto ts = logspace(t_lo, t_hi, 10);
    std::vector<double> norms;
    for (double t : ts)
      norms.push_back(uln(inverse_transform(semigroup(make_delta(fine, 1.0), t, tr.theta)),
                          tr.q));
    const auto fit = fit_loglog(ts, norms);
    const double expected = (1.0 / tr.theta) * (1.0 / tr.q - 1.0);
    report.fits.push_back(make_fit_case(
        "delta_q" + tag(tr.q) + "_theta" + tag(tr.theta), fit,
        expected, 0.1, false));

    // the "1+" side: the ratio to the full bound stays within one band over
    // the whole window including t = 1
    double lo = kInf, hi = 0.0;
    for (double t : logspace(t_lo, 1.0, 8)) {
      const double norm =
          uln(inverse_transform(semigroup(make_delta(fine, 1.0), t, tr.theta)), tr.q);
      const double bound = 1.0 + std::pow(t, expected);
      lo = std::min(lo, norm / bound);
      hi = std::max(hi, norm / bound);
    }
    if (!(hi / lo <= 5.0)) {
      gates_ok = false;
      append_note(note, "bound ratio drifts beyond band for theta " +
                            tag(tr.theta));
    }
  }

  report.ratios.finalize(levels, 0.85, 1.15, 3);
  bool fits_ok = true;
  for (const auto& f : report.fits) fits_ok = fits_ok && f.pass;
  report.pass = report.ratios.pass && fits_ok && gates_ok;
  report.note = note.empty() ? "decay exponents within +-0.1" : note;
  return report;
}

VerifyReport verify_semigroup_decay_besov(const ExperimentPlan& plan) {
  plan.validate();
  VerifyReport report;
  report.id = plan.id;
  const double L = plan.half_length;
  const int levels = static_cast<int>(plan.grid_ladder.size());
  const double p = 2.0;
  const double sigma = -(1.0 - 1.0 / p);  // flat-block index for the point mass
  bool gates_ok = true;
  std::string note;

  // s = sigma branch: multiplier bounded blockwise, ratio uniformly bounded
  Grid coarse(1, plan.grid_ladder.front(), L);
  std::vector<SpectralField> members;
  for (int e = 0; e < std::max(2, plan.ensemble / 2); ++e)
    members.push_back(make_random_bandlimited(coarse, plan.seed + 13 + static_cast<std::uint64_t>(e),
                                              -0.5, 1, 5, 1.0));
  std::vector<std::vector<RatioCase>> level_cases(static_cast<std::size_t>(levels));
  run_cells(plan.jobs, levels, [&](int li) {
    Grid g(1, plan.grid_ladder[static_cast<std::size_t>(li)], L);
    const DyadicPartition part(g);
    const NormSpec spec{p, kInf, -0.5, kInf};
    for (std::size_t e = 0; e < members.size(); ++e) {
      const auto f = prolong(members[e], g);
      const double fn = besov_lorentz_norm(f, spec, part).value;
      for (double t : {1e-3, 1e-2, 1e-1, 1.0}) {
        const double ratio =
            besov_lorentz_norm(semigroup(f, t, 1.5), spec, part).value / fn;
        level_cases[static_cast<std::size_t>(li)].push_back(
            {"s_eq_sigma_" + std::to_string(e) + "_t" + tag(t), li,
             ratio, false, ""});
      }
    }
  });
  for (auto& cases : level_cases)
    for (auto& c : cases) {
      if (c.ratio > 1.3) {
        gates_ok = false;
        append_note(note, "s=sigma ratio above band");
      }
      report.ratios.cases.push_back(std::move(c));
    }

  // smoothing fits on the finest grid: quotient slope -(s - sigma)/theta
  Grid fine(1, plan.grid_ladder.back(), L);
  const DyadicPartition fine_part(fine);
  struct Triple {
    double theta, s;
  };
  const std::vector<Triple> triples = {{1.5, 1.0}, {2.0, 0.5}, {1.0, 0.0}};
  const auto delta = make_delta(fine, 1.0);
  const double denom =
      besov_lorentz_norm(delta, NormSpec{p, kInf, sigma, kInf}, fine_part).value;
  for (const auto& tr : triples) {
    // window chosen so the dominant block stays interior: the block maximum
    // sits at 2^{theta j} ~ 1/(2 theta t)
    const int jmax = fine_part.max_block();
    const double t_lo = std::pow(2.0, -tr.theta * (jmax - 1)) / (2.0 * tr.theta);
    const double t_hi = std::pow(2.0, -2.0 * tr.theta) / (2.0 * tr.theta);
    const auto ts = logspace(t_lo, t_hi, 10);
    std::vector<double> quotients;
    for (double t : ts)
      quotients.push_back(besov_lorentz_norm(semigroup(delta, t, tr.theta),
                                             NormSpec{p, kInf, tr.s, kInf}, fine_part)
                              .value /
                          denom);
    const auto fit = fit_loglog(ts, quotients);
    const double expected = -(tr.s - sigma) / tr.theta;
    report.fits.push_back(make_fit_case("delta_smoothing_theta" + tag(tr.theta),
                                        fit, expected, 0.1, false));
  }

  // third-index gain: summable blocks at any positive time, value stable
  // under refinement, recorded outside the trend statistics
  if (levels >= 2) {
    for (double t : {0.01, 0.1}) {
      std::vector<double> values;
      for (int li = levels - 2; li < levels; ++li) {
        Grid g(1, plan.grid_ladder[static_cast<std::size_t>(li)], L);
        const DyadicPartition part(g);
        const double v = besov_lorentz_norm(semigroup(make_delta(g, 1.0), t, 1.5),
                                            NormSpec{p, kInf, sigma, 1.0}, part)
                             .value;
        values.push_back(v);
        report.ratios.cases.push_back({"r1_gain_t" + tag(t), li, v,
                                       true, "recorded"});
      }
      if (!std::isfinite(values.back()) ||
          values.back() / values.front() > 1.15 ||
          values.back() / values.front() < 0.85) {
        gates_ok = false;
        append_note(note, "third-index gain unstable under refinement");
      }
    }
  }

  report.ratios.finalize(levels, 0.85, 1.15, 3);
  bool fits_ok = true;
  for (const auto& f : report.fits) fits_ok = fits_ok && f.pass;
  report.pass = report.ratios.pass && fits_ok && gates_ok;
  report.note = note.empty() ? "smoothing exponents within +-0.1" : note;
  return report;
}

VerifyReport verify_forcing_recovery(const ExperimentPlan& plan) {
  plan.validate();
  VerifyReport report;
  report.id = plan.id;
  const double L = plan.half_length;
  const double theta = plan.thetas.empty() ? 2.0 : plan.thetas.front();
  const double p = plan.p;
  const std::vector<double> horizons =
      plan.times.empty() ? std::vector<double>{1.0, 0.5, 0.25, 0.125} : plan.times;
  const int n_time = 64;
  const int levels = static_cast<int>(plan.grid_ladder.size());
  bool gates_ok = true;
  std::string note;

  // 20 forcing members spanning the admissible classes, plus a zero probe
  struct Member {
    std::string label;
    ForcingSpec spec;
  };
  std::vector<Member> members;
  for (double mass : {1.0, 0.3, 3.0}) {
    ForcingSpec s;
    s.kind = ForcingKind::delta;
    s.amplitude = mass;
    members.push_back({"delta_m" + tag(mass), s});
  }
  for (double amp : {1.0, 0.5, 2.0}) {
    ForcingSpec s;
    s.kind = ForcingKind::delta_derivative;
    s.amplitude = amp;
    members.push_back({"ddelta_a" + tag(amp), s});
  }
  for (double expo : {0.3, 0.5, 0.8})
    for (double amp : {1.0, 2.0}) {
      ForcingSpec s;
      s.kind = ForcingKind::homogeneous;
      s.exponent = expo;
      s.amplitude = amp;
      members.push_back({"homog_e" + tag(expo) + "_a" + tag(amp), s});
    }
  {
    int idx = 0;
    for (double slope : {-1.5, -1.0, -0.5, 0.0})
      for (int rep = 0; rep < 2; ++rep) {
        ForcingSpec s;
        s.kind = ForcingKind::random_bandlimited;
        s.slope = slope;
        s.seed = plan.seed + 100 + static_cast<std::uint64_t>(idx++);
        s.band_lo = 1;
        s.band_hi = 5;
        members.push_back({"random_s" + tag(slope) + "_r" + std::to_string(rep), s});
      }
  }
  {
    ForcingSpec s;
    s.kind = ForcingKind::delta;
    s.amplitude = 0.0;
    members.push_back({"zero", s});
  }

  const NormSpec dual{p, kInf, -theta, kInf};
  struct Cell {
    std::vector<RatioCase> cases;
  };
  const int n_members = static_cast<int>(members.size());
  std::vector<Cell> cells(static_cast<std::size_t>(levels * n_members));

  run_cells(plan.jobs, levels * n_members, [&](int cell) {
    const int li = cell / n_members;
    const int mi = cell % n_members;
    Grid g(1, plan.grid_ladder[static_cast<std::size_t>(li)], L);
    const DyadicPartition part(g);
    const auto mu = make_forcing(g, members[static_cast<std::size_t>(mi)].spec);
    const double lhs = besov_lorentz_norm(mu, dual, part).value;
    for (double T : horizons) {
      double rhs = 0.0;
      for (int n = 1; n <= n_time; ++n) {
        const double t = T * n / n_time;
        const auto w = duhamel_multiplier(g, t, theta);
        SpectralField slice(g);
        for (std::size_t i = 0; i < slice.coeff.size(); ++i)
          slice.coeff[i] = w[i] * mu.coeff[i];
        rhs = std::max(rhs, uln(inverse_transform(slice), p));
      }
      RatioCase c;
      c.label = members[static_cast<std::size_t>(mi)].label + "_T" + tag(T);
      c.level = li;
      if (rhs < 1e-14) {
        c.excluded = true;
        c.flag = "denominator_zero";
      } else {
        c.ratio = lhs / rhs;
      }
      cells[static_cast<std::size_t>(cell)].cases.push_back(std::move(c));
    }
  });
  for (auto& cell : cells)
    for (auto& c : cell.cases) report.ratios.cases.push_back(std::move(c));

  // closed-form oracle: single plateau mode, both sides diagonal
  {
    Grid g(1, plan.grid_ladder.back(), L);
    const DyadicPartition part(g);
    const int j = 3;
    const int k = plateau_frequency_index(g, j);
    const auto mode = make_cosine_mode(g, {k, 0, 0}, 1.0);
    const double xi = g.frequency(k);
    const double T = horizons.front();
    const double lhs = besov_lorentz_norm(mode, dual, part).value;
    double rhs = 0.0;
    for (int n = 1; n <= n_time; ++n) {
      const double t = T * n / n_time;
      const auto w = duhamel_multiplier(g, t, theta);
      SpectralField slice(g);
      for (std::size_t i = 0; i < slice.coeff.size(); ++i)
        slice.coeff[i] = w[i] * mode.coeff[i];
      rhs = std::max(rhs, uln(inverse_transform(slice), p));
    }
    const double ratio = lhs / rhs;
    const double expected =
        std::pow(2.0, -theta * j) / duhamel_weight(xi, T, theta);
    if (std::abs(ratio / expected - 1.0) > 1e-10) {
      gates_ok = false;
      append_note(note, "single-mode closed form mismatch");
    }
    report.ratios.cases.push_back(
        {"single_mode_oracle", levels - 1, ratio, true, "recorded"});
  }

  // horizon exponent of the empirical constant on the finest level
  {
    std::vector<double> c_emp(horizons.size(), 0.0);
    for (const auto& c : report.ratios.cases) {
      if (c.excluded || c.level != levels - 1) continue;
      for (std::size_t ti = 0; ti < horizons.size(); ++ti) {
        const std::string suffix = "_T" + tag(horizons[ti]);
        if (c.label.size() > suffix.size() &&
            c.label.compare(c.label.size() - suffix.size(), suffix.size(), suffix) == 0)
          c_emp[ti] = std::max(c_emp[ti], c.ratio);
      }
    }
    const auto fit = fit_loglog(horizons, c_emp);
    // admissible band [-1.3, 0]: constant may grow toward small horizons no
    // faster than 1/T
    report.fits.push_back(make_fit_case("constant_horizon_exponent", fit, -0.65, 0.65,
                                        false, true));
  }

  report.ratios.finalize(levels, 0.8, 1.2, 2);
  bool fits_ok = true;
  for (const auto& f : report.fits) fits_ok = fits_ok && f.pass;
  report.pass = report.ratios.pass && fits_ok && gates_ok;
  report.note = note.empty() ? "recovery ratios finite and refinement-stable" : note;
  return report;
}

VerifyReport verify_kernel_decay(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.half_length < 32.0)
    throw std::invalid_argument(
        "verify_kernel_decay: tail window insufficient; half_length must be >= 32");
  VerifyReport report;
  report.id = plan.id;
  const double L = plan.half_length;
  const std::vector<double> thetas =
      plan.thetas.empty() ? std::vector<double>{0.5, 1.0, 1.5, 2.0} : plan.thetas;
  const std::vector<double> times =
      plan.times.empty() ? std::vector<double>{0.5, 1.0} : plan.times;
  const int levels = static_cast<int>(plan.grid_ladder.size());
  std::string note;

  // truncated response-weight kernel: low frequencies of the averaging symbol
  auto truncated = [&](const Grid& g, double T, double theta) {
    SpectralField f(g);
    const double vol = g.box_volume();
    for (std::size_t i = 0; i < f.coeff.size(); ++i) {
      const double xi = std::sqrt(g.frequency_norm2(static_cast<int>(i)));
      f.coeff[i] =
          (lowpass_symbol(xi) + annulus_symbol(1, xi)) * c_T_value(xi, T, theta) / vol;
    }
    return inverse_transform(f);
  };

  // Pointwise tail slopes are measured on the evolution kernels: their symbol
  // is smooth and rapidly decaying, so the algebraic tail of the frequency
  // cusp is the only large-|x| contribution.  The truncated kernels ring at
  // the cutoff scale (a compactly supported smooth symbol decays only
  // sub-exponentially), which buries the same power law in any window a
  // periodic box can reach; they are gated through L^1 mass instead.
  //
  // The fit runs on a dedicated grid with doubled box and doubled bandwidth:
  // the larger box keeps wrap-around images below ~5% of the direct tail over
  // the window, and the larger bandwidth keeps the hard frequency truncation
  // of the slowly decaying theta < 1 symbol below the tail amplitude.
  Grid fine(1, plan.grid_ladder.back(), L);
  Grid tail_grid(1, 4 * plan.grid_ladder.back(), 2.0 * L);
  const double fit_time = 0.5;
  for (double theta : thetas) {
    const std::string label = "theta" + tag(theta) + "_t" + tag(fit_time);
    auto evo = semigroup(make_delta(tail_grid, 1.0), fit_time, theta);
    if (theta < 1.0) {
      // theta < 1: the sub-leading tail term decays only like t|x|^{-theta}
      // relative to the leading one and biases the fit shallow inside any
      // affordable box; the (t, 2t) pair cancels it exactly, leaving the
      // t-linear kernel component whose tail is the clean power law.
      const auto twice = semigroup(make_delta(tail_grid, 1.0), 2.0 * fit_time, theta);
      for (std::size_t i = 0; i < evo.coeff.size(); ++i)
        evo.coeff[i] = 0.5 * (4.0 * evo.coeff[i] - twice.coeff[i]);
    }
    const auto kernel = inverse_transform(evo);
    double peak = 0.0;
    for (double v : kernel.values) peak = std::max(peak, std::abs(v));
    const int nb = 12;
    const double r0 = 4.0, r1 = L / 4.0;
    std::vector<double> bin_r, bin_v;
    for (int b = 0; b < nb; ++b) {
      const double lo = r0 * std::pow(r1 / r0, static_cast<double>(b) / nb);
      const double hi = r0 * std::pow(r1 / r0, static_cast<double>(b + 1) / nb);
      double best = 0.0;
      for (std::size_t i = 0; i < kernel.values.size(); ++i) {
        const double x = std::abs(tail_grid.coordinate(static_cast<int>(i)));
        if (x >= lo && x < hi) best = std::max(best, std::abs(kernel.values[i]));
      }
      if (best > 1e-13 * peak) {
        bin_r.push_back(std::sqrt(lo * hi));
        bin_v.push_back(best);
      }
    }
    if (theta < 2.0 && bin_r.size() >= 4) {
      const double expected = -(1.0 + std::min(1.0, theta));
      report.fits.push_back(make_fit_case(label + "_tail_slope",
                                          fit_loglog(bin_r, bin_v), expected, 0.1,
                                          true));
    } else if (bin_r.size() >= 4) {
      // the fitted slope itself is the evidence; curvature exempts the
      // residual gate
      report.fits.push_back(make_fit_case(label + "_superpolynomial_flag",
                                          fit_loglog(bin_r, bin_v), -4.0, 0.0, true,
                                          true));
    } else {
      append_note(note, label + ": tail below noise floor");
      LogLogFit floor_hit;
      floor_hit.slope = -kInf;
      report.fits.push_back(make_fit_case(label + "_superpolynomial_flag", floor_hit,
                                          -4.0, 0.0, true, true));
    }
  }

  for (double theta : thetas) {
    // L^1 mass of the truncated kernel: finite and refinement-stable.  Each
    // (theta, T) family is normalized by its coarsest-level mass and entered
    // in both orientations so the trend band catches drift either way; the
    // absolute masses ride along as recorded cases.
    for (double T : times) {
      const std::string base = "theta" + tag(theta) + "_T" + tag(T) + "_l1";
      std::vector<double> mass;
      for (int li = 0; li < levels; ++li) {
        Grid g(1, plan.grid_ladder[static_cast<std::size_t>(li)], L);
        mass.push_back(lp_norm(truncated(g, T, theta), 1.0));
        report.ratios.cases.push_back({base + "_mass", li, mass.back(), true,
                                       "recorded"});
      }
      for (int li = 0; li < levels; ++li) {
        report.ratios.cases.push_back({base, li, mass[static_cast<std::size_t>(li)] /
                                                     mass.front(),
                                       false, ""});
        report.ratios.cases.push_back({base + "_inv", li,
                                       mass.front() /
                                           mass[static_cast<std::size_t>(li)],
                                       false, ""});
      }
    }
    // horizon scaling: for large T the averaging symbol is the dissipation
    // symbol over T, so the L^1 mass decays like 1/T
    const std::vector<double> ladder = {32.0, 64.0, 128.0, 256.0};
    std::vector<double> mass;
    for (double T : ladder) mass.push_back(lp_norm(truncated(fine, T, theta), 1.0));
    report.fits.push_back(make_fit_case("theta" + tag(theta) + "_l1_horizon",
                                        fit_loglog(ladder, mass), -1.0, 0.15, false));
  }

  report.ratios.finalize(levels, 0.95, 1.05, 2);
  bool fits_ok = true;
  for (const auto& f : report.fits) fits_ok = fits_ok && f.pass;
  report.pass = report.ratios.pass && fits_ok;
  report.note =
      note.empty() ? "tail slopes within bound; L1 mass refinement-stable" : note;
  return report;
}

VerifyReport verify_embedding_chain(const ExperimentPlan& plan) {
  plan.validate();
  VerifyReport report;
  report.id = plan.id;
  const double L = plan.half_length;
  const double p = plan.p;
  const int levels = static_cast<int>(plan.grid_ladder.size());
  bool gates_ok = true;
  std::string note;

  Grid coarse(1, plan.grid_ladder.front(), L);
  std::vector<SpectralField> members;
  for (int e = 0; e < plan.ensemble; ++e)
    members.push_back(make_random_bandlimited(coarse, plan.seed + 31 + static_cast<std::uint64_t>(e),
                                              0.0, 1, 5, 1.0));

  std::vector<std::vector<RatioCase>> level_cases(static_cast<std::size_t>(levels));
  std::vector<std::string> level_notes(static_cast<std::size_t>(levels));
  run_cells(plan.jobs, levels, [&](int li) {
    Grid g(1, plan.grid_ladder[static_cast<std::size_t>(li)], L);
    const DyadicPartition part(g);
    const NormSpec sum_spec{p, kInf, 0.0, 1.0};
    const NormSpec sup_spec{p, kInf, 0.0, kInf};
    auto& cases = level_cases[static_cast<std::size_t>(li)];

    auto chain = [&](const SpectralField& f, const std::string& label, bool excluded) {
      const double mid = uln(inverse_transform(f), p);
      const double left = besov_lorentz_norm(f, sum_spec, part).value;
      const double right = besov_lorentz_norm(f, sup_spec, part).value;
      cases.push_back({label + "_sum_to_ul", li, left > 0.0 ? mid / left : 0.0,
                       excluded, excluded ? "recorded" : ""});
      cases.push_back({label + "_ul_to_sup", li, mid > 0.0 ? right / mid : 0.0,
                       excluded, excluded ? "recorded" : ""});
      return std::pair{mid > 0.0, std::pair{mid / std::max(left, 1e-300),
                                            right / std::max(mid, 1e-300)}};
    };

    // single-block field: all three norms coincide up to partition leakage;
    // exactness gate, kept out of the trend statistics
    const auto mode = make_cosine_mode(g, {plateau_frequency_index(g, 3), 0, 0}, 1.0);
    const auto [mode_ok, mode_ratios] = chain(mode, "single_block", true);
    if (!mode_ok || std::abs(mode_ratios.first - 1.0) > 1e-3 ||
        std::abs(mode_ratios.second - 1.0) > 1e-3)
      level_notes[static_cast<std::size_t>(li)] = "single-block leakage above 1e-3";

    chain(forward_transform(box_indicator(g, 0.5)), "indicator", true);

    for (std::size_t e = 0; e < members.size(); ++e)
      chain(prolong(members[e], g), "ensemble_" + std::to_string(e), false);
  });
  for (auto& cases : level_cases)
    for (auto& c : cases) report.ratios.cases.push_back(std::move(c));
  for (const auto& ln : level_notes)
    if (!ln.empty()) {
      gates_ok = false;
      append_note(note, ln);
    }

  report.ratios.finalize(levels, 0.85, 1.15, 3);
  report.pass = report.ratios.pass && gates_ok;
  report.note = note.empty() ? "chain ratios bounded and refinement-stable" : note;
  return report;
}

VerifyReport verify_sobolev_embedding(const ExperimentPlan& plan) {
  plan.validate();
  VerifyReport report;
  report.id = plan.id;
  const double L = plan.half_length;
  const double p = plan.p;
  const int levels = static_cast<int>(plan.grid_ladder.size());
  bool gates_ok = true;
  std::string note;

  Grid coarse(1, plan.grid_ladder.front(), L);
  std::vector<SpectralField> members;
  for (int e = 0; e < plan.ensemble; ++e)
    members.push_back(make_random_bandlimited(coarse, plan.seed + 47 + static_cast<std::uint64_t>(e),
                                              -0.25, 1, 5, 1.0));

  std::vector<std::vector<RatioCase>> level_cases(static_cast<std::size_t>(levels));
  std::vector<std::string> level_notes(static_cast<std::size_t>(levels));
  run_cells(plan.jobs, levels, [&](int li) {
    Grid g(1, plan.grid_ladder[static_cast<std::size_t>(li)], L);
    const DyadicPartition part(g);
    auto& cases = level_cases[static_cast<std::size_t>(li)];

    // part 1: sup-base block scale controlled by the windowed weak base
    auto part1 = [&](const SpectralField& f, const std::string& label, bool excluded) {
      const double num = besov_norm(f, -1.0 / p, kInf, kInf, part).value;
      const double den =
          besov_lorentz_norm(f, NormSpec{p, kInf, 0.0, kInf}, part).value;
      cases.push_back({label + "_part1", li, den > 0.0 ? num / den : 0.0, excluded,
                       excluded ? "recorded" : ""});
      return den > 0.0 ? num / den : 0.0;
    };
    // part 2: integrability shift at half rate
    auto part2 = [&](const SpectralField& f, const std::string& label, bool excluded) {
      const double shift = 0.5 / 2.0;  // N(1 - theta)/p at theta = 1/2, p = 2
      const double num =
          besov_lorentz_norm(f, NormSpec{4.0, kInf, -shift, kInf}, part).value;
      const double den =
          besov_lorentz_norm(f, NormSpec{2.0, kInf, 0.0, kInf}, part).value;
      cases.push_back({label + "_part2", li, den > 0.0 ? num / den : 0.0, excluded,
                       excluded ? "recorded" : ""});
    };

    // plateau mode: part 1 ratio reduces exactly to the Bernstein quotient
    const int j = 3;
    const auto mode = make_cosine_mode(g, {plateau_frequency_index(g, j), 0, 0}, 1.0);
    const double mode_ratio = part1(mode, "single_mode", false);
    const auto bern = bernstein_check(mode, j, p, part);
    if (bern.empty || std::abs(mode_ratio / bern.ratio - 1.0) > 1e-10)
      level_notes[static_cast<std::size_t>(li)] = "single-mode Bernstein mismatch";
    part2(mode, "single_mode", false);

    for (std::size_t e = 0; e < members.size(); ++e) {
      const auto f = prolong(members[e], g);
      part1(f, "ensemble_" + std::to_string(e), false);
      part2(f, "ensemble_" + std::to_string(e), false);
    }

    // point mass realizes the L^1-based chain into the shifted scale
    const auto delta = make_delta(g, 1.0);
    const double chain_num =
        besov_lorentz_norm(delta, NormSpec{p, kInf, 1.0 / p - 1.0, kInf}, part).value;
    const double chain_den = besov_norm(delta, 0.0, 1.0, kInf, part).value;
    cases.push_back({"delta_chain", li, chain_num / chain_den, true, "recorded"});
    if (!std::isfinite(chain_num / chain_den))
      level_notes[static_cast<std::size_t>(li)] = "point-mass chain ratio not finite";

    // zero field: skipped-trivial
    cases.push_back({"zero_field", li, 0.0, true, "zero_field"});
  });
  for (auto& cases : level_cases)
    for (auto& c : cases) report.ratios.cases.push_back(std::move(c));
  for (const auto& ln : level_notes)
    if (!ln.empty()) {
      gates_ok = false;
      append_note(note, ln);
    }

  report.ratios.finalize(levels, 0.85, 1.15, 3);
  report.pass = report.ratios.pass && gates_ok;
  report.note = note.empty() ? "embedding ratios bounded and refinement-stable" : note;
  return report;
}

}  // namespace fracheat
