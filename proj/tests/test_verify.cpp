#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "fracheat/verify.hpp"

using namespace fracheat;

namespace {

// Reduced plans keep every experiment under a few seconds; resolutions stay
// above each experiment's own validity guards (dealias band for the random
// ensemble, fit-window collapse for the decay fits).
ExperimentPlan small_plan(const std::string& id, std::vector<int> ladder,
                          double half_length, int ensemble) {
  ExperimentPlan plan;
  plan.id = id;
  plan.grid_ladder = std::move(ladder);
  plan.half_length = half_length;
  plan.ensemble = ensemble;
  return plan;
}

const RatioCase* find_case(const VerifyReport& r, const std::string& label) {
  for (const auto& c : r.ratios.cases)
    if (c.label == label) return &c;
  return nullptr;
}

const FitCase* find_fit(const VerifyReport& r, const std::string& label) {
  for (const auto& f : r.fits)
    if (f.label == label) return &f;
  return nullptr;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& stem) {
    path = std::filesystem::temp_directory_path() /
           (stem + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

LogLogFit fake_fit(double slope, double residual, int points = 8) {
  LogLogFit f;
  f.slope = slope;
  f.rms_residual = residual;
  f.points = points;
  return f;
}

}  // namespace

TEST_CASE("experiment plan validation") {
  ExperimentPlan plan;
  plan.id = "ok";
  CHECK_NOTHROW(plan.validate());

  ExperimentPlan bad = plan;
  bad.id = "";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = plan;
  bad.grid_ladder = {512, 512};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = plan;
  bad.grid_ladder = {127, 256};  // odd entry
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = plan;
  bad.grid_ladder = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = plan;
  bad.half_length = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = plan;
  bad.ensemble = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = plan;
  bad.p = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = plan;
  bad.jobs = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("fitted-exponent gating") {
  // two-sided band
  CHECK(make_fit_case("a", fake_fit(-0.52, 0.01), -0.5, 0.1, false).pass);
  CHECK_FALSE(make_fit_case("a", fake_fit(-0.75, 0.01), -0.5, 0.1, false).pass);

  // one-sided: steeper than the bound passes, shallower fails
  CHECK(make_fit_case("b", fake_fit(-3.0, 0.01), -2.0, 0.1, true).pass);
  CHECK(make_fit_case("b", fake_fit(-1.95, 0.01), -2.0, 0.1, true).pass);
  CHECK_FALSE(make_fit_case("b", fake_fit(-1.7, 0.01), -2.0, 0.1, true).pass);

  // a noisy fit is inconclusive, not a pass
  const auto noisy = make_fit_case("c", fake_fit(-0.5, 0.35), -0.5, 0.1, false);
  CHECK(noisy.inconclusive);
  CHECK_FALSE(noisy.pass);

  // flag-style cases carry the evidence in the slope itself
  const auto flagged =
      make_fit_case("d", fake_fit(-22.0, 1.5), -4.0, 0.0, true, true);
  CHECK_FALSE(flagged.inconclusive);
  CHECK(flagged.pass);
}

TEST_CASE("ratio report refinement verdict") {
  RatioReport r;
  r.cases = {{"a", 0, 1.00, false, ""},
             {"a", 1, 1.03, false, ""},
             {"a", 2, 1.01, false, ""},
             {"spike", 1, 1e6, true, "recorded"}};
  r.finalize(3, 0.9, 1.1, 3);
  CHECK(r.pass);
  CHECK(r.max_ratio == doctest::Approx(1.03));  // excluded spike ignored
  REQUIRE(r.level_max.size() == 3);
  CHECK(r.level_max[1] == doctest::Approx(1.03));
  REQUIRE(r.trends.size() == 2);
  CHECK(r.trends[0] == doctest::Approx(1.03));

  // not enough refinement evidence
  RatioReport two = r;
  two.cases = {{"a", 0, 1.0, false, ""}, {"a", 1, 1.0, false, ""}};
  two.finalize(2, 0.9, 1.1, 3);
  CHECK_FALSE(two.pass);

  // trend outside the band
  RatioReport drift = r;
  drift.cases = {{"a", 0, 1.0, false, ""},
                 {"a", 1, 1.5, false, ""},
                 {"a", 2, 1.5, false, ""}};
  drift.finalize(3, 0.9, 1.1, 3);
  CHECK_FALSE(drift.pass);

  // a level with no included data cannot support a trend
  RatioReport hole = r;
  hole.cases = {{"a", 0, 1.0, false, ""},
                {"a", 1, 1.0, true, "recorded"},
                {"a", 2, 1.0, false, ""}};
  hole.finalize(3, 0.9, 1.1, 3);
  CHECK_FALSE(hole.pass);

  // nonfinite data fails outright
  RatioReport inf_case = r;
  inf_case.cases = {{"a", 0, std::numeric_limits<double>::infinity(), false, ""},
                    {"a", 1, 1.0, false, ""},
                    {"a", 2, 1.0, false, ""}};
  inf_case.finalize(3, 0.9, 1.1, 3);
  CHECK_FALSE(inf_case.pass);
}

TEST_CASE("convolution bound over the ensemble") {
  const auto plan = small_plan("young_small", {256, 384, 512}, 8.0, 2);
  const auto report = verify_young_ul(plan);
  CHECK(report.pass);
  CHECK(report.id == plan.id);

  const auto* delta = find_case(report, "delta_identity");
  REQUIRE(delta != nullptr);
  CHECK(delta->excluded);
  CHECK(delta->ratio == doctest::Approx(1.0).epsilon(1e-9));

  for (const auto& c : report.ratios.cases)
    if (!c.excluded) CHECK(c.ratio <= 1.15);
}

TEST_CASE("weak-norm semigroup decay") {
  // fit windows need h <= 1/128 at theta = 2 to stay clear of the collapse
  // guard
  const auto plan = small_plan("lorentz_small", {512, 1024, 2048}, 8.0, 2);
  const auto report = verify_semigroup_decay_lorentz(plan);
  CHECK(report.pass);
  REQUIRE(report.fits.size() >= 3);
  for (const auto& f : report.fits) {
    CHECK(f.pass);
    if (!f.one_sided) CHECK(std::abs(f.fitted - f.expected) <= f.tolerance);
  }
}

TEST_CASE("block-norm semigroup smoothing") {
  const auto plan = small_plan("besov_small", {512, 1024, 2048}, 8.0, 4);
  const auto report = verify_semigroup_decay_besov(plan);
  CHECK(report.pass);
  const auto* smooth = find_fit(report, "delta_smoothing_theta2");
  REQUIRE(smooth != nullptr);
  CHECK(smooth->pass);
  CHECK(std::abs(smooth->fitted - smooth->expected) <= smooth->tolerance);
}

TEST_CASE("forcing recovery against the dual norm") {
  auto plan = small_plan("recovery_small", {256, 512}, 8.0, 4);
  plan.times = {0.5, 0.25};
  const auto report = verify_forcing_recovery(plan);
  CHECK(report.pass);

  // the closed-form comparison itself is an internal gate folded into pass;
  // the recorded value is the raw two-norm ratio
  const auto* oracle = find_case(report, "single_mode_oracle");
  REQUIRE(oracle != nullptr);
  CHECK(oracle->flag == "recorded");
  CHECK(oracle->ratio > 0.0);
  CHECK(std::isfinite(oracle->ratio));

  // the zero forcing has no response: excluded, not a failure
  bool saw_zero = false;
  for (const auto& c : report.ratios.cases)
    if (c.label.rfind("zero", 0) == 0) {
      saw_zero = true;
      CHECK(c.excluded);
      CHECK(c.flag == "denominator_zero");
    }
  CHECK(saw_zero);

  const auto* horizon = find_fit(report, "constant_horizon_exponent");
  REQUIRE(horizon != nullptr);
  CHECK(horizon->pass);
}

TEST_CASE("kernel tail decay and mass stability") {
  auto plan = small_plan("kernel_small", {2048, 4096}, 64.0, 1);
  const auto report = verify_kernel_decay(plan);
  CHECK(report.pass);

  const auto* half = find_fit(report, "theta0.5_t0.5_tail_slope");
  REQUIRE(half != nullptr);
  CHECK(half->pass);
  CHECK(half->fitted <= -1.4);

  const auto* one = find_fit(report, "theta1_t0.5_tail_slope");
  REQUIRE(one != nullptr);
  CHECK(one->fitted <= -1.9);

  const auto* flag = find_fit(report, "theta2_t0.5_superpolynomial_flag");
  REQUIRE(flag != nullptr);
  CHECK(flag->pass);
  CHECK(flag->fitted <= -4.0);

  for (double theta : {0.5, 1.0, 1.5, 2.0}) {
    char label[64];
    std::snprintf(label, sizeof label, "theta%g_l1_horizon", theta);
    const auto* fit = find_fit(report, label);
    REQUIRE(fit != nullptr);
    CHECK(std::abs(fit->fitted + 1.0) <= 0.15);
  }

  auto narrow = plan;
  narrow.half_length = 16.0;
  CHECK_THROWS_AS(verify_kernel_decay(narrow), std::invalid_argument);
}

TEST_CASE("norm embedding chains") {
  const auto plan = small_plan("embed_small", {256, 384, 512}, 8.0, 2);
  const auto chain = verify_embedding_chain(plan);
  CHECK(chain.pass);
  const auto* block = find_case(chain, "single_block_sum_to_ul");
  REQUIRE(block != nullptr);
  CHECK(block->excluded);

  const auto sobolev = verify_sobolev_embedding(plan);
  CHECK(sobolev.pass);
  bool saw_mode = false;
  for (const auto& c : sobolev.ratios.cases)
    if (c.label.rfind("single_mode", 0) == 0 && !c.excluded) saw_mode = true;
  CHECK(saw_mode);
}

TEST_CASE("forcing reconstruction from converged states") {
  auto plan = small_plan("necessity_small", {256}, 16.0, 1);
  const auto report = verify_necessity(plan);
  CHECK(report.pass);

  for (const char* label : {"delta", "random", "single_mode"}) {
    const auto* c = find_case(report, label);
    REQUIRE(c != nullptr);
    CHECK_FALSE(c->excluded);
    CHECK(c->ratio < 1e-6);  // reconstruction is exact up to roundoff
  }

  const auto* corrupted = find_case(report, "corrupted_state");
  REQUIRE(corrupted != nullptr);
  CHECK(corrupted->excluded);
  CHECK(corrupted->flag == "inconsistent_state");

  const auto* divergent = find_case(report, "divergent_forcing");
  REQUIRE(divergent != nullptr);
  CHECK(divergent->flag == "diverged");
}

TEST_CASE("solvability sweep verdicts") {
  auto plan = small_plan("sweep_small", {256}, 16.0, 1);
  plan.thetas = {2.0};
  plan.gammas = {1.5, 2.0};
  const auto report = solvability_sweep(plan);
  CHECK(report.pass);

  // 2 forcing kinds x 1 theta x 2 gammas x 10 amplitudes
  CHECK(report.cells.size() == 40);
  for (const auto& c : report.cells)
    if (c.amplitude == 0.0) CHECK(c.verdict == "converged");

  double thr_low = -1.0, thr_high = -1.0;
  for (const auto& t : report.thresholds)
    if (t.forcing == "delta") {
      if (t.gamma == 1.5) thr_low = t.amplitude;
      if (t.gamma == 2.0) thr_high = t.amplitude;
    }
  REQUIRE(thr_low >= 0.0);
  REQUIRE(thr_high >= 0.0);
  CHECK(thr_low >= thr_high);  // weaker nonlinearity tolerates more forcing
}

TEST_CASE("report files are deterministic") {
  auto plan = small_plan("necessity_out", {256}, 16.0, 1);
  const auto report = verify_necessity(plan);

  TempDir a("fracheat_verify_a_"), b("fracheat_verify_b_");
  const auto files_a = write_verify_outputs(report, plan, a.path.string());
  const auto files_b = write_verify_outputs(report, plan, b.path.string());
  REQUIRE(files_a.size() == files_b.size());
  bool saw_summary = false, saw_ratios = false;
  for (std::size_t i = 0; i < files_a.size(); ++i) {
    CHECK(slurp(files_a[i]) == slurp(files_b[i]));
    const auto name = std::filesystem::path(files_a[i]).filename().string();
    if (name == "necessity_out_summary.json") saw_summary = true;
    if (name == "necessity_out_ratios.csv") saw_ratios = true;
  }
  CHECK(saw_summary);
  CHECK(saw_ratios);

  const auto ratios = slurp(a.path.string() + "/necessity_out_ratios.csv");
  CHECK(ratios.find("# experiment = necessity_out\n") != std::string::npos);
  const auto summary = slurp(a.path.string() + "/necessity_out_summary.json");
  CHECK(summary.find("\"pass\": true") != std::string::npos);

  auto sweep_plan = small_plan("sweep_out", {128}, 16.0, 1);
  sweep_plan.thetas = {2.0};
  sweep_plan.gammas = {2.0};
  const auto sweep = solvability_sweep(sweep_plan);
  const auto sweep_a = write_sweep_outputs(sweep, sweep_plan, a.path.string());
  const auto sweep_b = write_sweep_outputs(sweep, sweep_plan, b.path.string());
  REQUIRE(sweep_a.size() == sweep_b.size());
  for (std::size_t i = 0; i < sweep_a.size(); ++i)
    CHECK(slurp(sweep_a[i]) == slurp(sweep_b[i]));
}
