#include "fracheat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace fracheat {

void ExperimentPlan::validate() const {
  if (id.empty()) throw std::invalid_argument("ExperimentPlan: empty id");
  if (grid_ladder.empty())
    throw std::invalid_argument("ExperimentPlan: empty grid ladder");
  for (std::size_t i = 0; i + 1 < grid_ladder.size(); ++i)
    if (grid_ladder[i] >= grid_ladder[i + 1])
      throw std::invalid_argument("ExperimentPlan: grid ladder must be strictly increasing");
  for (int m : grid_ladder)
    if (m < 8 || m % 2 != 0)
      throw std::invalid_argument("ExperimentPlan: ladder entries must be even and >= 8");
  if (half_length <= 1.0)
    throw std::invalid_argument("ExperimentPlan: half_length must exceed 1");
  if (ensemble < 1) throw std::invalid_argument("ExperimentPlan: ensemble must be >= 1");
  if (!(p > 1.0)) throw std::invalid_argument("ExperimentPlan: p must exceed 1");
  if (jobs < 1) throw std::invalid_argument("ExperimentPlan: jobs must be >= 1");
}

void RatioReport::finalize(int levels, double lo, double hi, int min_levels) {
  band_lo = lo;
  band_hi = hi;
  level_max.assign(static_cast<std::size_t>(levels), 0.0);
  max_ratio = 0.0;
  bool any = false;
  bool finite = true;
  for (const auto& c : cases) {
    if (c.excluded) continue;
    any = true;
    if (!std::isfinite(c.ratio)) finite = false;
    max_ratio = std::max(max_ratio, c.ratio);
    auto& lm = level_max[static_cast<std::size_t>(c.level)];
    lm = std::max(lm, c.ratio);
  }
  trends.clear();
  for (std::size_t i = 0; i + 1 < level_max.size(); ++i)
    trends.push_back(level_max[i] > 0.0 ? level_max[i + 1] / level_max[i]
                                        : 0.0);
  pass = any && finite;
  if (levels < min_levels) pass = false;  // not enough refinement evidence
  for (double t : trends)
    if (!(t >= band_lo && t <= band_hi)) pass = false;
}

FitCase make_fit_case(const std::string& label, const LogLogFit& fit,
                      double expected, double tolerance, bool one_sided,
                      bool residual_exempt) {
  FitCase c;
  c.label = label;
  c.fitted = fit.slope;
  c.expected = expected;
  c.tolerance = tolerance;
  c.one_sided = one_sided;
  c.residual = fit.rms_residual;
  c.points = fit.points;
  c.residual_exempt = residual_exempt;
  c.inconclusive = !residual_exempt && fit.rms_residual > 0.2;
  if (c.inconclusive) {
    c.pass = false;
  } else if (one_sided) {
    c.pass = fit.slope <= expected + tolerance;
  } else {
    c.pass = std::abs(fit.slope - expected) <= tolerance;
  }
  return c;
}

namespace {

std::string plan_ladder_text(const ExperimentPlan& plan) {
  std::string out = "[";
  for (std::size_t i = 0; i < plan.grid_ladder.size(); ++i)
    out += (i ? ", " : "") + std::to_string(plan.grid_ladder[i]);
  return out + "]";
}

void add_plan_provenance(CsvTable& table, const ExperimentPlan& plan) {
  table.add_provenance("experiment", plan.id);
  table.add_provenance("grid_ladder", plan_ladder_text(plan));
  table.add_provenance("half_length", plan.half_length);
  table.add_provenance("ensemble", CsvTable::render(static_cast<long long>(plan.ensemble)));
  table.add_provenance("seed", CsvTable::render(static_cast<long long>(plan.seed)));
  table.add_provenance("p", plan.p);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<std::string> write_verify_outputs(const VerifyReport& report,
                                              const ExperimentPlan& plan,
                                              const std::string& out_dir) {
  std::vector<std::string> written;
  const std::string stem = out_dir + "/" + report.id;

  if (!report.ratios.cases.empty()) {
    CsvTable table({{"level", "integer"},
                    {"grid_points", "integer"},
                    {"label", "string"},
                    {"ratio", "number"},
                    {"excluded", "string"},
                    {"flag", "string"}});
    add_plan_provenance(table, plan);
    for (const auto& c : report.ratios.cases) {
      const int m = plan.grid_ladder[static_cast<std::size_t>(
          std::min<std::size_t>(static_cast<std::size_t>(c.level),
                                plan.grid_ladder.size() - 1))];
      table.add_row({CsvTable::render(static_cast<long long>(c.level)),
                     CsvTable::render(static_cast<long long>(m)), c.label,
                     CsvTable::render(c.ratio), bool_text(c.excluded), c.flag});
    }
    const std::string path = stem + "_ratios.csv";
    table.write(path);
    written.push_back(path);
  }

  if (!report.fits.empty()) {
    CsvTable table({{"label", "string"},
                    {"fitted", "number"},
                    {"expected", "number"},
                    {"tolerance", "number"},
                    {"one_sided", "string"},
                    {"residual", "number"},
                    {"points", "integer"},
                    {"inconclusive", "string"},
                    {"pass", "string"}});
    add_plan_provenance(table, plan);
    for (const auto& f : report.fits)
      table.add_row({f.label, CsvTable::render(f.fitted), CsvTable::render(f.expected),
                     CsvTable::render(f.tolerance), bool_text(f.one_sided),
                     CsvTable::render(f.residual),
                     CsvTable::render(static_cast<long long>(f.points)),
                     bool_text(f.inconclusive), bool_text(f.pass)});
    const std::string path = stem + "_fits.csv";
    table.write(path);
    written.push_back(path);
  }

  nlohmann::ordered_json summary;
  summary["experiment"] = report.id;
  summary["pass"] = report.pass;
  summary["note"] = report.note;
  if (!report.ratios.cases.empty()) {
    summary["max_ratio"] = report.ratios.max_ratio;
    summary["level_max"] = report.ratios.level_max;
    summary["trends"] = report.ratios.trends;
    summary["band"] = {report.ratios.band_lo, report.ratios.band_hi};
    summary["ratios_pass"] = report.ratios.pass;
  }
  if (!report.fits.empty()) {
    summary["fits"] = nlohmann::ordered_json::array();
    for (const auto& f : report.fits)
      summary["fits"].push_back({{"label", f.label},
                                 {"fitted", f.fitted},
                                 {"expected", f.expected},
                                 {"residual", f.residual},
                                 {"inconclusive", f.inconclusive},
                                 {"pass", f.pass}});
  }
  const std::string summary_path = stem + "_summary.json";
  std::ofstream out(summary_path, std::ios::binary);
  if (!out)
    throw std::runtime_error("write_verify_outputs: cannot open '" + summary_path + "'");
  out << summary.dump(2) << "\n";
  written.push_back(summary_path);
  return written;
}

std::vector<std::string> write_sweep_outputs(const SweepReport& report,
                                             const ExperimentPlan& plan,
                                             const std::string& out_dir) {
  std::vector<std::string> written;
  const std::string stem = out_dir + "/" + (plan.id.empty() ? "sweep" : plan.id);

  CsvTable cells({{"forcing", "string"},
                  {"theta", "number"},
                  {"gamma", "number"},
                  {"amplitude", "number"},
                  {"verdict", "string"},
                  {"contraction", "number"},
                  {"iterations", "integer"}});
  add_plan_provenance(cells, plan);
  for (const auto& c : report.cells)
    cells.add_row({c.forcing, CsvTable::render(c.theta), CsvTable::render(c.gamma),
                   CsvTable::render(c.amplitude), c.verdict,
                   CsvTable::render(c.contraction),
                   CsvTable::render(static_cast<long long>(c.iterations))});
  const std::string cells_path = stem + "_cells.csv";
  cells.write(cells_path);
  written.push_back(cells_path);

  CsvTable thr({{"forcing", "string"},
                {"theta", "number"},
                {"gamma", "number"},
                {"threshold_amplitude", "number"}});
  add_plan_provenance(thr, plan);
  for (const auto& t : report.thresholds)
    thr.add_row({t.forcing, CsvTable::render(t.theta), CsvTable::render(t.gamma),
                 CsvTable::render(t.amplitude)});
  const std::string thr_path = stem + "_thresholds.csv";
  thr.write(thr_path);
  written.push_back(thr_path);

  nlohmann::ordered_json summary;
  summary["experiment"] = plan.id.empty() ? "sweep" : plan.id;
  summary["pass"] = report.pass;
  summary["note"] = report.note;
  summary["cells"] = report.cells.size();
  const std::string summary_path = stem + "_summary.json";
  std::ofstream out(summary_path, std::ios::binary);
  if (!out)
    throw std::runtime_error("write_sweep_outputs: cannot open '" + summary_path + "'");
  out << summary.dump(2) << "\n";
  written.push_back(summary_path);
  return written;
}

}  // namespace fracheat
