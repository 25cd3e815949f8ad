#include "fracheat/lorentz.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracheat {

void NormSpec::validate() const {
  if (!(p > 1.0) || p == kInf)
    throw std::invalid_argument("NormSpec: p must lie in ]1, inf[");
  if (!(q >= 1.0)) throw std::invalid_argument("NormSpec: q must lie in [1, inf]");
  if (!(r >= 1.0)) throw std::invalid_argument("NormSpec: r must lie in [1, inf]");
  if (!std::isfinite(s)) throw std::invalid_argument("NormSpec: s must be finite");
}

double lorentz_norm(const RearrangementTable& t, double p, double q) {
  NormSpec{p, q}.validate();
  if (t.empty()) return 0.0;

  if (q == kInf) {
    double best = 0.0;
    for (std::size_t i = 0; i < t.values.size(); ++i)
      best = std::max(best, t.values[i] * std::pow(t.cummeasure[i], 1.0 / p));
    return best;
  }

  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    const double cur = std::pow(t.cummeasure[i], q / p);
    sum += std::pow(t.values[i], q) * (p / q) * (cur - prev);
    prev = cur;
  }
  return std::pow(sum, 1.0 / q);
}

double lorentz_norm(const PhysicalField& f, double p, double q) {
  return lorentz_norm(build_rearrangement(f), p, q);
}

double lp_norm(const PhysicalField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must lie in [1, inf]");
  if (p == kInf) return f.max_abs();
  double sum = 0.0;
  for (double v : f.values) sum += std::pow(std::abs(v), p);
  return std::pow(sum * f.grid.cell_volume(), 1.0 / p);
}

namespace {

// Indices of one periodic axis window |x - z| <= 1 (slightly padded; exact
// membership is decided per node against the full torus distance).  When the
// window spans the whole axis every index appears exactly once.
void axis_window(const Grid& g, double z, std::vector<int>& out) {
  out.clear();
  const double h = g.spacing();
  const int reach = static_cast<int>(std::floor(1.0 / h)) + 1;
  if (2 * reach + 1 >= g.points) {
    for (int j = 0; j < g.points; ++j) out.push_back(j);
    return;
  }
  const int base = static_cast<int>(std::floor((z + g.half_length) / h));
  for (int d = -reach; d <= reach; ++d) {
    int j = (base + d) % g.points;
    if (j < 0) j += g.points;
    out.push_back(j);
  }
}

double torus_delta(double x, double z, double period) {
  double d = std::abs(x - z);
  if (d > 0.5 * period) d = period - d;
  return d;
}

}  // namespace

double uniformly_local_lorentz_norm(const PhysicalField& f, double p, double q,
                                    const CenterLattice& centers) {
  const Grid& g = f.grid;
  if (!(centers.spacing > 0.0) || centers.spacing > 0.5)
    throw std::invalid_argument("uniformly_local_lorentz_norm: center spacing must lie in ]0, 0.5]");
  if (!(g.half_length > 1.0))
    throw std::invalid_argument(
        "uniformly_local_lorentz_norm: window radius 1 requires half_length > 1");

  const int n_centers = static_cast<int>(std::ceil(2.0 * g.half_length / centers.spacing));
  const double step = 2.0 * g.half_length / n_centers;
  const double period = 2.0 * g.half_length;

  std::vector<int> win[3];
  std::vector<double> samples;
  double best = 0.0;

  std::array<int, 3> nc{1, 1, 1};
  for (int a = 0; a < g.dim; ++a) nc[a] = n_centers;

  for (int c0 = 0; c0 < nc[0]; ++c0)
    for (int c1 = 0; c1 < nc[1]; ++c1)
      for (int c2 = 0; c2 < nc[2]; ++c2) {
        const std::array<int, 3> cidx{c0, c1, c2};
        std::array<double, 3> z{0.0, 0.0, 0.0};
        for (int a = 0; a < g.dim; ++a) {
          z[a] = -g.half_length + cidx[a] * step;
          axis_window(g, z[a], win[a]);
        }
        samples.clear();
        const std::size_t n0 = win[0].size();
        const std::size_t n1 = g.dim > 1 ? win[1].size() : 1;
        const std::size_t n2 = g.dim > 2 ? win[2].size() : 1;
        std::array<int, 3> idx{0, 0, 0};
        for (std::size_t i0 = 0; i0 < n0; ++i0)
          for (std::size_t i1 = 0; i1 < n1; ++i1)
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
              idx[0] = win[0][i0];
              if (g.dim > 1) idx[1] = win[1][i1];
              if (g.dim > 2) idx[2] = win[2][i2];
              double d2 = 0.0;
              for (int a = 0; a < g.dim; ++a) {
                const double d = torus_delta(g.coordinate(idx[a]), z[a], period);
                d2 += d * d;
              }
              if (d2 < 1.0) samples.push_back(f.values[g.flatten(idx)]);
            }
        best = std::max(
            best, lorentz_norm(build_rearrangement(samples, g.cell_volume()), p, q));
      }
  return best;
}

WeakProductCheck weak_product_check(const PhysicalField& f, const PhysicalField& g,
                                    double p0, double p1) {
  if (!(f.grid == g.grid))
    throw std::invalid_argument("weak_product_check: fields live on different grids");
  if (!(p0 > 1.0) || !(p1 > 1.0) || p0 == kInf || p1 == kInf)
    throw std::invalid_argument("weak_product_check: p0, p1 must lie in ]1, inf[");
  const double inv = 1.0 / p0 + 1.0 / p1;
  if (!(inv < 1.0))
    throw std::invalid_argument("weak_product_check: requires 1/p0 + 1/p1 < 1");

  WeakProductCheck out;
  out.p = 1.0 / inv;
  const double nf = lorentz_norm(f, p0, kInf);
  const double ng = lorentz_norm(g, p1, kInf);
  if (nf == 0.0 || ng == 0.0) {
    out.degenerate = true;
    return out;
  }
  PhysicalField prod(f.grid);
  for (std::size_t i = 0; i < prod.values.size(); ++i)
    prod.values[i] = f.values[i] * g.values[i];
  out.ratio = lorentz_norm(prod, out.p, kInf) / (nf * ng);
  return out;
}

}  // namespace fracheat
