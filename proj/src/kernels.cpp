#include "fracheat/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracheat {
namespace {

// Periodized 1D Gaussian (4 pi t)^{-1/2} exp(-y^2/4t) at y, period 2L.
// Image terms fall below 1e-18 of the peak within a few periods.
double periodized_gaussian_1d(double y, double t, double L) {
  const double norm = 1.0 / std::sqrt(4.0 * M_PI * t);
  const int images = 2 + static_cast<int>(std::ceil(
                             (2.0 * std::sqrt(t * 41.5) + std::abs(y)) / (2.0 * L)));
  double sum = 0.0;
  for (int m = -images; m <= images; ++m) {
    const double z = y + 2.0 * L * m;
    sum += std::exp(-z * z / (4.0 * t));
  }
  return norm * sum;
}

// Periodized 1D Poisson kernel (t/pi) / (t^2 + y^2), period 2L.  Direct images
// for |m| <= K; the O(m^-2) tails are completed by the midpoint-rule
// Euler-Maclaurin correction  sum_{m>K} f(m) ~ int_{K+1/2} f + f'(K+1/2)/24,
// which leaves an error ~ f'''(K) ~ 1e-16 of the peak at K = 800.
double periodized_poisson_1d(double y, double t, double L) {
  constexpr int K = 800;
  const double P = 2.0 * L;
  double sum = 0.0;
  for (int m = -K; m <= K; ++m) {
    const double z = y + P * m;
    sum += t / (t * t + z * z);
  }
  const double a = K + 0.5;
  for (double sign : {1.0, -1.0}) {
    const double x0 = sign * y;  // right tail of P_t(x0 + P u)
    const double edge = x0 + P * a;
    sum += (M_PI / 2.0 - std::atan(edge / t)) / P;
    sum += -(2.0 * P * t) * edge / ((t * t + edge * edge) * (t * t + edge * edge)) / 24.0;
  }
  return sum / M_PI;
}

}  // namespace

PhysicalField closed_form_kernel(const Grid& g, double t, double theta) {
  if (!(t > 0.0)) throw std::invalid_argument("closed_form_kernel: t must be > 0");
  if (theta != 1.0 && theta != 2.0)
    throw std::invalid_argument(
        "closed_form_kernel: only theta = 1 (Poisson) and theta = 2 (Gaussian) "
        "have closed forms");
  if (theta == 1.0 && g.dim != 1)
    throw std::invalid_argument("closed_form_kernel: Poisson kernel supported in dim 1 only");

  PhysicalField out(g);
  if (theta == 1.0) {
    for (int j = 0; j < g.points; ++j)
      out.values[j] = periodized_poisson_1d(g.coordinate(j), t, g.half_length);
    return out;
  }

  // Gaussian periodization factorizes over axes.
  std::vector<double> axis(g.points);
  for (int j = 0; j < g.points; ++j)
    axis[j] = periodized_gaussian_1d(g.coordinate(j), t, g.half_length);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto idx = g.unflatten(i);
    double v = 1.0;
    for (int a = 0; a < g.dim; ++a) v *= axis[idx[a]];
    out.values[i] = v;
  }
  return out;
}

}  // namespace fracheat
