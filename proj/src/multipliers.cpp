#include "fracheat/multipliers.hpp"

#include <cmath>
#include <stdexcept>

namespace fracheat {

void validate_theta(double theta) {
  if (!(theta > 0.0) || theta > 2.0)
    throw std::invalid_argument("theta must lie in ]0, 2]");
}

double psi_profile(double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("psi_profile: s must be >= 0");
  if (s < 1e-2) {
    // denominator = s^2 * (1/2 - s/6 + s^2/24 - s^3/120 + s^4/720 - s^5/5040);
    // truncation error below 1e-16 relative for s < 1e-2.
    const double poly =
        0.5 + s * (-1.0 / 6.0 +
                   s * (1.0 / 24.0 +
                        s * (-1.0 / 120.0 + s * (1.0 / 720.0 - s / 5040.0))));
    return 1.0 / poly;
  }
  return s * s / (s + std::expm1(-s));
}

double c_T_value(double freq_norm, double T, double theta) {
  if (!(T > 0.0)) throw std::invalid_argument("c_T_value: T must be > 0");
  validate_theta(theta);
  return psi_profile(T * std::pow(freq_norm, theta)) / (T * T);
}

double duhamel_weight(double freq_norm, double t, double theta) {
  if (t < 0.0) throw std::invalid_argument("duhamel_weight: t must be >= 0");
  validate_theta(theta);
  const double s = t * std::pow(freq_norm, theta);
  if (s == 0.0) return t;  // lim_{xi->0} (1 - e^{-t|xi|^theta})/|xi|^theta = t
  return t * (-std::expm1(-s)) / s;
}

std::vector<double> fractional_symbol(const Grid& g, double theta) {
  validate_theta(theta);
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::pow(g.frequency_norm2(i), 0.5 * theta);
  return out;
}

void semigroup_apply(SpectralField& f, double t, double theta) {
  if (t < 0.0) throw std::invalid_argument("semigroup_apply: t must be >= 0");
  validate_theta(theta);
  const Grid& g = f.grid;
  for (std::size_t i = 0; i < f.coeff.size(); ++i) {
    const double sym = std::pow(g.frequency_norm2(i), 0.5 * theta);
    f.coeff[i] *= std::exp(-t * sym);
  }
}

SpectralField semigroup(const SpectralField& f, double t, double theta) {
  SpectralField out = f;
  semigroup_apply(out, t, theta);
  return out;
}

std::vector<double> duhamel_multiplier(const Grid& g, double t, double theta) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = duhamel_weight(std::sqrt(g.frequency_norm2(i)), t, theta);
  return out;
}

std::vector<double> c_T_multiplier(const Grid& g, double T, double theta) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = c_T_value(std::sqrt(g.frequency_norm2(i)), T, theta);
  return out;
}

void dealias(SpectralField& f) {
  const Grid& g = f.grid;
  const int keep = g.points / 3;  // retain per-axis |k| <= M/3
  for (std::size_t i = 0; i < f.coeff.size(); ++i) {
    const auto idx = g.unflatten(i);
    for (int a = 0; a < g.dim; ++a) {
      const int k = g.mode(idx[a]);
      if (k > keep || k < -keep) {
        f.coeff[i] = 0.0;
        break;
      }
    }
  }
}

double dealias_frequency(const Grid& g) {
  return (2.0 / 3.0) * g.nyquist_frequency();
}

}  // namespace fracheat
