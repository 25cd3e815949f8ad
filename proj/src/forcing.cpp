#include "fracheat/forcing.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "fracheat/multipliers.hpp"
#include "fracheat/rng.hpp"
#include "fracheat/transforms.hpp"

namespace fracheat {

namespace {

double torus_distance2(const Grid& g, const std::array<double, 3>& x,
                       const std::array<double, 3>& c) {
  double d2 = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    const double d = std::remainder(x[a] - c[a], 2.0 * g.half_length);
    d2 += d * d;
  }
  return d2;
}

}  // namespace

SpectralField make_delta(const Grid& g, double mass) {
  SpectralField f(g);
  const double c = mass / std::pow(2.0 * g.half_length, g.dim);
  for (auto& v : f.coeff) v = c;
  return f;
}

SpectralField make_delta_derivative(const Grid& g, int axis, double mass) {
  if (axis < 0 || axis >= g.dim)
    throw std::invalid_argument("make_delta_derivative: axis out of range");
  SpectralField f(g);
  const double c = mass / std::pow(2.0 * g.half_length, g.dim);
  for (int i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(static_cast<std::size_t>(i));
    const int k = g.mode(idx[static_cast<std::size_t>(axis)]);
    if (k == -g.points / 2) continue;
    f.coeff[i] = std::complex<double>(0.0, (std::numbers::pi / g.half_length) * k * c);
  }
  return f;
}

SpectralField make_homogeneous(const Grid& g, const HomogeneousSpec& spec) {
  if (!(spec.exponent > 0.0))
    throw std::invalid_argument("make_homogeneous: exponent must be positive");
  const double cutoff = spec.cutoff == 0.0 ? g.spacing() : spec.cutoff;
  if (cutoff < g.spacing() * (1.0 - 1e-12))
    throw std::invalid_argument("make_homogeneous: cutoff below grid spacing");
  if (!(spec.radius > 0.0) || spec.radius > g.half_length)
    throw std::invalid_argument("make_homogeneous: radius must lie in ]0, L]");
  if (spec.centers.empty())
    throw std::invalid_argument("make_homogeneous: needs at least one center");
  for (std::size_t a = 0; a < spec.centers.size(); ++a)
    for (std::size_t b = a + 1; b < spec.centers.size(); ++b)
      if (torus_distance2(g, spec.centers[a], spec.centers[b]) <= 1.0)
        throw std::invalid_argument(
            "make_homogeneous: centers must be pairwise separated by more than 1");

  PhysicalField f(g);
  std::array<double, 3> x{};
  for (int i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(static_cast<std::size_t>(i));
    for (int a = 0; a < g.dim; ++a) x[static_cast<std::size_t>(a)] = g.coordinate(idx[static_cast<std::size_t>(a)]);
    double v = 0.0;
    for (const auto& c : spec.centers) {
      const double d = std::sqrt(torus_distance2(g, x, c));
      if (d < spec.radius) v += std::pow(std::max(d, cutoff), -spec.exponent);
    }
    f.values[static_cast<std::size_t>(i)] = spec.amplitude * v;
  }
  return forward_transform(f);
}

SpectralField make_random_bandlimited(const Grid& g, std::uint64_t seed, double slope,
                                      int band_lo, int band_hi, double amplitude) {
  SpectralField f(g);
  if (band_lo > band_hi || amplitude == 0.0) return f;
  const double lo = std::ldexp(1.0, band_lo);
  const double hi = std::ldexp(1.0, band_hi);
  if (hi > dealias_frequency(g))
    throw std::invalid_argument("make_random_bandlimited: band exceeds the dealiased range");

  double sum_mag2 = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double xi = std::sqrt(g.frequency_norm2(i));
    if (xi < lo || xi > hi) continue;
    sum_mag2 += std::pow(xi, 2.0 * slope);
  }
  if (sum_mag2 == 0.0) return f;  // no lattice mode in the band
  const double scale =
      amplitude / std::sqrt(std::pow(2.0 * g.half_length, g.dim) * sum_mag2);

  Rng rng(seed);
  for (std::size_t i = 0; i < f.coeff.size(); ++i) {
    const std::size_t ic = f.conjugate_index(i);
    if (ic < i) continue;
    const double xi = std::sqrt(g.frequency_norm2(i));
    if (xi < lo || xi > hi) continue;
    const double mag = scale * std::pow(xi, slope);
    if (ic == i) {
      f.coeff[i] = rng.uniform() < 0.5 ? -mag : mag;
    } else {
      const double phase = 2.0 * std::numbers::pi * rng.uniform();
      f.coeff[i] = std::polar(mag, phase);
      f.coeff[ic] = std::conj(f.coeff[i]);
    }
  }
  return f;
}

SpectralField make_cosine_mode(const Grid& g, const std::array<int, 3>& k, double amplitude) {
  std::array<int, 3> plus{}, minus{};
  for (int a = 0; a < g.dim; ++a) {
    const int m = k[static_cast<std::size_t>(a)];
    if (m <= -g.points / 2 || m >= g.points / 2)
      throw std::invalid_argument("make_cosine_mode: mode outside the paired lattice range");
    plus[static_cast<std::size_t>(a)] = m >= 0 ? m : m + g.points;
    minus[static_cast<std::size_t>(a)] = m <= 0 ? -m : g.points - m;
  }
  SpectralField f(g);
  f.coeff[g.flatten(plus)] += 0.5 * amplitude;
  f.coeff[g.flatten(minus)] += 0.5 * amplitude;
  return f;
}

SpectralField make_gaussian_bump(const Grid& g, double width, double amplitude,
                                 const std::array<double, 3>& center) {
  if (!(width > 0.0)) throw std::invalid_argument("make_gaussian_bump: width must be positive");
  PhysicalField f(g);
  std::array<double, 3> x{};
  for (int i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(static_cast<std::size_t>(i));
    for (int a = 0; a < g.dim; ++a) x[static_cast<std::size_t>(a)] = g.coordinate(idx[static_cast<std::size_t>(a)]);
    f.values[static_cast<std::size_t>(i)] =
        amplitude * std::exp(-torus_distance2(g, x, center) / (2.0 * width * width));
  }
  return forward_transform(f);
}

ForcingKind parse_forcing_kind(const std::string& name) {
  if (name == "delta") return ForcingKind::delta;
  if (name == "delta_derivative") return ForcingKind::delta_derivative;
  if (name == "homogeneous") return ForcingKind::homogeneous;
  if (name == "random_bandlimited") return ForcingKind::random_bandlimited;
  if (name == "single_mode") return ForcingKind::single_mode;
  if (name == "gaussian_bump") return ForcingKind::gaussian_bump;
  throw std::invalid_argument("unknown forcing kind: " + name);
}

std::string forcing_kind_name(ForcingKind kind) {
  switch (kind) {
    case ForcingKind::delta: return "delta";
    case ForcingKind::delta_derivative: return "delta_derivative";
    case ForcingKind::homogeneous: return "homogeneous";
    case ForcingKind::random_bandlimited: return "random_bandlimited";
    case ForcingKind::single_mode: return "single_mode";
    case ForcingKind::gaussian_bump: return "gaussian_bump";
  }
  throw std::logic_error("unreachable forcing kind");
}

SpectralField make_forcing(const Grid& g, const ForcingSpec& spec) {
  switch (spec.kind) {
    case ForcingKind::delta:
      return make_delta(g, spec.amplitude);
    case ForcingKind::delta_derivative:
      return make_delta_derivative(g, spec.axis, spec.amplitude);
    case ForcingKind::homogeneous:
      return make_homogeneous(
          g, HomogeneousSpec{spec.exponent, spec.amplitude, spec.centers, spec.cutoff,
                             spec.radius});
    case ForcingKind::random_bandlimited:
      return make_random_bandlimited(g, spec.seed, spec.slope, spec.band_lo, spec.band_hi,
                                     spec.amplitude);
    case ForcingKind::single_mode:
      return make_cosine_mode(g, spec.mode, spec.amplitude);
    case ForcingKind::gaussian_bump:
      return make_gaussian_bump(g, spec.width, spec.amplitude, spec.centers.front());
  }
  throw std::logic_error("unreachable forcing kind");
}

}  // namespace fracheat
