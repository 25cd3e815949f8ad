#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fracheat/field.hpp"

namespace fracheat {

// All constructors return Hermitian-symmetric spectra (real distributions).

// Point mass: every coefficient = mass / (2L)^N, so pairings against test
// functions give mass * psi(0) independently of the grid.
SpectralField make_delta(const Grid& g, double mass);

// Distributional derivative of the point mass along `axis` (0-based):
// coefficients i*xi_axis*mass/(2L)^N.  The unpaired Nyquist mode on that
// axis is dropped (an odd multiplier has no real representative there).
SpectralField make_delta_derivative(const Grid& g, int axis, double mass);

// amplitude * sum_j |x - x_j|^{-exponent} on B(x_j, radius), the distance
// clamped below by `cutoff` (>= grid spacing) and measured on the torus.
struct HomogeneousSpec {
  double exponent = 0.5;
  double amplitude = 1.0;
  std::vector<std::array<double, 3>> centers = {{0.0, 0.0, 0.0}};
  double cutoff = 0.0;  // 0 selects the grid spacing
  double radius = 1.0;
};
SpectralField make_homogeneous(const Grid& g, const HomogeneousSpec& spec);

// Random-phase field: |coeff| = A |xi|^{slope} exactly on the band
// 2^{band_lo} <= |xi| <= 2^{band_hi}, phases drawn from `seed`, A chosen so
// the box L^2 norm equals `amplitude`.  Identical inputs give bit-identical
// fields.  The band must sit inside the dealiased range.
SpectralField make_random_bandlimited(const Grid& g, std::uint64_t seed, double slope,
                                      int band_lo, int band_hi, double amplitude);

// Real cosine pair amplitude * cos(xi_k . x) for a lattice mode k.
SpectralField make_cosine_mode(const Grid& g, const std::array<int, 3>& k, double amplitude);

// Smooth bounded sample: amplitude * exp(-|x - center|^2 / (2 width^2)),
// torus distance.
SpectralField make_gaussian_bump(const Grid& g, double width, double amplitude,
                                 const std::array<double, 3>& center);

enum class ForcingKind {
  delta,
  delta_derivative,
  homogeneous,
  random_bandlimited,
  single_mode,
  gaussian_bump,
};

ForcingKind parse_forcing_kind(const std::string& name);
std::string forcing_kind_name(ForcingKind kind);

// One stanza describing a forcing term; `amplitude` is the mass for the
// point masses, the prefactor for the homogeneous profile, the box L^2 norm
// for the random field, and the peak height for the mode/bump kinds.
struct ForcingSpec {
  ForcingKind kind = ForcingKind::delta;
  double amplitude = 1.0;
  int axis = 0;
  double exponent = 0.5;
  double cutoff = 0.0;
  double radius = 1.0;
  std::vector<std::array<double, 3>> centers = {{0.0, 0.0, 0.0}};
  std::uint64_t seed = 1;
  double slope = 0.0;
  int band_lo = 1;
  int band_hi = 3;
  std::array<int, 3> mode = {1, 0, 0};
  double width = 1.0;
};

SpectralField make_forcing(const Grid& g, const ForcingSpec& spec);

}  // namespace fracheat
