#pragma once

#include <vector>

#include "fracheat/field.hpp"

namespace fracheat {

// Psi(s) = s^2 / (s + e^{-s} - 1) for s >= 0, Psi(0) = 2.
// Closed form for s >= 1e-2; for s < 1e-2 the denominator is summed by its
// Taylor series s^2/2 - s^3/6 + ... (the direct form loses all digits to
// cancellation).  The two branches agree to ~1e-14 at the switch point.
double psi_profile(double s);

// C_T at a single frequency magnitude: C_T(xi) = T^{-2} Psi(T |xi|^theta).
// C_T(0) = 2/T^2.  Satisfies C_{T/2^{theta j}}(xi) = 2^{2 theta j} C_T(2^{-j} xi).
double c_T_value(double freq_norm, double T, double theta);

// Duhamel weight (1 - e^{-t |xi|^theta}) / |xi|^theta, with value t at xi = 0.
double duhamel_weight(double freq_norm, double t, double theta);

// |xi|^theta sampled over the spectral lattice.  theta in ]0, 2].
std::vector<double> fractional_symbol(const Grid& g, double theta);

// Multiply by exp(-t |xi|^theta) in place (heat semigroup, t >= 0).
void semigroup_apply(SpectralField& f, double t, double theta);
SpectralField semigroup(const SpectralField& f, double t, double theta);

// (1 - e^{-t|xi|^theta})/|xi|^theta and C_T sampled over the lattice.
std::vector<double> duhamel_multiplier(const Grid& g, double t, double theta);
std::vector<double> c_T_multiplier(const Grid& g, double T, double theta);

// 2/3-rule band limit: zero all modes with per-axis |k| > M/3.
void dealias(SpectralField& f);
// Radial dealias frequency (2/3) * (pi/L) * (M/2).
double dealias_frequency(const Grid& g);

void validate_theta(double theta);

}  // namespace fracheat
