#pragma once

#include <complex>
#include <vector>

#include "fracheat/grid.hpp"

namespace fracheat {

// Real samples over the physical nodes of a grid, row-major.
struct PhysicalField {
  Grid grid;
  std::vector<double> values;

  explicit PhysicalField(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  PhysicalField(const Grid& g, std::vector<double> v);

  double max_abs() const;
  bool all_finite() const;
};

// Fourier-series coefficients over the frequency lattice, DFT-ordered.
// Convention: f(x) = sum_k coeff[k] * exp(i xi_k . x).  Real fields are
// Hermitian-symmetric: coeff(-k) == conj(coeff(k)).
struct SpectralField {
  Grid grid;
  std::vector<std::complex<double>> coeff;

  explicit SpectralField(const Grid& g) : grid(g), coeff(g.size(), 0.0) {}
  SpectralField(const Grid& g, std::vector<std::complex<double>> c);

  // Flat index of the frequency-negated mode (per-axis index i -> (M-i) mod M).
  std::size_t conjugate_index(std::size_t flat) const;
  // max_k |coeff(-k) - conj(coeff(k))|, the deviation from Hermitian symmetry.
  double hermitian_defect() const;
  // Orthogonal projection onto the Hermitian-symmetric subspace; moves each
  // coefficient by at most half the defect.
  void symmetrize();
  double max_abs() const;
  bool all_finite() const;
};

}  // namespace fracheat
