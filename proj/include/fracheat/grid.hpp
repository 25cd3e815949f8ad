#pragma once

#include <array>
#include <cstddef>

namespace fracheat {

// Uniform periodic box [-L, L)^dim sampled on M points per axis.
//
// Physical nodes   x_j = -L + j*h with h = 2L/M, j = 0..M-1 per axis.
// Frequency lattice xi_k = (pi/L)*k with k in {-M/2, ..., M/2-1} per axis,
// stored in DFT order: storage index i carries mode k = i (i < M/2) or i - M.
// Flat storage is row-major over the axes.
struct Grid {
  int dim;
  int points;          // M: even, >= 16
  double half_length;  // L > 0

  Grid(int dim_, int points_, double half_length_);

  double spacing() const { return 2.0 * half_length / points; }
  double cell_volume() const;
  double box_volume() const;  // (2L)^dim
  std::size_t size() const;   // M^dim

  int mode(int index) const { return index < points / 2 ? index : index - points; }
  double frequency(int index) const;  // (pi/L) * mode(index)
  double coordinate(int index) const { return -half_length + index * spacing(); }

  std::array<int, 3> unflatten(std::size_t flat) const;  // unused axes -> 0
  std::size_t flatten(const std::array<int, 3>& idx) const;

  // Squared euclidean norm of the frequency at a flat spectral index.
  double frequency_norm2(std::size_t flat) const;
  // Largest lattice frequency magnitude per axis, (pi/L)*(M/2).
  double nyquist_frequency() const;

  bool operator==(const Grid&) const = default;
};

}  // namespace fracheat
