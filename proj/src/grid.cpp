#include "fracheat/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fracheat {

Grid::Grid(int dim_, int points_, double half_length_)
    : dim(dim_), points(points_), half_length(half_length_) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("Grid: dim must be 1, 2 or 3");
  if (points < 16 || points % 2 != 0)
    throw std::invalid_argument("Grid: points per axis must be even and >= 16");
  if (!(half_length > 0.0)) throw std::invalid_argument("Grid: half_length must be > 0");
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= spacing();
  return v;
}

double Grid::box_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= 2.0 * half_length;
  return v;
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points);
  return n;
}

double Grid::frequency(int index) const {
  return M_PI / half_length * mode(index);
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % points);
    flat /= points;
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim; ++a) flat = flat * points + static_cast<std::size_t>(idx[a]);
  return flat;
}

double Grid::frequency_norm2(std::size_t flat) const {
  const auto idx = unflatten(flat);
  double s = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double xi = frequency(idx[a]);
    s += xi * xi;
  }
  return s;
}

double Grid::nyquist_frequency() const {
  return M_PI / half_length * (points / 2);
}

}  // namespace fracheat
