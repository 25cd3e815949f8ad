#include "fracheat/dyadic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracheat/multipliers.hpp"

namespace fracheat {

namespace {

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double smooth_cutoff(double t) {
  if (t <= 1.5) return 1.0;
  if (t >= 5.0 / 3.0) return 0.0;
  const double s = (5.0 / 3.0 - t) / (5.0 / 3.0 - 1.5);
  const double a = bump(s);
  return a / (a + bump(1.0 - s));
}

double lowpass_symbol(double xi_norm) { return smooth_cutoff(xi_norm); }

double annulus_symbol(int j, double xi_norm) {
  const double scale = std::ldexp(1.0, -j);
  return smooth_cutoff(scale * xi_norm) - smooth_cutoff(2.0 * scale * xi_norm);
}

int max_dyadic_block(const Grid& g) {
  return static_cast<int>(std::floor(std::log2(dealias_frequency(g) / (5.0 / 3.0))));
}

int plateau_frequency_index(const Grid& g, int j) {
  if (j < 1 || j > max_dyadic_block(g))
    throw std::invalid_argument("plateau_frequency_index: block out of range");
  const double lo = (5.0 / 6.0) * std::pow(2.0, j);
  const double hi = 1.5 * std::pow(2.0, j);
  const double step = g.frequency(1);
  const int k = static_cast<int>(std::ceil(lo / step));
  if (k * step > hi)
    throw std::invalid_argument("plateau_frequency_index: lattice skips the plateau");
  return k;
}

DyadicPartition::DyadicPartition(const Grid& g) : grid_(g), j_max_(max_dyadic_block(g)) {
  if (j_max_ < 2)
    throw std::invalid_argument("grid too coarse for a dyadic partition (max block " +
                                std::to_string(j_max_) + " < 2)");
  const std::size_t n = static_cast<std::size_t>(grid_.size());
  blocks_.assign(static_cast<std::size_t>(j_max_) + 1, std::vector<double>(n));
  widened_.assign(static_cast<std::size_t>(j_max_) + 1, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = std::sqrt(grid_.frequency_norm2(static_cast<int>(i)));
    blocks_[0][i] = lowpass_symbol(xi);
    for (int j = 1; j <= j_max_; ++j) blocks_[static_cast<std::size_t>(j)][i] = annulus_symbol(j, xi);
    widened_[0][i] = lowpass_symbol(xi) + annulus_symbol(1, xi);
    for (int j = 1; j <= j_max_; ++j)
      widened_[static_cast<std::size_t>(j)][i] =
          annulus_symbol(j - 1, xi) + annulus_symbol(j, xi) + annulus_symbol(j + 1, xi);
  }
}

const std::vector<double>& DyadicPartition::block(int j) const {
  if (j < 0 || j > j_max_) throw std::invalid_argument("dyadic block index out of range");
  return blocks_[static_cast<std::size_t>(j)];
}

const std::vector<double>& DyadicPartition::widened(int j) const {
  if (j < 0 || j > j_max_) throw std::invalid_argument("dyadic block index out of range");
  return widened_[static_cast<std::size_t>(j)];
}

SpectralField DyadicPartition::apply_block(const SpectralField& f, int j) const {
  if (!(f.grid == grid_)) throw std::invalid_argument("field grid does not match partition grid");
  const auto& m = block(j);
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < m.size(); ++i) out.coeff[i] = m[i] * f.coeff[i];
  return out;
}

SpectralField DyadicPartition::apply_widened(const SpectralField& f, int j) const {
  if (!(f.grid == grid_)) throw std::invalid_argument("field grid does not match partition grid");
  const auto& m = widened(j);
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < m.size(); ++i) out.coeff[i] = m[i] * f.coeff[i];
  return out;
}

}  // namespace fracheat
