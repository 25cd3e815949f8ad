#include "fracheat/field.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace fracheat {

PhysicalField::PhysicalField(const Grid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != grid.size())
    throw std::invalid_argument("PhysicalField: sample count does not match grid");
}

double PhysicalField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

bool PhysicalField::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

SpectralField::SpectralField(const Grid& g, std::vector<std::complex<double>> c)
    : grid(g), coeff(std::move(c)) {
  if (coeff.size() != grid.size())
    throw std::invalid_argument("SpectralField: coefficient count does not match grid");
}

std::size_t SpectralField::conjugate_index(std::size_t flat) const {
  auto idx = grid.unflatten(flat);
  for (int a = 0; a < grid.dim; ++a) idx[a] = idx[a] == 0 ? 0 : grid.points - idx[a];
  return grid.flatten(idx);
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    const std::complex<double> d = coeff[conjugate_index(i)] - std::conj(coeff[i]);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

void SpectralField::symmetrize() {
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    const std::size_t m = conjugate_index(i);
    if (m < i) continue;
    if (m == i) {
      coeff[i] = coeff[i].real();
    } else {
      const std::complex<double> avg = 0.5 * (coeff[i] + std::conj(coeff[m]));
      coeff[i] = avg;
      coeff[m] = std::conj(avg);
    }
  }
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeff) m = std::max(m, std::abs(c));
  return m;
}

bool SpectralField::all_finite() const {
  for (const auto& c : coeff)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace fracheat
