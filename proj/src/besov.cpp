#include "fracheat/besov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "fracheat/transforms.hpp"

namespace fracheat {

namespace {

// ell^r of nonnegative weights, terms accumulated largest-first.
double ell_r(std::vector<double> w, double r) {
  if (r == kInf) return w.empty() ? 0.0 : *std::max_element(w.begin(), w.end());
  std::sort(w.begin(), w.end(), std::greater<>());
  double acc = 0.0;
  for (double v : w) acc += std::pow(v, r);
  return std::pow(acc, 1.0 / r);
}

BesovResult block_norm_sweep(const SpectralField& f, double s, double r,
                             const DyadicPartition& part,
                             const std::function<double(const PhysicalField&)>& base) {
  BesovResult out;
  out.max_block = part.max_block();
  out.block_norms.resize(static_cast<std::size_t>(out.max_block) + 1);
  out.weighted.resize(out.block_norms.size());
  for (int j = 0; j <= out.max_block; ++j) {
    const double bn = base(inverse_transform(part.apply_block(f, j)));
    out.block_norms[static_cast<std::size_t>(j)] = bn;
    out.weighted[static_cast<std::size_t>(j)] = std::pow(2.0, s * j) * bn;
  }
  out.truncated = out.block_norms.back() != 0.0;
  out.value = ell_r(out.weighted, r);
  return out;
}

}  // namespace

BesovResult besov_lorentz_norm(const SpectralField& f, const NormSpec& spec,
                               const DyadicPartition& part) {
  spec.validate();
  return block_norm_sweep(f, spec.s, spec.r, part, [&](const PhysicalField& b) {
    return uniformly_local_lorentz_norm(b, spec.p, spec.q);
  });
}

BesovResult besov_norm(const SpectralField& f, double s, double p, double r,
                       const DyadicPartition& part) {
  if (!(p >= 1.0)) throw std::invalid_argument("besov_norm: p must lie in [1, inf]");
  if (!(r >= 1.0)) throw std::invalid_argument("besov_norm: r must lie in [1, inf]");
  if (!std::isfinite(s)) throw std::invalid_argument("besov_norm: s must be finite");
  return block_norm_sweep(f, s, r, part,
                          [&](const PhysicalField& b) { return lp_norm(b, p); });
}

BernsteinCheck bernstein_check(const SpectralField& f, int j, double p,
                               const DyadicPartition& part) {
  const auto block = inverse_transform(part.apply_block(f, j));
  BernsteinCheck out;
  const double sup = block.max_abs();
  if (sup == 0.0) {
    out.empty = true;
    return out;
  }
  const double ul = uniformly_local_lorentz_norm(block, p, kInf);
  out.ratio = sup / (std::pow(2.0, j * f.grid.dim / p) * ul);
  return out;
}

double tail_seminorm(const SpectralField& f, double eps, double theta, double p_eff,
                     int j0, const DyadicPartition& part) {
  if (!(eps > 0.0 && eps < theta))
    throw std::invalid_argument("tail_seminorm: requires 0 < eps < theta");
  if (j0 < 0 || j0 > part.max_block())
    throw std::invalid_argument("tail_seminorm: j0 out of block range");
  double worst = 0.0;
  for (int j = j0; j <= part.max_block(); ++j) {
    const double ul =
        uniformly_local_lorentz_norm(inverse_transform(part.apply_block(f, j)), p_eff, kInf);
    worst = std::max(worst, std::pow(2.0, (eps - theta) * j) * ul);
  }
  return worst;
}

}  // namespace fracheat
