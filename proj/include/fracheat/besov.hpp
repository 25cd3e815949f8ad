#pragma once

#include <vector>

#include "fracheat/dyadic.hpp"
#include "fracheat/lorentz.hpp"

namespace fracheat {

// Block-decomposed norm: ell^r over blocks j of 2^{sj} * (base norm of the
// j-th frequency block).  The block range stops at the partition depth, so
// the value is a truncation of an infinite sum whenever the top block still
// carries mass; `truncated` reports that.  Refining the grid extends the
// range.
struct BesovResult {
  double value = 0.0;
  int max_block = 0;
  bool truncated = false;
  std::vector<double> block_norms;  // base norm per block, index = j
  std::vector<double> weighted;     // 2^{sj} * block_norms[j]
};

// Base norm: uniformly local Lorentz L^{p,q}_ul of each block.
// Uses spec.{p,q,s,r}; requires spec.validate() to pass.
BesovResult besov_lorentz_norm(const SpectralField& f, const NormSpec& spec,
                               const DyadicPartition& part);

// Base norm: plain L^p over the box, p in [1, inf] permitted.
BesovResult besov_norm(const SpectralField& f, double s, double p, double r,
                       const DyadicPartition& part);

// sup_x |block_j f| / ( 2^{jN/p} * ||block_j f||_{p,inf,ul} ).  A vanishing
// block is reported as empty rather than 0/0.
struct BernsteinCheck {
  bool empty = false;
  double ratio = 0.0;
};
BernsteinCheck bernstein_check(const SpectralField& f, int j, double p,
                               const DyadicPartition& part);

// High-frequency diagnostic: sup over j in [j0, max_block] of
// 2^{(eps - theta) j} ||block_j f||_{p_eff, inf, ul} — a finite-grid proxy
// for a limsup in j; interpret alongside the partition depth.
double tail_seminorm(const SpectralField& f, double eps, double theta, double p_eff,
                     int j0, const DyadicPartition& part);

}  // namespace fracheat
