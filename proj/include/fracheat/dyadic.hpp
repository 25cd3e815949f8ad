#pragma once

#include <vector>

#include "fracheat/field.hpp"

namespace fracheat {

// C^inf cutoff: 1 on [0, 3/2], 0 on [5/3, inf), monotone in between.
// Realized as g((5/3 - t)/(5/3 - 3/2)) with g(s) = h(s)/(h(s) + h(1-s)),
// h(s) = exp(-1/s) for s > 0 and 0 otherwise.  Any profile with the same
// plateau/support constraints yields equivalent norms.
double smooth_cutoff(double t);

// Low-pass symbol: cutoff(|xi|), identically 1 for |xi| <= 3/2.
double lowpass_symbol(double xi_norm);

// Annulus symbol for j >= 1: cutoff(2^{-j}|xi|) - cutoff(2^{1-j}|xi|),
// supported in (3/4) 2^j < |xi| < (5/3) 2^j.  j = 0 gives the base annulus
// the family dilates from.
double annulus_symbol(int j, double xi_norm);

// Dyadic partition sampled on a grid's frequency lattice.  Block 0 carries
// the low-pass symbol, blocks 1..max_block() the annuli; together they sum
// to 1 on |xi| <= (3/2) 2^{max_block()}.  widened(j) covers block j with the
// three neighbouring symbols and is identically 1 on its support, so
// widened(j) * block(j) == block(j).
class DyadicPartition {
 public:
  // max_block = floor(log2(dealias_frequency / (5/3))): every retained
  // annulus lies inside the dealiased band.  Grids with max_block < 2 are
  // rejected as too coarse.
  explicit DyadicPartition(const Grid& g);

  const Grid& grid() const { return grid_; }
  int max_block() const { return j_max_; }

  // Multiplier samples over flattened frequency indices.
  const std::vector<double>& block(int j) const;
  const std::vector<double>& widened(int j) const;

  SpectralField apply_block(const SpectralField& f, int j) const;
  SpectralField apply_widened(const SpectralField& f, int j) const;

 private:
  Grid grid_;
  int j_max_ = 0;
  std::vector<std::vector<double>> blocks_;
  std::vector<std::vector<double>> widened_;
};

// The partition depth a grid supports, without building the tables.
int max_dyadic_block(const Grid& g);

// Smallest axis-0 mode whose frequency lies on block j's unit plateau
// [ (5/6) 2^j, (3/2) 2^j ], where the annulus symbol is exactly 1 and every
// other symbol vanishes; throws when the lattice skips the plateau.
int plateau_frequency_index(const Grid& g, int j);

}  // namespace fracheat
