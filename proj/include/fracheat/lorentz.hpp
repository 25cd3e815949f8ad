#pragma once

#include <limits>

#include "fracheat/rearrange.hpp"

namespace fracheat {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Norm request: Lorentz indices (p, q), optionally extended by dyadic
// smoothness s and summability r for the block-decomposed norms.
struct NormSpec {
  double p = 2.0;    // 1 < p < inf
  double q = kInf;   // 1 <= q <= inf
  double s = 0.0;
  double r = kInf;   // 1 <= r <= inf

  void validate() const;
};

// Lorentz functional of a rearrangement table:
//   q = inf :  max_i values[i] * cummeasure[i]^{1/p}
//   q < inf :  ( sum_i values[i]^q (p/q) (cm[i]^{q/p} - cm[i-1]^{q/p}) )^{1/q}
// Exact for step functions, which sampled fields are.
double lorentz_norm(const RearrangementTable& t, double p, double q);
double lorentz_norm(const PhysicalField& f, double p, double q);

// Plain L^p over the box, 1 <= p <= inf (p = inf: max |f|).
double lp_norm(const PhysicalField& f, double p);

// Lattice of window centers for the uniformly local norms: spacing <= 0.5,
// snapped so the centers tile the periodic box evenly.
struct CenterLattice {
  double spacing = 0.5;
};

// sup over window centers z of || f restricted to B(z,1) ||_{L^{p,q}},
// distances on the torus.  Requires half_length > 1 (the window must not
// wrap onto itself).
double uniformly_local_lorentz_norm(const PhysicalField& f, double p, double q,
                                    const CenterLattice& centers = {});

// Ratio || f g ||_{p,inf} / ( ||f||_{p0,inf} ||g||_{p1,inf} ) with
// 1/p = 1/p0 + 1/p1 < 1.  A vanishing denominator is reported as
// degenerate rather than a ratio.
struct WeakProductCheck {
  bool degenerate = false;
  double ratio = 0.0;
  double p = 0.0;  // exponent of the product side
};
WeakProductCheck weak_product_check(const PhysicalField& f, const PhysicalField& g,
                                    double p0, double p1);

}  // namespace fracheat
