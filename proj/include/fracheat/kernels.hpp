#pragma once

#include "fracheat/field.hpp"

namespace fracheat {

// Heat-semigroup kernels with closed forms, periodized onto the box by
// image-charge summation (tail below 1e-14 of the peak):
//   theta = 2: Gaussian  (4 pi t)^{-N/2} exp(-|x|^2 / (4t)), any supported dim;
//   theta = 1: Poisson   c_N t / (t^2 + |x|^2)^{(N+1)/2}, c_1 = 1/pi, dim 1 only
//              (the image sum decays too slowly in higher dim; the truncated
//              tail is completed by an Euler-Maclaurin integral correction).
// Other theta have no elementary closed form and are rejected.
PhysicalField closed_form_kernel(const Grid& g, double t, double theta);

}  // namespace fracheat
