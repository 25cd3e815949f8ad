#pragma once

#include "fracheat/field.hpp"

namespace fracheat {

// Discrete realization of the Fourier-series pair
//   coeff_k = (2L)^{-N} integral f(x) exp(-i xi_k . x) dx,
//   f(x)    = sum_k coeff_k exp(i xi_k . x),
// i.e. forward(constant 1) has coefficient 1 at k = 0 and 0 elsewhere.
// Box centering contributes a (-1)^{i_1+...+i_N} phase relative to the raw DFT.
SpectralField forward_transform(const PhysicalField& f);

// Inverse of forward_transform.  Rejects spectra whose Hermitian defect
// exceeds 1e-9 relative to the largest coefficient (the samples would not
// be real); the round-off imaginary residue is discarded.
PhysicalField inverse_transform(const SpectralField& f);

}  // namespace fracheat
