#pragma once

#include <string>

#include "fracheat/field.hpp"

namespace fracheat {

// Binary field container.  Little-endian layout:
//   magic "FRHT" | u32 version (1) | u32 kind (0 physical, 1 spectral)
//   | u32 dim | u32 M per axis (3 slots, unused = 0) | f64 half_length
//   | payload: f64 samples (physical) or interleaved re,im f64 (spectral),
//     row-major over the grid.
void save_field(const std::string& path, const PhysicalField& f);
void save_field(const std::string& path, const SpectralField& f);
PhysicalField load_physical_field(const std::string& path);
SpectralField load_spectral_field(const std::string& path);

// Kind stored in a container without loading the payload.
bool stored_field_is_spectral(const std::string& path);

}  // namespace fracheat
