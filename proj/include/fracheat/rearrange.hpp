#pragma once

#include <vector>

#include "fracheat/field.hpp"

namespace fracheat {

// Distribution data of |f| for a sampled field: strictly decreasing positive
// levels together with the cumulative cell volume at or above each level,
//   cummeasure[i] = measure{ |f| >= values[i] }.
// Both the distribution function and the decreasing rearrangement are exact
// step functions of this table, so Lorentz norms of sampled fields have
// closed forms.
struct RearrangementTable {
  std::vector<double> values;      // strictly decreasing, all > 0
  std::vector<double> cummeasure;  // strictly increasing

  bool empty() const { return values.empty(); }
  double support_measure() const { return cummeasure.empty() ? 0.0 : cummeasure.back(); }

  // alpha(sigma) = measure{ |f| > sigma }
  double distribution(double sigma) const;
  // f*(lambda) = sup{ sigma : alpha(sigma) > lambda }, sup of the empty set = 0
  double decreasing_rearrangement(double lambda) const;
};

// Table of a whole field (cell volume from the grid).
RearrangementTable build_rearrangement(const PhysicalField& f);
// Table of an arbitrary sample subset, e.g. one window of a local norm.
// Entries enter as |values|; zeros are dropped.
RearrangementTable build_rearrangement(std::vector<double> samples, double cell_volume);

}  // namespace fracheat
