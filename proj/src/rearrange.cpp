#include "fracheat/rearrange.hpp"

#include <algorithm>
#include <cmath>

namespace fracheat {

double RearrangementTable::distribution(double sigma) const {
  // largest i with values[i] > sigma; values is sorted descending
  auto it = std::lower_bound(values.begin(), values.end(), sigma,
                             [](double v, double s) { return v > s; });
  if (it == values.begin()) return 0.0;  // no level exceeds sigma
  return cummeasure[static_cast<std::size_t>(it - values.begin()) - 1];
}

double RearrangementTable::decreasing_rearrangement(double lambda) const {
  // first i with cummeasure[i] > lambda
  auto it = std::upper_bound(cummeasure.begin(), cummeasure.end(), lambda);
  if (it == cummeasure.end()) return 0.0;
  return values[static_cast<std::size_t>(it - cummeasure.begin())];
}

RearrangementTable build_rearrangement(std::vector<double> samples, double cell_volume) {
  auto& s = samples;
  for (auto& v : s) v = std::abs(v);
  std::sort(s.begin(), s.end(), std::greater<double>());
  while (!s.empty() && !(s.back() > 0.0)) s.pop_back();

  RearrangementTable t;
  t.values.reserve(s.size());
  t.cummeasure.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;  // merge ties into one row
    t.values.push_back(s[i]);
    t.cummeasure.push_back(static_cast<double>(j) * cell_volume);
    i = j;
  }
  return t;
}

RearrangementTable build_rearrangement(const PhysicalField& f) {
  return build_rearrangement(f.values, f.grid.cell_volume());
}

}  // namespace fracheat
