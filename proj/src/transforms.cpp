#include "fracheat/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace fracheat {
namespace {

// FFTW's planner is not thread-safe; executing a plan on fresh buffers is.
// Plans are cached per (dim, points, direction) and created with
// FFTW_ESTIMATE | FFTW_UNALIGNED so fftw_execute_dft may run on any buffer.
class PlanCache {
 public:
  fftw_plan get(int dim, int points, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(dim, points, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points);
    fftw_complex* scratch = fftw_alloc_complex(n);
    if (!scratch) throw std::runtime_error("transforms: fftw_alloc_complex failed");
    int dims[3] = {points, points, points};
    fftw_plan plan = fftw_plan_dft(dim, dims, scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (!plan) throw std::runtime_error("transforms: fftw_plan_dft failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

// Parity of the sum of per-axis storage indices; flips the sign of every
// other mode to account for the box being centered at the origin.
void apply_centering_phase(const Grid& g, std::vector<std::complex<double>>& data) {
  std::array<int, 3> idx{0, 0, 0};
  int parity = 0;
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    if (parity & 1) data[flat] = -data[flat];
    // odometer increment with parity tracking
    for (int a = g.dim - 1; a >= 0; --a) {
      parity ^= 1;
      if (++idx[a] < g.points) break;
      idx[a] = 0;
      parity ^= g.points & 1;  // points is even: parity of a wrapped axis resets
    }
  }
}

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
  const Grid& g = f.grid;
  SpectralField out(g);
  for (std::size_t i = 0; i < f.values.size(); ++i) out.coeff[i] = f.values[i];

  fftw_plan plan = cache().get(g.dim, g.points, FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(out.coeff.data()),
                   reinterpret_cast<fftw_complex*>(out.coeff.data()));

  apply_centering_phase(g, out.coeff);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& c : out.coeff) c *= scale;
  // The transform of real samples is Hermitian up to roundoff; project so the
  // symmetry is exact and survives linear combinations of any magnitude.
  out.symmetrize();
  return out;
}

PhysicalField inverse_transform(const SpectralField& f) {
  const Grid& g = f.grid;
  const double mag = f.max_abs();
  if (f.hermitian_defect() > 1e-9 * mag)
    throw std::invalid_argument(
        "inverse_transform: spectrum is not Hermitian-symmetric (field not real)");

  std::vector<std::complex<double>> work = f.coeff;
  apply_centering_phase(g, work);

  fftw_plan plan = cache().get(g.dim, g.points, FFTW_BACKWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(work.data()));

  PhysicalField out(g);
  for (std::size_t i = 0; i < work.size(); ++i) out.values[i] = work[i].real();
  return out;
}

}  // namespace fracheat
