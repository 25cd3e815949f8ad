#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fracheat/besov.hpp"
#include "fracheat/rng.hpp"
#include "fracheat/transforms.hpp"

using namespace fracheat;

namespace {

SpectralField unit_point_mass(const Grid& g) {
  SpectralField f(g);
  const double c = 1.0 / std::pow(2.0 * g.half_length, g.dim);
  for (auto& v : f.coeff) v = c;
  return f;
}

SpectralField point_mass_derivative(const Grid& g) {
  SpectralField f(g);
  const double c = 1.0 / std::pow(2.0 * g.half_length, g.dim);
  for (int i = 0; i < g.size(); ++i) {
    if (g.mode(i) == -g.points / 2) continue;  // odd multiplier: drop the unpaired mode
    f.coeff[i] = std::complex<double>(0.0, g.frequency(i) * c);
  }
  return f;
}

SpectralField noise_spectrum(const Grid& g, std::uint64_t seed) {
  PhysicalField f(g);
  Rng rng(seed);
  for (auto& v : f.values) v = rng.gaussian();
  return forward_transform(f);
}

// restrict to the plateau of annulus j (symbol == 1 there, neighbours == 0)
SpectralField plateau_restrict(const SpectralField& f, const DyadicPartition& part, int j) {
  SpectralField out(f.grid);
  for (int i = 0; i < f.grid.size(); ++i)
    if (part.block(j)[i] == 1.0) out.coeff[i] = f.coeff[i];
  return out;
}

}  // namespace

TEST_CASE("zero field has zero norm and no truncation") {
  Grid g(1, 256, 8.0);
  DyadicPartition part(g);
  auto r = besov_lorentz_norm(SpectralField(g), NormSpec{2.0, kInf, -0.5, kInf}, part);
  CHECK(r.value == 0.0);
  CHECK_FALSE(r.truncated);
  for (double b : r.block_norms) CHECK(b == 0.0);
  CHECK(besov_norm(SpectralField(g), 0.0, 2.0, 1.0, part).value == 0.0);
}

TEST_CASE("plateau-supported field reduces to a single weighted block") {
  Grid g(1, 512, 8.0);
  DyadicPartition part(g);
  const int j0 = 3;
  auto f = plateau_restrict(noise_spectrum(g, 11), part, j0);
  REQUIRE(f.max_abs() > 0.0);

  const double base = uniformly_local_lorentz_norm(inverse_transform(f), 2.5, kInf);
  const double s = -0.7;
  for (double r : {1.0, 2.0, kInf}) {
    auto res = besov_lorentz_norm(f, NormSpec{2.5, kInf, s, r}, part);
    CHECK(res.value == doctest::Approx(std::pow(2.0, s * j0) * base).epsilon(1e-13));
    for (int j = 0; j <= res.max_block; ++j)
      if (j != j0) CHECK(res.block_norms[static_cast<std::size_t>(j)] == 0.0);
  }
  auto res = besov_norm(f, s, 2.0, kInf, part);
  CHECK(res.value == doctest::Approx(std::pow(2.0, s * j0) *
                                     lp_norm(inverse_transform(f), 2.0)).epsilon(1e-13));
  CHECK_FALSE(res.truncated);
}

TEST_CASE("ell^r collapses correctly on hand-set weights") {
  // two plateau pieces in blocks 2 and 4: value must be the ell^r of the
  // two weighted block norms
  Grid g(1, 512, 8.0);
  DyadicPartition part(g);
  auto f2 = plateau_restrict(noise_spectrum(g, 21), part, 2);
  auto f4 = plateau_restrict(noise_spectrum(g, 22), part, 4);
  SpectralField f(g);
  for (int i = 0; i < g.size(); ++i) f.coeff[i] = f2.coeff[i] + f4.coeff[i];

  const NormSpec spec{3.0, 2.0, -0.4, 1.5};
  auto res = besov_lorentz_norm(f, spec, part);
  const double w2 = res.weighted[2], w4 = res.weighted[4];
  REQUIRE(w2 > 0.0);
  REQUIRE(w4 > 0.0);
  CHECK(res.value ==
        doctest::Approx(std::pow(std::pow(w2, 1.5) + std::pow(w4, 1.5), 1.0 / 1.5))
            .epsilon(1e-13));

  auto rmax = besov_lorentz_norm(f, NormSpec{3.0, 2.0, -0.4, kInf}, part);
  CHECK(rmax.value == doctest::Approx(std::max(w2, w4)).epsilon(1e-13));
  CHECK(rmax.value <= res.value * (1 + 1e-12));  // ell^inf <= ell^r
}

TEST_CASE("point mass lies in B^0_{1,inf}: block L^1 norms level off") {
  Grid g(1, 1024, 16.0);
  DyadicPartition part(g);
  auto delta = unit_point_mass(g);
  auto res = besov_norm(delta, 0.0, 1.0, kInf, part);
  REQUIRE(res.max_block >= 5);
  CHECK(res.truncated);

  // dilation invariance of L^1 makes the annulus block norms j-independent
  // up to lattice sampling of the symbol
  for (int j = 2; j < res.max_block; ++j) {
    const double ratio = res.block_norms[static_cast<std::size_t>(j + 1)] /
                         res.block_norms[static_cast<std::size_t>(j)];
    CHECK(ratio > 0.85);
    CHECK(ratio < 1.15);
  }
  CHECK(res.value < 3.0);  // sup_j ||block_j delta||_1 is an O(1) constant
  CHECK(res.value > 0.5);
}

TEST_CASE("point mass derivative lies in B^{-1}_{1,inf}: blocks grow like 2^j") {
  Grid g(1, 1024, 16.0);
  DyadicPartition part(g);
  auto ddelta = point_mass_derivative(g);
  auto res = besov_norm(ddelta, -1.0, 1.0, kInf, part);

  for (int j = 2; j < res.max_block; ++j) {
    const double ratio = res.block_norms[static_cast<std::size_t>(j + 1)] /
                         res.block_norms[static_cast<std::size_t>(j)];
    CHECK(ratio > 2.0 * 0.85);
    CHECK(ratio < 2.0 * 1.15);
  }
  // weighted sequence 2^{-j} ||block_j||_1 is then flat
  const double wlo = *std::min_element(res.weighted.begin() + 2, res.weighted.end());
  CHECK(res.value <= wlo * 1.6);
}

TEST_CASE("bernstein ratio: empty blocks flagged, noise ensemble j-uniform") {
  Grid g(1, 512, 8.0);
  DyadicPartition part(g);

  CHECK(bernstein_check(SpectralField(g), 2, 3.0, part).empty);

  auto f = noise_spectrum(g, 33);
  double worst = 0.0;
  for (int j = 1; j <= part.max_block(); ++j) {
    auto c = bernstein_check(f, j, 3.0, part);
    REQUIRE_FALSE(c.empty);
    CHECK(c.ratio > 0.0);
    worst = std::max(worst, c.ratio);
  }

  // refinement stability of the worst ratio (same box, doubled resolution)
  Grid g2(1, 1024, 8.0);
  DyadicPartition part2(g2);
  auto f2 = noise_spectrum(g2, 33);
  double worst2 = 0.0;
  for (int j = 1; j <= part.max_block(); ++j)
    worst2 = std::max(worst2, bernstein_check(f2, j, 3.0, part2).ratio);
  CHECK(worst2 == doctest::Approx(worst).epsilon(0.20));
}

TEST_CASE("tail seminorm") {
  Grid g(1, 1024, 16.0);
  DyadicPartition part(g);

  // band-limited below the tail start: zero
  auto low = part.apply_block(noise_spectrum(g, 41), 0);
  CHECK(tail_seminorm(low, 0.5, 1.5, 2.0, 2, part) == 0.0);

  // point mass: weighted blocks decay when eps - theta + N/p' < 0,
  // so the tail shrinks as the start index moves up
  auto delta = unit_point_mass(g);
  const double t2 = tail_seminorm(delta, 0.5, 1.5, 2.0, 2, part);
  const double t3 = tail_seminorm(delta, 0.5, 1.5, 2.0, 3, part);
  const double t4 = tail_seminorm(delta, 0.5, 1.5, 2.0, 4, part);
  CHECK(t2 > t3);
  CHECK(t3 > t4);
  CHECK(t4 > 0.0);

  CHECK_THROWS_AS(tail_seminorm(delta, 1.5, 1.5, 2.0, 2, part), std::invalid_argument);
  CHECK_THROWS_AS(tail_seminorm(delta, 0.5, 1.5, 2.0, -1, part), std::invalid_argument);
  CHECK_THROWS_AS(tail_seminorm(delta, 0.5, 1.5, 2.0, part.max_block() + 1, part),
                  std::invalid_argument);
}

TEST_CASE("embedding order: ell^inf value never exceeds ell^1 value") {
  Grid g(1, 512, 8.0);
  DyadicPartition part(g);
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    auto f = noise_spectrum(g, seed);
    const double vinf = besov_lorentz_norm(f, NormSpec{2.0, kInf, 0.0, kInf}, part).value;
    const double v1 = besov_lorentz_norm(f, NormSpec{2.0, kInf, 0.0, 1.0}, part).value;
    const double ul = uniformly_local_lorentz_norm(inverse_transform(f), 2.0, kInf);
    CHECK(vinf <= v1 * (1 + 1e-12));
    CHECK(ul > 0.0);
    CHECK(vinf > 0.0);
  }
}
