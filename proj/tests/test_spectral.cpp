#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>

#include "fracheat/field_io.hpp"
#include "fracheat/kernels.hpp"
#include "fracheat/multipliers.hpp"
#include "fracheat/rng.hpp"
#include "fracheat/transforms.hpp"

using namespace fracheat;

namespace {

SpectralField spectral_delta(const Grid& g, double mass) {
  SpectralField f(g);
  const double c = mass / g.box_volume();
  for (auto& z : f.coeff) z = c;
  return f;
}

double rel_linf(const PhysicalField& a, const PhysicalField& b) {
  double diff = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
    peak = std::max(peak, std::abs(b.values[i]));
  }
  return diff / peak;
}

}  // namespace

TEST_CASE("grid validation and lattice layout") {
  CHECK_THROWS_AS(Grid(0, 64, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(4, 64, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 15, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 8, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 64, 0.0), std::invalid_argument);

  Grid g(1, 64, 16.0);
  CHECK(g.spacing() == doctest::Approx(0.5));
  CHECK(g.mode(0) == 0);
  CHECK(g.mode(31) == 31);
  CHECK(g.mode(32) == -32);  // Nyquist carried once, on the negative side
  CHECK(g.mode(63) == -1);
  CHECK(g.frequency(1) == doctest::Approx(M_PI / 16.0));
  CHECK(g.coordinate(32) == doctest::Approx(0.0));

  Grid g2(2, 32, 8.0);
  CHECK(g2.size() == 1024);
  auto idx = g2.unflatten(33);
  CHECK(idx[0] == 1);
  CHECK(idx[1] == 1);
  CHECK(g2.flatten(idx) == 33);
}

TEST_CASE("transform normalization: mean mode, cosine pair, spike") {
  Grid g(1, 128, 4.0);

  PhysicalField ones(g);
  for (auto& v : ones.values) v = 1.0;
  auto c = forward_transform(ones);
  CHECK(std::abs(c.coeff[0] - 1.0) < 1e-13);
  double rest = 0.0;
  for (std::size_t i = 1; i < c.coeff.size(); ++i) rest = std::max(rest, std::abs(c.coeff[i]));
  CHECK(rest < 1e-13);

  // cos(xi_3 x) splits into 1/2 at k = +-3
  PhysicalField cosine(g);
  for (int j = 0; j < g.points; ++j)
    cosine.values[j] = std::cos(g.frequency(3) * g.coordinate(j));
  auto cc = forward_transform(cosine);
  CHECK(std::abs(cc.coeff[3] - 0.5) < 1e-13);
  CHECK(std::abs(cc.coeff[g.points - 3] - 0.5) < 1e-13);

  // unit-mass spike at the origin: all coefficients 1/(2L)
  PhysicalField spike(g);
  spike.values[g.points / 2] = 1.0 / g.spacing();
  auto cs = forward_transform(spike);
  for (std::size_t i = 0; i < cs.coeff.size(); ++i) {
    CHECK(std::abs(cs.coeff[i].real() - 1.0 / g.box_volume()) < 1e-13);
    CHECK(std::abs(cs.coeff[i].imag()) < 1e-13);
  }
}

TEST_CASE("transform round trip and Parseval") {
  for (const Grid& g : {Grid(1, 256, 16.0), Grid(2, 32, 8.0), Grid(3, 16, 2.0)}) {
    Rng rng(7);
    PhysicalField f(g);
    for (auto& v : f.values) v = rng.gaussian();
    auto c = forward_transform(f);
    auto back = inverse_transform(c);
    CHECK(rel_linf(back, f) < 1e-12);

    double phys = 0.0, spec = 0.0;
    for (double v : f.values) phys += v * v;
    phys *= g.cell_volume();
    for (const auto& z : c.coeff) spec += std::norm(z);
    spec *= g.box_volume();
    CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
  }
}

TEST_CASE("inverse transform rejects non-Hermitian spectra") {
  Grid g(1, 64, 1.0);
  SpectralField f(g);
  f.coeff[1] = {1.0, 0.5};  // no conjugate partner at -1
  CHECK_THROWS_AS(inverse_transform(f), std::invalid_argument);
  f.coeff[g.points - 1] = std::conj(f.coeff[1]);
  CHECK_NOTHROW(inverse_transform(f));
}

TEST_CASE("psi profile: endpoints, seam, asymptote") {
  CHECK(psi_profile(0.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(psi_profile(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  // closed form and series branch agree at the seam
  const double s = 1e-2;
  const double closed = s * s / (s + std::expm1(-s));
  CHECK(std::abs(psi_profile(s) - closed) / closed < 1e-12);
  const double below = std::nextafter(s, 0.0);
  CHECK(std::abs(psi_profile(below) - psi_profile(s)) / psi_profile(s) < 1e-12);
  // Psi(s) -> s + 1 + o(1) as s -> inf
  CHECK(psi_profile(100.0) == doctest::Approx(100.0 * 100.0 / 99.0).epsilon(1e-14));
  // monotone on a coarse ladder
  double prev = psi_profile(0.0);
  for (double x : {1e-6, 1e-4, 1e-2, 0.5, 1.0, 5.0, 50.0}) {
    CHECK(psi_profile(x) > prev);
    prev = psi_profile(x);
  }
}

TEST_CASE("C_T values: zero mode, scaling identity") {
  for (double T : {1.0, 0.5, 0.125}) {
    CHECK(c_T_value(0.0, T, 2.0) == doctest::Approx(2.0 / (T * T)).epsilon(1e-14));
    CHECK(c_T_value(0.0, T, 0.7) == doctest::Approx(2.0 / (T * T)).epsilon(1e-14));
  }
  // C_{T/2^(theta j)}(xi) = 2^(2 theta j) C_T(2^-j xi) across whole lattices:
  // halving L scales every lattice frequency by 1/2.
  const double T = 1.0;
  for (double theta : {0.6, 1.0, 1.7, 2.0}) {
    for (int j : {1, 2, 3}) {
      Grid g(1, 64, 2.0);
      Grid gj(1, 64, 2.0 * std::pow(2.0, j));
      auto lhs = c_T_multiplier(g, T / std::pow(2.0, theta * j), theta);
      auto rhs = c_T_multiplier(gj, T, theta);
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        CHECK(lhs[i] == doctest::Approx(std::pow(2.0, 2.0 * theta * j) * rhs[i])
                            .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("duhamel weight: zero mode, semigroup consistency, stability") {
  CHECK(duhamel_weight(0.0, 0.25, 1.5) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(duhamel_weight(1e-200, 0.25, 2.0) == doctest::Approx(0.25).epsilon(1e-12));

  // D(t2) - D(t1) = e^{-t1 |xi|^theta} D(t2 - t1)
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const double xi = 0.05 + 20.0 * rng.uniform();
    const double theta = 0.2 + 1.8 * rng.uniform();
    const double t1 = rng.uniform();
    const double t2 = t1 + rng.uniform();
    const double lhs = duhamel_weight(xi, t2, theta) - duhamel_weight(xi, t1, theta);
    const double rhs =
        std::exp(-t1 * std::pow(xi, theta)) * duhamel_weight(xi, t2 - t1, theta);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }

  CHECK_THROWS_AS(duhamel_weight(1.0, -0.1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(c_T_value(1.0, 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(validate_theta(2.5), std::invalid_argument);
  CHECK_THROWS_AS(validate_theta(0.0), std::invalid_argument);
}

TEST_CASE("semigroup of a point mass matches the periodized Gaussian") {
  Grid g(1, 1024, 16.0);
  auto evolved = inverse_transform(semigroup(spectral_delta(g, 1.0), 0.1, 2.0));
  auto oracle = closed_form_kernel(g, 0.1, 2.0);
  CHECK(rel_linf(evolved, oracle) < 1e-12);

  // peak value (4 pi t)^{-1/2} (images negligible at L = 16, t = 0.1)
  CHECK(oracle.values[g.points / 2] ==
        doctest::Approx(1.0 / std::sqrt(0.4 * M_PI)).epsilon(1e-12));

  // integrated mass 1 (trapezoid on a smooth periodic function)
  double mass = 0.0;
  for (double v : oracle.values) mass += v;
  CHECK(mass * g.cell_volume() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("semigroup of a point mass matches the periodized Poisson kernel") {
  Grid g(1, 2048, 32.0);
  auto evolved = inverse_transform(semigroup(spectral_delta(g, 1.0), 0.5, 1.0));
  auto oracle = closed_form_kernel(g, 0.5, 1.0);
  CHECK(rel_linf(evolved, oracle) < 1e-9);

  double mass = 0.0;
  for (double v : oracle.values) mass += v;
  CHECK(mass * g.cell_volume() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("free-space Poisson peak value t/(pi t^2) at large box") {
  Grid g(1, 16, 512.0);
  auto k = closed_form_kernel(g, 1.0, 1.0);
  CHECK(k.values[8] == doctest::Approx(1.0 / M_PI).epsilon(1e-5));
}

TEST_CASE("2d Gaussian periodization factorizes against the semigroup") {
  Grid g(2, 64, 8.0);
  auto evolved = inverse_transform(semigroup(spectral_delta(g, 1.0), 0.5, 2.0));
  auto oracle = closed_form_kernel(g, 0.5, 2.0);
  CHECK(rel_linf(evolved, oracle) < 1e-9);
}

TEST_CASE("closed-form kernel rejects unsupported parameters") {
  Grid g(1, 64, 8.0);
  CHECK_THROWS_AS(closed_form_kernel(g, 0.5, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_kernel(g, 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_kernel(Grid(2, 32, 8.0), 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("fractional symbol and dealiasing") {
  Grid g(1, 96, 8.0);
  auto sym = fractional_symbol(g, 2.0);
  for (std::size_t i = 0; i < sym.size(); ++i)
    CHECK(sym[i] == doctest::Approx(g.frequency_norm2(i)).epsilon(1e-13));

  CHECK(dealias_frequency(g) == doctest::Approx((2.0 / 3.0) * M_PI / 8.0 * 48.0));

  SpectralField f(g);
  const int keep = g.points / 3;           // |k| <= 32 retained
  f.coeff[keep] = 1.0;                     // k = 32
  f.coeff[keep + 1] = 1.0;                 // k = 33
  f.coeff[g.points - keep] = 1.0;          // k = -32
  f.coeff[g.points - keep - 1] = 1.0;      // k = -33
  dealias(f);
  CHECK(f.coeff[keep] == std::complex<double>(1.0, 0.0));
  CHECK(f.coeff[g.points - keep] == std::complex<double>(1.0, 0.0));
  CHECK(f.coeff[keep + 1] == std::complex<double>(0.0, 0.0));
  CHECK(f.coeff[g.points - keep - 1] == std::complex<double>(0.0, 0.0));
}

TEST_CASE("field container round trip") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "fracheat_io_test";
  fs::create_directories(dir);

  Grid g(2, 32, 4.0);
  Rng rng(3);
  PhysicalField p(g);
  for (auto& v : p.values) v = rng.gaussian();
  const auto ppath = (dir / "field_p.frht").string();
  save_field(ppath, p);
  auto p2 = load_physical_field(ppath);
  CHECK(p2.grid == g);
  CHECK(p2.values == p.values);  // byte-exact
  CHECK_FALSE(stored_field_is_spectral(ppath));

  auto s = forward_transform(p);
  const auto spath = (dir / "field_s.frht").string();
  save_field(spath, s);
  auto s2 = load_spectral_field(spath);
  CHECK(s2.coeff == s.coeff);
  CHECK(stored_field_is_spectral(spath));

  CHECK_THROWS(load_spectral_field(ppath));
  CHECK_THROWS(load_physical_field(spath));
  CHECK_THROWS(load_physical_field((dir / "missing.frht").string()));

  fs::remove_all(dir);
}
