#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "vdwshape/constants.hpp"
#include "vdwshape/pfa.hpp"

using namespace vdw;

namespace {
double li3_direct(double x, int terms) {
  double s = 0.0;
  for (int k = terms; k >= 1; --k) s += std::pow(x, k) / (double(k) * k * k);
  return s;
}
}  // namespace

TEST_CASE("trilogarithm") {
  const double zeta3 = 1.2020569031595943;
  CHECK(polylog3(1.0) == doctest::Approx(zeta3).epsilon(1e-14));
  CHECK(polylog3(-1.0) == doctest::Approx(-0.75 * zeta3).epsilon(1e-14));
  CHECK(polylog3(0.0) == 0.0);

  // closed form Li3(1/2) = 7 zeta(3)/8 - pi^2 ln2 / 12 + ln^3 2 / 6
  const double l2 = std::log(2.0);
  const double li3_half = 7.0 * zeta3 / 8.0 - M_PI * M_PI * l2 / 12.0 + l2 * l2 * l2 / 6.0;
  CHECK(polylog3(0.5) == doctest::Approx(li3_half).epsilon(1e-14));

  // direct defining sums pin the near-one and reflection branches
  CHECK(polylog3(0.7) == doctest::Approx(li3_direct(0.7, 150)).epsilon(1e-13));
  CHECK(polylog3(0.99) == doctest::Approx(li3_direct(0.99, 6000)).epsilon(1e-12));
  CHECK(polylog3(-0.8) == doctest::Approx(li3_direct(-0.8, 200)).epsilon(1e-13));
  CHECK(polylog3(1e-3) ==
        doctest::Approx(1e-3 + 1e-6 / 8.0 + 1e-9 / 27.0).epsilon(1e-12));

  CHECK_THROWS_AS(polylog3(1.0001), std::domain_error);
  CHECK_THROWS_AS(polylog3(-1.0001), std::domain_error);
}

TEST_CASE("half-space energy per area") {
  PlanarPair pp;
  pp.d = 2e-9;
  const double E1 = halfspace_energy_per_area(pp);
  CHECK(E1 < 0.0);
  pp.d = 4e-9;
  const double E2 = halfspace_energy_per_area(pp);
  CHECK(E2 / E1 == doctest::Approx(0.25).epsilon(1e-12));

  PlanarPair bad;
  bad.d = 0.0;
  CHECK_THROWS_AS(halfspace_energy_per_area(bad), std::domain_error);
}

TEST_CASE("hamaker constant and normalization") {
  const Material au = Material::gold();
  const Material ps = Material::polystyrene();
  const Material vac = Material::vacuum();
  const double A = hamaker_constant(au, au, vac);
  CHECK(A > 1e-20);
  CHECK(A < 1e-18);
  CHECK(A == doctest::Approx(2.1148773040584781e-19).epsilon(1e-6));
  CHECK(hamaker_constant(au, ps, vac) ==
        doctest::Approx(hamaker_constant(ps, au, vac)).epsilon(1e-14));

  for (double d : {5e-10, 3e-9, 2e-8}) {
    PlanarPair pp;
    pp.d = d;
    CHECK(-12.0 * M_PI * d * d * halfspace_energy_per_area(pp) ==
          doctest::Approx(A).epsilon(1e-10));
  }
}

TEST_CASE("small-separation analytic forms") {
  const double A12 = 3.7e-21;
  // n = 2 coincides with the half-space expression -A12 L^2 / d^2
  CHECK(analytic_smallsep_energy(2, 1.0, 1.0, 2e-6, 3e-9, A12) ==
        doctest::Approx(-A12 * 4e-12 / 9e-18).epsilon(1e-13));
  // n = 0: -A12 * 2 pi Rbar / d
  CHECK(analytic_smallsep_energy(0, 2e-6, 2e-6, 0.0, 5e-9, A12) ==
        doctest::Approx(-A12 * 2.0 * M_PI * 1e-6 / 5e-9).epsilon(1e-13));
  // n = 1: -A12 sqrt(2 pi Rbar) Gamma(3/2) L d^{-3/2}
  const double rbar = 1e-6;
  const double expect =
      -A12 * std::sqrt(2.0 * M_PI * rbar) * (0.5 * std::sqrt(M_PI)) * 1e-5 *
      std::pow(4e-9, -1.5);
  CHECK(analytic_smallsep_energy(1, 2e-6, 2e-6, 1e-5, 4e-9, A12) ==
        doctest::Approx(expect).epsilon(1e-13));

  CHECK_THROWS_AS(analytic_smallsep_energy(3, 1, 1, 1, 1, A12), std::domain_error);
  CHECK_THROWS_AS(analytic_smallsep_energy(2, 1, 1, 1, 0.0, A12), std::domain_error);
  CHECK_THROWS_AS(analytic_smallsep_energy(1, 1, 1, 0.0, 1, A12), std::domain_error);
}

TEST_CASE("film on a half-space") {
  const Material au = Material::gold();
  const double d = 2e-9;
  PlanarPair pp;
  pp.d = d;
  const double ehs = halfspace_energy_per_area(pp);

  // thick film recovers the half-space result, thin film switches off
  CHECK(halfspace_film_energy_per_area(d, 1e4 * d, au, au) ==
        doctest::Approx(ehs).epsilon(1e-6));
  const double e3 = halfspace_film_energy_per_area(d, 1e-3 * d, au, au);
  const double e4 = halfspace_film_energy_per_area(d, 1e-4 * d, au, au);
  CHECK(std::abs(e3) < 0.1 * std::abs(ehs));
  CHECK(std::abs(e4) < 0.5 * std::abs(e3));

  // intermediate regime steepens past the -2 half-space power
  const double delta = 1e-11;
  const double d0 = 100.0 * delta;
  const double lo = halfspace_film_energy_per_area(d0 / 1.1, delta, au, au);
  const double hi = halfspace_film_energy_per_area(d0 * 1.1, delta, au, au);
  const double slope = std::log(std::abs(hi) / std::abs(lo)) / std::log(1.21);
  CHECK(slope < -2.2);
  CHECK(slope > -2.6);

  CHECK_THROWS_AS(halfspace_film_energy_per_area(0.0, 1e-9, au, au), std::domain_error);
  CHECK_THROWS_AS(halfspace_film_energy_per_area(1e-9, 0.0, au, au), std::domain_error);
}

TEST_CASE("thin-film sphere force asymptote") {
  const Material au = Material::gold();
  const double R = 1e-6, d = 1e-8, delta = 1e-9;
  const double f0 = film2d_force(R, d, delta, -1.0, au);
  CHECK(f0 > 0.0);
  CHECK(film2d_force(R, 2.0 * d, delta, -1.0, au) / f0 ==
        doctest::Approx(std::pow(2.0, -2.5)).epsilon(1e-12));
  CHECK(film2d_force(R, d, 2.0 * delta, -1.0, au) / f0 ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // areal density giving the same sheet response as the drude film
  const double n_areal =
      au.omega_p * au.omega_p * m_e * eps0 * delta / (e_charge * e_charge);
  CHECK(film2d_force(R, d, delta, n_areal, au) == doctest::Approx(f0).epsilon(1e-12));

  CHECK_THROWS_AS(film2d_force(R, d, delta, -1.0, Material::polystyrene()),
                  std::domain_error);
  CHECK_THROWS_AS(film2d_force(R, d, 0.0, -1.0, au), std::domain_error);
  CHECK_THROWS_AS(film2d_force(0.0, d, delta, -1.0, au), std::domain_error);
}

TEST_CASE("pfa sphere force") {
  const auto inv_sq = [](double h) { return -1.0 / (h * h); };
  const double R = 2.0;
  for (double z : {0.01, 0.1, 2.0}) {
    const double plain = pfa_sphere_force(R, z, inv_sq, false);
    CHECK(plain == doctest::Approx(2.0 * M_PI * R / (z * z)).epsilon(1e-13));
    // for E ~ h^-2 the finite-size bracket is R/(z+R)
    const double corr = pfa_sphere_force(R, z, inv_sq, true);
    CHECK(corr / plain == doctest::Approx(R / (z + R)).epsilon(1e-10));
  }
  CHECK(pfa_sphere_force(R, R, inv_sq, true) /
            pfa_sphere_force(R, R, inv_sq, false) ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(pfa_sphere_force(1.0, 1.0, [](double) { return 0.0; }, true) == 0.0);
  CHECK_THROWS_AS(pfa_sphere_force(0.0, 1.0, inv_sq, false), std::domain_error);
  CHECK_THROWS_AS(pfa_sphere_force(1.0, 0.0, inv_sq, false), std::domain_error);

  // a12_from_hamaker is the plain 12 pi normalization
  CHECK(a12_from_hamaker(12.0 * M_PI) == doctest::Approx(1.0).epsilon(1e-15));
}
