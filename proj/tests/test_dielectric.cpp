#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "vdwshape/constants.hpp"
#include "vdwshape/dielectric.hpp"

using namespace vdw;

TEST_CASE("drude epsilon on the imaginary axis") {
  const Material au = Material::gold();
  const double wp = ev_to_rads(9.0), ga = ev_to_rads(0.035);
  CHECK(au.omega_p == doctest::Approx(wp).epsilon(1e-14));
  CHECK(au.gamma == doctest::Approx(ga).epsilon(1e-14));
  const double xi = 1e15;
  CHECK(eval_epsilon(au, xi) ==
        doctest::Approx(1.0 + wp * wp / (xi * (xi + ga))).epsilon(1e-14));
  const Material und = Material::gold_undamped();
  CHECK(und.is_undamped_drude());
  CHECK(!au.is_undamped_drude());
  CHECK(eval_epsilon(und, wp) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(eval_epsilon(und, 0.0), std::domain_error);
  CHECK_THROWS_AS(Material::drude(-1.0), std::domain_error);
  CHECK_THROWS_AS(Material::drude(1.0, -1.0), std::domain_error);
}

TEST_CASE("oscillator and constant models") {
  const Material ps = Material::polystyrene();
  CHECK(eval_epsilon(ps, 0.0) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(eval_epsilon(ps, 1.45e16) == doctest::Approx(1.0 + 0.75).epsilon(1e-14));
  CHECK(eval_epsilon(ps, 1e20) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(Material::oscillators({1.0}, {1.0, 2.0}), std::domain_error);
  CHECK_THROWS_AS(Material::oscillators({-1.0}, {1.0}), std::domain_error);
  CHECK(eval_epsilon(Material::constant(3.0), 7e13) == 3.0);
  CHECK(eval_epsilon(Material::vacuum(), 1e10) == 1.0);
  CHECK_THROWS_AS(Material::constant(0.5), std::domain_error);
}

TEST_CASE("spectral variable and contrast factor") {
  const Material vac = Material::vacuum();
  const Material und = Material::gold_undamped();
  const double wp = und.omega_p;
  // vacuum ambient, undamped metal: u = -(xi/omega_p)^2
  CHECK(spectral_u(vac, und, 0.5 * wp) == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(spectral_u(vac, und, 2.0 * wp) == doctest::Approx(-4.0).epsilon(1e-13));
  // f_c = 1/(1 + 2 xi_hat^2) for the same metal against vacuum
  CHECK(contrast_factor(und, vac, wp) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(contrast_factor(und, vac, 0.1 * wp) ==
        doctest::Approx(1.0 / 1.02).epsilon(1e-13));
  const Material c3 = Material::constant(3.0);
  CHECK(spectral_u(vac, c3, 1e15) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(contrast_factor(c3, vac, 1e15) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(contrast_factor(vac, vac, 1e15) == 0.0);
  CHECK_THROWS_AS(spectral_u(vac, vac, 1e15), std::runtime_error);
}

TEST_CASE("tabulated models interpolate and clamp") {
  const Material au = Material::gold();
  std::vector<double> xs, es;
  for (int k = 0; k < 80; ++k) {
    const double x = 1e13 * std::pow(1e4, k / 79.0);
    xs.push_back(x);
    es.push_back(eval_epsilon(au, x));
  }
  const Material tab = Material::tabulated(xs, es);
  for (double x : {3.3e13, 7.7e14, 4.1e15, 6.0e16}) {
    CHECK(eval_epsilon(tab, x) ==
          doctest::Approx(eval_epsilon(au, x)).epsilon(5e-3));
  }
  CHECK(eval_epsilon(tab, 1e12) == es.front());
  CHECK(eval_epsilon(tab, 1e19) == es.back());
  CHECK(tab.same_model(tab));
  CHECK(!tab.same_model(au));
  CHECK_THROWS_AS(Material::tabulated({1.0}, {2.0}), std::domain_error);
  CHECK_THROWS_AS(Material::tabulated({1.0, 1.0}, {2.0, 2.0}), std::domain_error);
  CHECK_THROWS_AS(Material::tabulated({1.0, 2.0}, {2.0, -1.0}), std::domain_error);
}

TEST_CASE("tabulated file loading") {
  const std::string path = "tab_test_ok.txt";
  {
    std::ofstream f(path);
    f << "# xi_rad_per_s epsilon\n"
      << "1e14 5.0\n"
      << "\n"
      << "1e15 2.0  # inline comment\n"
      << "1e16 1.1\n";
  }
  const Material m = load_tabulated(path);
  CHECK(eval_epsilon(m, 1e15) == doctest::Approx(2.0).epsilon(1e-14));
  std::remove(path.c_str());

  const std::string bad = "tab_test_bad.txt";
  {
    std::ofstream f(bad);
    f << "1e14 5.0\n1e15\n";
  }
  CHECK_THROWS_WITH_AS(load_tabulated(bad),
                       doctest::Contains(":2: expected two columns"),
                       std::runtime_error);
  std::remove(bad.c_str());
  CHECK_THROWS_AS(load_tabulated("does_not_exist.txt"), std::runtime_error);
}

TEST_CASE("reference omega selection") {
  const Material au = Material::gold();
  const Material ps = Material::polystyrene();
  const Material vac = Material::vacuum();
  CHECK(reference_omega(ps, au) == au.omega_p);
  CHECK(reference_omega(au, vac) == au.omega_p);
  CHECK(reference_omega(ps, vac) == doctest::Approx(1.45e16));
  CHECK(reference_omega(vac, vac) == doctest::Approx(1e16));
}
