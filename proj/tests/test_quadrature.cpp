#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "vdwshape/quadrature.hpp"

using namespace vdw;

TEST_CASE("gauss-legendre nodes and weights") {
  const auto& g2 = gauss_legendre(2);
  REQUIRE(g2.x.size() == 2);
  CHECK(g2.x[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g2.x[1] == doctest::Approx(+1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g2.w[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g2.w[1] == doctest::Approx(1.0).epsilon(1e-15));

  for (int n : {1, 5, 16, 64}) {
    const auto& g = gauss_legendre(n);
    double sw = 0.0;
    for (double w : g.w) sw += w;
    CHECK(sw == doctest::Approx(2.0).epsilon(1e-14));
  }

  // n = 3 integrates x^4 exactly (degree 2n-1 = 5)
  const auto& g3 = gauss_legendre(3);
  double s = 0.0;
  for (size_t i = 0; i < g3.x.size(); ++i)
    s += g3.w[i] * std::pow(g3.x[i], 4);
  CHECK(s == doctest::Approx(2.0 / 5.0).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_legendre(0), std::domain_error);
}

TEST_CASE("mapped semi-infinite grid") {
  const XiGrid grid = xi_grid(1.0, 64);
  REQUIRE(grid.xi.size() == 64);
  double s = 0.0;
  for (size_t i = 0; i < grid.xi.size(); ++i)
    s += grid.w[i] * std::exp(-grid.xi[i]);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(xi_grid(0.0, 16), std::domain_error);
  CHECK_THROWS_AS(xi_grid(-2.0, 16), std::domain_error);
}

TEST_CASE("integrate_xi on closed forms") {
  QuadSpec spec;
  spec.tol_rel = 1e-12;
  const auto lorentz2 = [](double x) {
    const double d = 1.0 + x * x;
    return 1.0 / (d * d);
  };
  const QuadResult r = integrate_xi(lorentz2, 1.0, spec);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(M_PI / 4.0).epsilon(1e-11));
  CHECK(r.nodes_used >= spec.nodes);
  CHECK(r.achieved_rel <= spec.tol_rel);

  // spec.omega0 > 0 overrides the argument
  QuadSpec ov = spec;
  ov.omega0 = 3.0;
  const QuadResult r2 = integrate_xi(lorentz2, 1.0, ov);
  CHECK(r2.converged);
  CHECK(r2.value == doctest::Approx(M_PI / 4.0).epsilon(1e-10));
}

TEST_CASE("adaptive flags") {
  const auto f = [](double x) { return std::exp(-x); };

  QuadSpec fixed;
  fixed.adaptive = false;
  fixed.nodes = 32;
  const QuadResult rf = integrate_xi(f, 1.0, fixed);
  CHECK(rf.converged);
  CHECK(rf.nodes_used == 32);
  CHECK(rf.achieved_rel == 0.0);

  QuadSpec hopeless;
  hopeless.tol_rel = 1e-30;
  hopeless.nodes = 8;
  hopeless.max_nodes = 16;
  const QuadResult rh = integrate_xi(f, 1.0, hopeless);
  CHECK(!rh.converged);
  CHECK(rh.nodes_used == 16);
  CHECK(rh.value == doctest::Approx(1.0).epsilon(1e-3));
}
