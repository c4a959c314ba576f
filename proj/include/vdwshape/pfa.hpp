#pragma once
#include <cmath>
#include <functional>

#include "vdwshape/dielectric.hpp"
#include "vdwshape/quadrature.hpp"

namespace vdw {

struct PlanarPair {
  Material material_1 = Material::gold();
  Material material_2 = Material::gold();
  Material ambient = Material::vacuum();
  double d = 1.0;        // separation [m]
  double delta = 0.0;    // film thickness [m], film variants only
  double n_areal = -1.0; // areal electron density n*delta [1/m^2], 2D film only
};

// trilogarithm on [-1, 1]
double polylog3(double x);

// E_p(d) = (hbar/4pi^2) ∫ q dq ∫ dxi ln[1 - f1 f2 e^{-2qd}]
//        = -(hbar/16pi^2 d^2) ∫ dxi Li3(f1 f2);  E_p < 0 for like materials
double halfspace_energy_per_area(const PlanarPair& pair, const QuadSpec& quad = {});

// A = -12 pi d^2 E_p(d); symmetric in the two materials
double hamaker_constant(const Material& m1, const Material& m2,
                        const Material& ambient, const QuadSpec& quad = {});

// Eq-style A12 entering analytic_smallsep_energy, pinned by the n = 2
// half-space consistency: A12 = A_hamaker / (12 pi)
inline double a12_from_hamaker(double A) { return A / (12.0 * M_PI); }

// F = -2 pi R E_p(z) [1 - (1/(R E_p(z))) ∫_z^{z+R} E_p(h) dh]   (with_correction)
//    = -2 pi R E_p(z)                                           (otherwise)
// E_p < 0 for attraction, so F > 0 means attraction (repo-wide convention)
double pfa_sphere_force(double R, double z,
                        const std::function<double(double)>& E_p_curve,
                        bool with_correction);

// E(n) = -A12 [2 pi R1 R2/(R1+R2)]^{1-n/2} Gamma(1+n/2) L^n d^{-(1+n/2)}
// n = 0 spheres, 1 parallel cylinders of length L, 2 half-spaces of area L^2
double analytic_smallsep_energy(int n, double R1, double R2, double L, double d,
                                double A12);

// thin metallic film asymptote: R*F = 0.1556 sqrt(n hbar^2 e^2/m_e) sqrt(delta/R) (d/R)^{-5/2}
// with n from omega_p^2 = 4 pi n e^2/m_e (Gaussian), i.e. sqrt(n e^2/m_e) -> omega_p/(2 sqrt(pi));
// n_areal > 0 overrides the drude-derived n*delta
double film2d_force(double R, double d, double delta, double n_areal,
                    const Material& drude);

// one reflection factor replaced by f (1 - e^{-2 q delta})/(1 - f^2 e^{-2 q delta})
double halfspace_film_energy_per_area(double d, double delta, const Material& film,
                                      const Material& halfspace,
                                      const QuadSpec& quad = {});

} // namespace vdw
