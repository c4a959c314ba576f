#include "vdwshape/pfa.hpp"

#include <cmath>
#include <stdexcept>

#include "vdwshape/constants.hpp"

namespace vdw {

static double li3_series(double x) {
  double term = x, sum = 0.0;
  for (int l = 1; l <= 200; ++l) {
    sum += term / ((double)l * l * l);
    term *= x;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Li3(e^mu) about mu = 0; valid for e^mu in (0.5, 1]
static double li3_near_one(double mu) {
  static const double zeta3 = 1.2020569031595943;
  static const double zeta2 = M_PI * M_PI / 6.0;
  // zeta(3-k) for k = 3..12
  static const double zneg[] = {-0.5, -1.0 / 12, 0.0, 1.0 / 120, 0.0,
                                -1.0 / 252, 0.0, 1.0 / 240, 0.0, -1.0 / 132};
  if (mu == 0.0) return zeta3;
  double s = zeta3 + zeta2 * mu + 0.5 * mu * mu * (1.5 - std::log(-mu));
  double muk = mu * mu;  // mu^k/k! running term, k starting at 3
  double fact = 2.0;
  for (int k = 3; k <= 12; ++k) {
    muk *= mu;
    fact *= k;
    s += zneg[k - 3] * muk / fact;
  }
  return s;
}

double polylog3(double x) {
  if (x > 1.0 || x < -1.0) throw std::domain_error("polylog3: |x| <= 1 required");
  if (std::abs(x) <= 0.5) return li3_series(x);
  if (x > 0.0) return li3_near_one(std::log(x));
  // Li3(x) = (1/4) Li3(x^2) - Li3(-x), -x in (0.5, 1]
  return 0.25 * polylog3(x * x) - li3_near_one(std::log(-x));
}

double halfspace_energy_per_area(const PlanarPair& pair, const QuadSpec& quad) {
  if (pair.d <= 0.0) throw std::domain_error("halfspace_energy_per_area: d > 0 required");
  const double w0 = reference_omega(pair.material_1, pair.material_2);
  const QuadResult qr = integrate_xi(
      [&](double xi) {
        const double f1 = contrast_factor(pair.material_1, pair.ambient, xi);
        const double f2 = contrast_factor(pair.material_2, pair.ambient, xi);
        return polylog3(f1 * f2);
      },
      w0, quad);
  if (!qr.converged)
    throw std::runtime_error("halfspace_energy_per_area: quadrature did not reach tolerance");
  return -hbar / (16.0 * M_PI * M_PI * pair.d * pair.d) * qr.value;
}

double hamaker_constant(const Material& m1, const Material& m2,
                        const Material& ambient, const QuadSpec& quad) {
  PlanarPair p;
  p.material_1 = m1;
  p.material_2 = m2;
  p.ambient = ambient;
  p.d = 1.0;
  return -12.0 * M_PI * halfspace_energy_per_area(p, quad);
}

double pfa_sphere_force(double R, double z,
                        const std::function<double(double)>& E_p_curve,
                        bool with_correction) {
  if (z <= 0.0 || R <= 0.0) throw std::domain_error("pfa_sphere_force: R, z > 0 required");
  const double Ez = E_p_curve(z);
  if (Ez == 0.0) return 0.0;
  double bracket = 1.0;
  if (with_correction) {
    const auto& gl = gauss_legendre(128);
    double integral = 0.0;
    for (size_t i = 0; i < gl.x.size(); ++i) {
      const double h = z + 0.5 * R * (gl.x[i] + 1.0);
      integral += gl.w[i] * 0.5 * R * E_p_curve(h);
    }
    bracket -= integral / (R * Ez);
  }
  return -2.0 * M_PI * R * Ez * bracket;
}

double analytic_smallsep_energy(int n, double R1, double R2, double L, double d,
                                double A12) {
  if (n < 0 || n > 2) throw std::domain_error("analytic_smallsep_energy: n in {0,1,2}");
  if (d <= 0.0) throw std::domain_error("analytic_smallsep_energy: d > 0 required");
  if (n >= 1 && L <= 0.0) throw std::domain_error("analytic_smallsep_energy: L > 0 required");
  const double geo = 2.0 * M_PI * R1 * R2 / (R1 + R2);
  return -A12 * std::pow(geo, 1.0 - 0.5 * n) * std::tgamma(1.0 + 0.5 * n) *
         std::pow(L, n) * std::pow(d, -(1.0 + 0.5 * n));
}

double film2d_force(double R, double d, double delta, double n_areal,
                    const Material& drude) {
  if (R <= 0.0 || d <= 0.0) throw std::domain_error("film2d_force: R, d > 0 required");
  double amplitude;  // sqrt(n hbar^2 e^2 / m_e) * sqrt(delta) in SI
  if (n_areal > 0.0) {
    amplitude = hbar * std::sqrt(n_areal * e_charge * e_charge / (4.0 * M_PI * eps0 * m_e));
  } else {
    if (drude.kind != Material::Kind::Drude)
      throw std::domain_error("film2d_force: drude model or n_areal required");
    if (delta <= 0.0) throw std::domain_error("film2d_force: delta > 0 required");
    amplitude = hbar * drude.omega_p / (2.0 * std::sqrt(M_PI)) * std::sqrt(delta);
  }
  return 0.1556 * amplitude / std::sqrt(R) * std::pow(d / R, -2.5);
}

double halfspace_film_energy_per_area(double d, double delta, const Material& film,
                                      const Material& halfspace,
                                      const QuadSpec& quad) {
  if (d <= 0.0 || delta <= 0.0)
    throw std::domain_error("halfspace_film_energy_per_area: d, delta > 0 required");
  const Material vac = Material::vacuum();
  const double w0 = reference_omega(film, halfspace);
  const double r = delta / d;
  // inner y = 2qd integral on a mapped Gauss-Legendre grid
  const int ny = 96;
  const auto& gl = gauss_legendre(ny);
  const double Y = 2.5;
  const QuadResult qr = integrate_xi(
      [&](double xi) {
        const double fh = contrast_factor(halfspace, vac, xi);
        const double ff = contrast_factor(film, vac, xi);
        double s = 0.0;
        for (int i = 0; i < ny; ++i) {
          const double t = gl.x[i];
          const double y = Y * (1.0 + t) / (1.0 - t);
          const double jac = gl.w[i] * 2.0 * Y / ((1.0 - t) * (1.0 - t));
          const double e = std::exp(-y * r);
          const double ffilm = ff * (1.0 - e) / (1.0 - ff * ff * e);
          s += jac * y * std::log1p(-fh * ffilm * std::exp(-y));
        }
        return s;
      },
      w0, quad);
  if (!qr.converged)
    throw std::runtime_error("halfspace_film_energy_per_area: quadrature did not reach tolerance");
  return hbar / (16.0 * M_PI * M_PI * d * d) * qr.value;
}

} // namespace vdw
