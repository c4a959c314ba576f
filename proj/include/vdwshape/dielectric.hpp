#pragma once
#include <string>
#include <vector>

#include "vdwshape/constants.hpp"

namespace vdw {

// Dielectric response ε(iξ) on the imaginary frequency axis. All models are
// real, finite and ≥ 1 there (passive materials).
struct Material {
  enum class Kind { Drude, Oscillators, Tabulated, Constant };

  Kind kind = Kind::Constant;
  double omega_p = 0.0, gamma = 0.0;         // Drude
  std::vector<double> osc_C, osc_omega;      // oscillator set
  std::vector<double> tab_xi, tab_eps;       // tabulated, strictly increasing xi
  double eps_const = 1.0;

  static Material drude(double omega_p, double gamma = 0.0);
  static Material oscillators(std::vector<double> C, std::vector<double> omega);
  static Material tabulated(std::vector<double> xi, std::vector<double> eps);
  static Material constant(double eps);
  static Material vacuum() { return constant(1.0); }

  // defaults used throughout: Drude gold (hbar*omega_p = 9 eV, hbar*gamma = 35 meV)
  // and a single-UV-oscillator polystyrene fit with static epsilon = 2.5.
  static Material gold() { return drude(ev_to_rads(9.0), ev_to_rads(0.035)); }
  static Material gold_undamped() { return drude(ev_to_rads(9.0), 0.0); }
  static Material polystyrene() { return oscillators({1.5}, {1.45e16}); }

  bool is_undamped_drude() const { return kind == Kind::Drude && gamma == 0.0; }
  bool same_model(const Material& o) const;
};

double eval_epsilon(const Material& model, double xi);

// spectral variable u = 1/(1 - eps_body/eps_ambient)
double spectral_u(const Material& ambient, const Material& body, double xi);

// f_c = (eps_s - eps_a)/(eps_s + eps_a)
double contrast_factor(const Material& substrate, const Material& ambient, double xi);

// two-column text file "xi_rad_per_s epsilon", '#' comments
Material load_tabulated(const std::string& path);

// reference frequency for quadrature maps and reduced units
double reference_omega(const Material& body, const Material& substrate);

} // namespace vdw
