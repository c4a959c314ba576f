#include "vdwshape/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vdw {

Material Material::drude(double omega_p, double gamma) {
  if (omega_p <= 0.0 || gamma < 0.0)
    throw std::domain_error("drude: omega_p > 0 and gamma >= 0 required");
  Material m;
  m.kind = Kind::Drude;
  m.omega_p = omega_p;
  m.gamma = gamma;
  return m;
}

Material Material::oscillators(std::vector<double> C, std::vector<double> omega) {
  if (C.size() != omega.size())
    throw std::domain_error("oscillators: strength/resonance lists must match");
  for (size_t k = 0; k < C.size(); ++k)
    if (C[k] < 0.0 || omega[k] <= 0.0)
      throw std::domain_error("oscillators: C_k >= 0 and omega_k > 0 required");
  Material m;
  m.kind = Kind::Oscillators;
  m.osc_C = std::move(C);
  m.osc_omega = std::move(omega);
  return m;
}

Material Material::tabulated(std::vector<double> xi, std::vector<double> eps) {
  if (xi.size() != eps.size() || xi.size() < 2)
    throw std::domain_error("tabulated: need >= 2 matching samples");
  for (size_t k = 0; k < xi.size(); ++k) {
    if (xi[k] <= 0.0 || eps[k] <= 0.0)
      throw std::domain_error("tabulated: xi and eps samples must be positive");
    if (k > 0 && xi[k] <= xi[k - 1])
      throw std::domain_error("tabulated: xi samples must be strictly increasing");
  }
  Material m;
  m.kind = Kind::Tabulated;
  m.tab_xi = std::move(xi);
  m.tab_eps = std::move(eps);
  return m;
}

Material Material::constant(double eps) {
  if (eps < 1.0) throw std::domain_error("constant: eps >= 1 required on the imaginary axis");
  Material m;
  m.kind = Kind::Constant;
  m.eps_const = eps;
  return m;
}

bool Material::same_model(const Material& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Drude:       return omega_p == o.omega_p && gamma == o.gamma;
    case Kind::Oscillators: return osc_C == o.osc_C && osc_omega == o.osc_omega;
    case Kind::Tabulated:   return tab_xi == o.tab_xi && tab_eps == o.tab_eps;
    case Kind::Constant:    return eps_const == o.eps_const;
  }
  return false;
}

double eval_epsilon(const Material& model, double xi) {
  if (xi < 0.0) throw std::domain_error("eval_epsilon: xi < 0");
  switch (model.kind) {
    case Material::Kind::Drude: {
      if (xi == 0.0)
        throw std::domain_error("eval_epsilon: drude diverges at xi = 0");
      return 1.0 + model.omega_p * model.omega_p / (xi * (xi + model.gamma));
    }
    case Material::Kind::Oscillators: {
      double e = 1.0;
      for (size_t k = 0; k < model.osc_C.size(); ++k) {
        const double r = xi / model.osc_omega[k];
        e += model.osc_C[k] / (1.0 + r * r);
      }
      return e;
    }
    case Material::Kind::Tabulated: {
      const auto& gx = model.tab_xi;
      const auto& ge = model.tab_eps;
      if (xi <= gx.front()) return ge.front();
      if (xi >= gx.back()) return ge.back();
      const auto it = std::upper_bound(gx.begin(), gx.end(), xi);
      const size_t j = static_cast<size_t>(it - gx.begin());
      const double lx0 = std::log(gx[j - 1]), lx1 = std::log(gx[j]);
      const double le0 = std::log(ge[j - 1]), le1 = std::log(ge[j]);
      const double w = (std::log(xi) - lx0) / (lx1 - lx0);
      return std::exp(le0 + w * (le1 - le0));
    }
    case Material::Kind::Constant:
      return model.eps_const;
  }
  throw std::logic_error("eval_epsilon: unknown model kind");
}

double spectral_u(const Material& ambient, const Material& body, double xi) {
  const double eb = eval_epsilon(body, xi);
  const double ea = eval_epsilon(ambient, xi);
  if (eb == ea)
    throw std::runtime_error("spectral_u: no contrast (eps_body = eps_ambient)");
  return 1.0 / (1.0 - eb / ea);
}

double contrast_factor(const Material& substrate, const Material& ambient, double xi) {
  const double es = eval_epsilon(substrate, xi);
  const double ea = eval_epsilon(ambient, xi);
  return (es - ea) / (es + ea);
}

Material load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_tabulated: cannot open " + path);
  std::vector<double> xi, eps;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    double x, e;
    if (!(ss >> x)) continue;  // blank / comment-only line
    if (!(ss >> e))
      throw std::runtime_error("load_tabulated: " + path + ":" +
                               std::to_string(lineno) + ": expected two columns");
    xi.push_back(x);
    eps.push_back(e);
  }
  return Material::tabulated(std::move(xi), std::move(eps));
}

double reference_omega(const Material& body, const Material& substrate) {
  if (substrate.kind == Material::Kind::Drude) return substrate.omega_p;
  if (body.kind == Material::Kind::Drude) return body.omega_p;
  if (substrate.kind == Material::Kind::Oscillators && !substrate.osc_omega.empty())
    return substrate.osc_omega.front();
  if (body.kind == Material::Kind::Oscillators && !body.osc_omega.empty())
    return body.osc_omega.front();
  return 1e16;
}

} // namespace vdw
