#include "vdwshape/multipole.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "vdwshape/constants.hpp"

namespace vdw {

double homogeneous_polarizability(int l, double a, double u) {
  const double nl = depolarization(l);
  if (u == nl) throw std::runtime_error("homogeneous_polarizability: pole u = n_l");
  const double cl = nl * std::pow(a, 2 * l + 1);
  return -cl / (u - nl);
}

double coated_polarizability(int l, double R, double delta, double u_ic,
                             double u_ac, double u_ca) {
  if (delta < 0.0 || delta > R)
    throw std::domain_error("coated_polarizability: delta outside [0, R]");
  const double nl = depolarization(l);
  const double x = std::pow(1.0 - delta / R, 2 * l + 1);
  const double num = nl * ((nl - u_ic) - (nl - u_ac) * x);
  const double den = (nl - u_ic) * (nl - u_ca) + nl * (1.0 - nl) * x;
  if (den == 0.0) throw std::runtime_error("coated_polarizability: resonance pole");
  return num / den * std::pow(R, 2 * l + 1);
}

CouplingBlock coupling_matrix(int m, int L_max, double z_over_R) {
  if (z_over_R <= 0.0) throw std::domain_error("coupling_matrix: z_over_R > 0 required");
  if (m < 0 || m > L_max) throw std::domain_error("coupling_matrix: 0 <= m <= L_max required");
  const int lmin = std::max(1, m);
  const int q = L_max - lmin + 1;
  const double lnt = -std::log(2.0 * (1.0 + z_over_R));

  std::vector<double> lgam(2 * L_max + 2);
  for (int k = 0; k < (int)lgam.size(); ++k) lgam[k] = std::lgamma(k + 1.0);
  std::vector<double> lnl(L_max + 1), ln2l1(L_max + 1);
  for (int l = 1; l <= L_max; ++l) {
    lnl[l] = std::log((double)l);
    ln2l1[l] = std::log(2.0 * l + 1.0);
  }

  CouplingBlock b;
  b.m = m;
  b.L_max = L_max;
  b.A.resize(q, q);
  b.c.resize(q);
  b.n0.resize(q);
  for (int i = 0; i < q; ++i) {
    const int l = lmin + i;
    b.n0[i] = depolarization(l);
    b.c[i] = b.n0[i];
    for (int j = i; j < q; ++j) {
      const int lp = lmin + j;
      const double e = lgam[l + lp] -
                       0.5 * (lgam[l + m] + lgam[l - m] + lgam[lp + m] + lgam[lp - m]) +
                       0.5 * (lnl[l] + lnl[lp] - ln2l1[l] - ln2l1[lp]) +
                       (l + lp + 1) * lnt;
      b.A(i, j) = b.A(j, i) = std::exp(e);
    }
  }
  return b;
}

std::vector<double> modes_fixed_fc(int m, int L_max, double z_over_R, double fc) {
  const CouplingBlock b = coupling_matrix(m, L_max, z_over_R);
  Eigen::MatrixXd H = -fc * b.A;
  for (int i = 0; i < H.rows(); ++i) H(i, i) += b.n0[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("modes_fixed_fc: eigen-solver failure in block m=" + std::to_string(m));
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + H.rows());
  return out;
}

// roots u of det[(1-2u)(diag(n)-u) - A] = 0, i.e. the identical-undamped-Drude
// sphere/substrate modes with the contrast evaluated at each mode frequency
static Eigen::VectorXcd modes_same_drude_qep(const CouplingBlock& b) {
  const int q = (int)b.A.rows();
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(2 * q, 2 * q);
  C.topRightCorner(q, q).setIdentity();
  Eigen::MatrixXd M0 = -b.A;
  for (int i = 0; i < q; ++i) M0(i, i) += b.n0[i];
  C.bottomLeftCorner(q, q) = -0.5 * M0;
  for (int i = 0; i < q; ++i) C(q + i, q + i) = 0.5 * (1.0 + 2.0 * b.n0[i]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_modes: eigen-solver failure in block m=" + std::to_string(b.m));
  return es.eigenvalues();
}

// homogeneous body material; throws if the sphere is genuinely layered
static const Material& solid_material(const SphereSystem& sys) {
  if (sys.delta <= 0.0) return sys.core;
  if (sys.delta >= sys.R) return sys.coat;
  if (sys.core.same_model(sys.coat)) return sys.coat;
  throw std::runtime_error("operation requires a homogeneous sphere; use the argument-principle path");
}

static bool same_undamped_drude_pair(const SphereSystem& sys) {
  const Material& body = solid_material(sys);
  return body.is_undamped_drude() && sys.substrate.is_undamped_drude() &&
         body.omega_p == sys.substrate.omega_p &&
         sys.ambient.kind == Material::Kind::Constant && sys.ambient.eps_const == 1.0;
}

// contrast that must not depend on xi; probed at two frequencies
static double constant_contrast(const SphereSystem& sys, double omega_ref) {
  const double f1 = contrast_factor(sys.substrate, sys.ambient, 0.37 * omega_ref);
  const double f2 = contrast_factor(sys.substrate, sys.ambient, 5.1 * omega_ref);
  if (std::abs(f1 - f2) > 1e-13 * std::max(1.0, std::abs(f1)))
    throw std::runtime_error(
        "spectral_modes/mode-sum: substrate contrast is frequency dependent; "
        "use the argument-principle path");
  return f1;
}

ModeSpectrum spectral_modes(const SphereSystem& sys, int L_max) {
  const Material& body = solid_material(sys);
  ModeSpectrum sp;
  sp.z_over_R = sys.z / sys.R;
  sp.L_max = L_max;
  const bool qep = same_undamped_drude_pair(sys);
  double fc = 0.0;
  if (!qep) fc = constant_contrast(sys, reference_omega(body, sys.substrate));
  for (int m = 0; m <= L_max; ++m) {
    if (qep) {
      const CouplingBlock b = coupling_matrix(m, L_max, sp.z_over_R);
      const Eigen::VectorXcd u = modes_same_drude_qep(b);
      // physical branch: the q roots continuously connected to {n_l}; report
      // all 2q roots sorted (the companion pairs each n_l with a 1/2-branch)
      std::vector<double> re(u.size());
      for (int i = 0; i < u.size(); ++i) re[i] = u[i].real();
      std::sort(re.begin(), re.end());
      for (size_t s = 0; s < re.size(); ++s)
        sp.modes.push_back({m, (int)s, re[s]});
    } else {
      const std::vector<double> ns = modes_fixed_fc(m, L_max, sp.z_over_R, fc);
      for (size_t s = 0; s < ns.size(); ++s)
        sp.modes.push_back({m, (int)s, ns[s]});
    }
  }
  return sp;
}

std::vector<double> spectral_beta(const SphereSystem& sys, double xi, int L_max) {
  std::vector<double> beta(L_max + 1, 0.0);
  const bool layered = sys.delta > 0.0 && sys.delta < sys.R && !sys.core.same_model(sys.coat);
  if (!layered) {
    const double u = spectral_u(sys.ambient, solid_material(sys), xi);
    for (int l = 1; l <= L_max; ++l) {
      const double nl = depolarization(l);
      beta[l] = nl / (nl - u);
    }
  } else {
    const double u_ic = spectral_u(sys.coat, sys.core, xi);
    const double u_ac = spectral_u(sys.coat, sys.ambient, xi);
    const double u_ca = spectral_u(sys.ambient, sys.coat, xi);
    for (int l = 1; l <= L_max; ++l)
      beta[l] = coated_polarizability(l, 1.0, sys.delta / sys.R, u_ic, u_ac, u_ca);
  }
  return beta;
}

// log det[I - f_c diag(sqrt(beta_l/n_l)) A diag(sqrt(beta_l/n_l))] for one m
static double block_logdet(const CouplingBlock& b, const std::vector<double>& beta,
                           double fc) {
  const int lmin = std::max(1, b.m);
  const int q = (int)b.A.rows();
  bool positive = true;
  Eigen::VectorXd D(q);
  for (int i = 0; i < q; ++i) {
    D[i] = beta[lmin + i] / b.n0[i];
    if (!(D[i] > 0.0)) positive = false;
  }
  if (positive) {
    Eigen::VectorXd sq = D.cwiseSqrt();
    Eigen::MatrixXd M = (-fc) * (sq.asDiagonal() * b.A * sq.asDiagonal());
    M.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() == Eigen::Success) {
      double ld = 0.0;
      for (int i = 0; i < q; ++i) ld += std::log(llt.matrixLLT()(i, i));
      return 2.0 * ld;
    }
  }
  Eigen::MatrixXd M = (-fc) * (b.A * D.asDiagonal());
  M.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  double ld = 0.0;
  double sign = lu.permutationP().determinant();
  for (int i = 0; i < q; ++i) {
    const double d = lu.matrixLU()(i, i);
    if (d < 0) sign = -sign;
    ld += std::log(std::abs(d));
  }
  if (!(sign > 0) || !std::isfinite(ld))
    throw std::runtime_error("log_G_normalized: non-finite determinant at m=" + std::to_string(b.m));
  return ld;
}

double log_G_normalized_capped(const SphereSystem& sys, double xi, int L_max, int m_cap) {
  if (xi <= 0.0) throw std::domain_error("log_G_normalized: xi > 0 required");
  const double fc = contrast_factor(sys.substrate, sys.ambient, xi);
  if (fc == 0.0) return 0.0;
  const std::vector<double> beta = spectral_beta(sys, xi, L_max);
  const double zr = sys.z / sys.R;
  const int mtop = m_cap < 0 ? L_max : std::min(m_cap, L_max);
  double total = 0.0;
  for (int m = 0; m <= mtop; ++m) {
    const CouplingBlock b = coupling_matrix(m, L_max, zr);
    const double g = (m == 0) ? 1.0 : 2.0;
    total += g * block_logdet(b, beta, fc);
  }
  if (!std::isfinite(total))
    throw std::runtime_error("log_G_normalized: non-finite value at xi=" + std::to_string(xi));
  return total;
}

double log_G_normalized(const SphereSystem& sys, double xi, int L_max) {
  return log_G_normalized_capped(sys, xi, L_max, -1);
}

EnergyResult energy_argument_principle_capped(const SphereSystem& sys, int L_max,
                                              const QuadSpec& quad, int m_cap) {
  const Material& outer = sys.delta > 0.0 ? sys.coat : sys.core;
  const double w0 = reference_omega(outer, sys.substrate);
  QuadResult qr = integrate_xi(
      [&](double xi) { return log_G_normalized_capped(sys, xi, L_max, m_cap); }, w0, quad);
  EnergyResult r;
  r.U = hbar / (2.0 * M_PI) * qr.value;
  r.L_used = L_max;
  r.achieved_rel = qr.achieved_rel;
  r.converged = qr.converged;
  return r;
}

EnergyResult energy_argument_principle(const SphereSystem& sys, int L_max,
                                       const QuadSpec& quad) {
  return energy_argument_principle_capped(sys, L_max, quad, -1);
}

double energy_mode_sum(const SphereSystem& sys, int L_max) {
  const Material& body = solid_material(sys);
  if (!body.is_undamped_drude())
    throw std::runtime_error("energy_mode_sum: body must be an undamped Drude metal");
  const double wp = body.omega_p;
  double sum = 0.0;
  if (same_undamped_drude_pair(sys)) {
    for (int m = 0; m <= L_max; ++m) {
      const CouplingBlock b = coupling_matrix(m, L_max, sys.z / sys.R);
      const Eigen::VectorXcd u = modes_same_drude_qep(b);
      std::complex<double> s = 0.0;
      for (int i = 0; i < u.size(); ++i) {
        if (u[i].real() <= 0.0)
          throw std::runtime_error(
              "energy_mode_sum: negative mode eigenvalue (truncation/proximity "
              "breakdown); use energy_argument_principle");
        s += std::sqrt(u[i]);
      }
      const int q = (int)b.A.rows();
      double ref = 0.0;
      for (int i = 0; i < q; ++i) ref += std::sqrt(b.n0[i]) + std::sqrt(0.5);
      const double g = (m == 0) ? 1.0 : 2.0;
      sum += g * (s.real() - ref);
    }
  } else {
    const double fc = constant_contrast(sys, wp);
    for (int m = 0; m <= L_max; ++m) {
      const std::vector<double> ns = modes_fixed_fc(m, L_max, sys.z / sys.R, fc);
      double s = 0.0;
      const int lmin = std::max(1, m);
      for (size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] <= 0.0)
          throw std::runtime_error(
              "energy_mode_sum: negative mode eigenvalue (truncation/proximity "
              "breakdown); use energy_argument_principle");
        s += std::sqrt(ns[i]) - std::sqrt(depolarization(lmin + (int)i));
      }
      const double g = (m == 0) ? 1.0 : 2.0;
      sum += g * s;
    }
  }
  return 0.5 * hbar * wp * sum;
}

double force(const SphereSystem& sys, int L_max, const QuadSpec& quad, double h_rel) {
  const double h = h_rel * sys.z;
  SphereSystem hi = sys, lo = sys;
  hi.z += h;
  lo.z -= h;
  const double Uhi = energy_argument_principle(hi, L_max, quad).U;
  const double Ulo = energy_argument_principle(lo, L_max, quad).U;
  return (Uhi - Ulo) / (2.0 * h);
}

EnergyResult converge_Lmax(const SphereSystem& sys, double tol_rel, int L_start,
                           int L_cap, const QuadSpec& quad) {
  if (tol_rel <= 0.0) throw std::domain_error("converge_Lmax: tol_rel > 0 required");
  EnergyResult cur = energy_argument_principle(sys, L_start, quad);
  cur.achieved_rel = std::numeric_limits<double>::infinity();
  cur.converged = false;
  int L = L_start;
  while (2 * L <= L_cap) {
    L *= 2;
    EnergyResult next = energy_argument_principle(sys, L, quad);
    const double rel = std::abs(next.U - cur.U) / std::max(std::abs(next.U), 1e-300);
    cur = next;
    cur.achieved_rel = rel;
    if (rel < tol_rel) {
      cur.converged = true;
      return cur;
    }
  }
  cur.converged = false;
  return cur;
}

} // namespace vdw
