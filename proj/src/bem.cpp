#include "vdwshape/bem.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "vdwshape/constants.hpp"

namespace vdw {

namespace {

using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

Eigen::VectorXcd eigenvalues_of(const MatrixXd& A) {
  Eigen::EigenSolver<MatrixXd> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("bem: dense eigenvalue iteration failed");
  return es.eigenvalues();
}

// log|det A| and the sign of det A via partial-pivot LU
std::pair<double, double> logdet_sign(const MatrixXd& A) {
  Eigen::PartialPivLU<MatrixXd> lu(A);
  const MatrixXd& LU = lu.matrixLU();
  double ld = 0.0;
  double sign = static_cast<double>(lu.permutationP().determinant());
  for (int i = 0; i < LU.rows(); ++i) {
    const double d = LU(i, i);
    if (d == 0.0 || !std::isfinite(d)) return {0.0, 0.0};
    if (d < 0.0) sign = -sign;
    ld += std::log(std::abs(d));
  }
  return {ld, sign};
}

void check_budget(int n, const char* where) {
  if (n > kPanelBudget) {
    std::ostringstream os;
    os << where << ": combined mesh has " << n
       << " panels; the dense solver budget is " << kPanelBudget
       << " - coarsen the meshes or raise the budget";
    throw std::runtime_error(os.str());
  }
}

MatrixXd scaled_block(const Mesh& obs, const Mesh& src, bool same,
                      const SubdivOpts& opt) {
  MatrixXd B = bem_block(obs, src, same, opt);
  for (int i = 0; i < B.rows(); ++i) {
    const double si = std::sqrt(obs.panels[i].area);
    for (int j = 0; j < B.cols(); ++j)
      B(i, j) *= si / std::sqrt(src.panels[j].area);
  }
  return B;
}

struct SubstrateKernel {
  MatrixXd Sdir, Simg;
  bool gap_warning = false;
  int n = 0;
};

SubstrateKernel substrate_kernel(const Mesh& body_mesh, double d,
                                 const SubdivOpts& opt) {
  if (!(d > 0.0))
    throw std::domain_error("energy_object_substrate: gap d must be positive");
  if (body_mesh.size() == 0)
    throw std::domain_error("energy_object_substrate: empty mesh");
  check_budget(body_mesh.size(), "energy_object_substrate");
  const Mesh placed =
      translate(body_mesh, Vector3d(0.0, 0.0, d - body_mesh.min_corner_z()));
  const Mesh image = mirror_image(placed);
  SubstrateKernel k;
  k.Sdir = scaled_block(placed, placed, true, opt);
  k.Simg = scaled_block(placed, image, false, opt);
  k.gap_warning = d < 0.02 * placed.diameter();
  k.n = body_mesh.size();
  return k;
}

}  // namespace

//------------------------------------------------------------------------------

Eigen::MatrixXd bem_block(const Mesh& obs, const Mesh& src, bool same_mesh,
                          const SubdivOpts& opt) {
  const int ni = obs.size(), nj = src.size();
  MatrixXd K(ni, nj);
  std::vector<double> lu(nj), lv(nj), diam(nj);
  for (int j = 0; j < nj; ++j) {
    const auto& c = src.panels[j].corners;
    lu[j] = 0.5 * ((c[1] - c[0]).norm() + (c[2] - c[3]).norm());
    lv[j] = 0.5 * ((c[3] - c[0]).norm() + (c[2] - c[1]).norm());
    diam[j] = std::max(lu[j], lv[j]);
  }
  for (int j = 0; j < nj; ++j) {
    const Panel& ps = src.panels[j];
    for (int i = 0; i < ni; ++i) {
      if (same_mesh && i == j) {
        K(i, j) = 0.0;
        continue;
      }
      const Panel& po = obs.panels[i];
      const Vector3d dv = po.centroid - ps.centroid;
      const double dist = dv.norm();
      if (dist < 1e-12) {
        std::ostringstream os;
        os << "bem: coincident panel centroids: '" << obs.label << "'[" << i
           << "] vs '" << src.label << "'[" << j << "]";
        throw std::runtime_error(os.str());
      }
      double val = po.normal.dot(dv) / (dist * dist * dist) * ps.area;
      if (dist < opt.eta * diam[j]) {
        const int ku = std::min(
            opt.kcap, std::max(1, (int)std::ceil(2.0 * lu[j] / dist)));
        const int kv = std::min(
            opt.kcap, std::max(1, (int)std::ceil(2.0 * lv[j] / dist)));
        if (ku > 1 || kv > 1) {
          const Vector3d q0 = ps.corners[0], q1 = ps.corners[1],
                         q2 = ps.corners[2], q3 = ps.corners[3];
          double acc = 0.0;
          for (int su = 0; su < ku; ++su) {
            const double u = (su + 0.5) / ku;
            for (int sv = 0; sv < kv; ++sv) {
              const double v = (sv + 0.5) / kv;
              const Vector3d p = q0 * ((1 - u) * (1 - v)) + q1 * (u * (1 - v)) +
                                 q2 * (u * v) + q3 * ((1 - u) * v);
              const Vector3d dd = po.centroid - p;
              const double r3 = std::pow(dd.squaredNorm(), 1.5);
              acc += po.normal.dot(dd) / r3;
            }
          }
          val = acc * ps.area / (ku * kv);
        }
      }
      K(i, j) = val;
    }
  }
  return K;
}

BemSystem assemble(const std::vector<const Mesh*>& meshes, const SubdivOpts& opt) {
  if (meshes.empty()) throw std::domain_error("assemble: no meshes given");
  BemSystem sys;
  sys.offset.resize(meshes.size() + 1, 0);
  for (size_t k = 0; k < meshes.size(); ++k) {
    if (meshes[k]->size() == 0) throw std::domain_error("assemble: empty mesh");
    sys.offset[k + 1] = sys.offset[k] + meshes[k]->size();
    if (meshes[k]->closed) ++sys.n_closed;
  }
  const int n = sys.offset.back();
  sys.S = MatrixXd::Zero(n, n);
  for (size_t a = 0; a < meshes.size(); ++a) {
    for (size_t b = 0; b < meshes.size(); ++b) {
      sys.S.block(sys.offset[a], sys.offset[b], meshes[a]->size(),
                  meshes[b]->size()) =
          scaled_block(*meshes[a], *meshes[b], a == b, opt);
    }
  }
  return sys;
}

//------------------------------------------------------------------------------

Spectrum spectrum(const std::vector<const Mesh*>& meshes, const SubdivOpts& opt) {
  BemSystem sys = assemble(meshes, opt);
  const int n = sys.size();
  check_budget(n, "spectrum");
  const Eigen::VectorXcd ev = eigenvalues_of(sys.S);
  Spectrum sp;
  sp.n_s.resize(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> ns = 0.5 * (1.0 - ev[i] / (2.0 * M_PI));
    sp.n_s[i] = ns.real();
    sp.max_imag = std::max(sp.max_imag, std::abs(ns.imag()));
    sum += ns.real();
  }
  std::sort(sp.n_s.data(), sp.n_s.data() + n);
  sp.sum_rule_defect = sum - 0.5 * n;
  return sp;
}

double mode_half_sum(const Eigen::MatrixXd& S) {
  const Eigen::VectorXcd ev = eigenvalues_of(S);
  std::complex<double> sum = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    const std::complex<double> ns = 0.5 * (1.0 - ev[i] / (2.0 * M_PI));
    if (ns.real() <= 0.0) {
      std::ostringstream os;
      os << "bem: nonpositive surface-mode eigenvalue n_s = " << ns.real()
         << "; the mesh is too coarse for this configuration - refine it or "
            "increase the separation";
      throw std::runtime_error(os.str());
    }
    sum += std::sqrt(ns);
  }
  return 0.5 * sum.real();
}

double mode_half_sum_pinned(const Eigen::MatrixXd& S, int n_interior) {
  if (n_interior < 0 || n_interior > S.rows())
    throw std::domain_error("mode_half_sum_pinned: bad interior-mode count");
  const Eigen::VectorXcd ev = eigenvalues_of(S);
  std::vector<double> ns(ev.size());
  for (int i = 0; i < ev.size(); ++i)
    ns[i] = 0.5 * (1.0 - ev[i].real() / (2.0 * M_PI));
  std::sort(ns.begin(), ns.end(),
            [](double x, double y) { return std::abs(x) < std::abs(y); });
  double sum = 0.0;
  for (size_t i = 0; i < ns.size(); ++i) {
    if (static_cast<int>(i) < n_interior) {
      if (std::abs(ns[i]) >= 0.05) {
        std::ostringstream os;
        os << "bem: expected " << n_interior
           << " near-zero interior mode(s), but |n_s| = " << std::abs(ns[i])
           << "; the mesh does not resolve the interior null mode";
        throw std::runtime_error(os.str());
      }
      continue;  // exact value 0 contributes nothing
    }
    if (ns[i] <= 0.0) {
      std::ostringstream os;
      os << "bem: nonpositive surface-mode eigenvalue n_s = " << ns[i]
         << "; the mesh is too coarse for this configuration - refine it or "
            "increase the separation";
      throw std::runtime_error(os.str());
    }
    sum += std::sqrt(ns[i]);
  }
  return 0.5 * sum;
}

PairEnergy energy_two_objects_same_drude(const Mesh& a, const Mesh& b,
                                         const Material& metal,
                                         const SubdivOpts& opt) {
  if (!metal.is_undamped_drude())
    throw std::invalid_argument(
        "energy_two_objects_same_drude: requires an undamped Drude metal");
  BemSystem sys = assemble({&a, &b}, opt);
  const int n = sys.size();
  check_budget(n, "energy_two_objects_same_drude");
  MatrixXd iso = sys.S;
  iso.block(sys.offset[0], sys.offset[1], a.size(), b.size()).setZero();
  iso.block(sys.offset[1], sys.offset[0], b.size(), a.size()).setZero();
  PairEnergy out;
  out.n_panels = n;
  out.U_reduced =
      mode_half_sum_pinned(sys.S, sys.n_closed) - mode_half_sum_pinned(iso, sys.n_closed);
  out.U = hbar * metal.omega_p * out.U_reduced;
  return out;
}

//------------------------------------------------------------------------------

SubstrateEnergy energy_object_substrate(const Mesh& body_mesh, const Material& body,
                                        const Material& substrate,
                                        const Material& ambient, double d,
                                        const SubdivOpts& opt,
                                        const QuadSpec& quad) {
  const SubstrateKernel k = substrate_kernel(body_mesh, d, opt);
  const int n = k.n;
  const MatrixXd eye = MatrixXd::Identity(n, n);
  auto integrand = [&](double xi) {
    const double u = spectral_u(ambient, body, xi);
    const double fc = contrast_factor(substrate, ambient, xi);
    const double lam = 2.0 * M_PI * (1.0 - 2.0 * u);
    const auto [ld0, s0] = logdet_sign(lam * eye - k.Sdir);
    if (!(s0 > 0.0)) {
      std::ostringstream os;
      os << "energy_object_substrate: isolated-body determinant nonpositive at "
            "xi = "
         << xi << "; the mesh is too coarse";
      throw std::runtime_error(os.str());
    }
    const auto [ld1, s1] = logdet_sign(lam * eye - k.Sdir + fc * k.Simg);
    if (!(s1 > 0.0)) {
      std::ostringstream os;
      os << "energy_object_substrate: coupled determinant nonpositive at xi = "
         << xi << "; refine the mesh or increase the gap";
      throw std::runtime_error(os.str());
    }
    return ld1 - ld0;
  };
  SubstrateEnergy out;
  out.omega_ref = reference_omega(body, substrate);
  const QuadResult q = integrate_xi(integrand, out.omega_ref, quad);
  out.U = hbar / (2.0 * M_PI) * q.value;
  out.U_reduced = out.U / (hbar * out.omega_ref);
  out.n_panels = n;
  out.nodes_used = q.nodes_used;
  out.converged = q.converged;
  out.gap_warning = k.gap_warning;
  return out;
}

SubstrateForce force_object_substrate(const Mesh& body_mesh, const Material& body,
                                      const Material& substrate,
                                      const Material& ambient, double d,
                                      double h_rel, const SubdivOpts& opt,
                                      const QuadSpec& quad) {
  if (!(h_rel > 0.0 && h_rel < 1.0))
    throw std::domain_error("force_object_substrate: h_rel in (0, 1) required");
  const double h = h_rel * d;
  const SubstrateEnergy up =
      energy_object_substrate(body_mesh, body, substrate, ambient, d + h, opt, quad);
  const SubstrateEnergy dn =
      energy_object_substrate(body_mesh, body, substrate, ambient, d - h, opt, quad);
  SubstrateForce out;
  out.F = (up.U - dn.U) / (2.0 * h);
  out.F_reduced = (up.U_reduced - dn.U_reduced) / (2.0 * h);
  out.omega_ref = up.omega_ref;
  out.gap_warning = dn.gap_warning;
  return out;
}

SubstrateEnergy energy_object_substrate_same_drude(const Mesh& body_mesh,
                                                   const Material& metal, double d,
                                                   const SubdivOpts& opt) {
  if (!metal.is_undamped_drude())
    throw std::invalid_argument(
        "energy_object_substrate_same_drude: requires an undamped Drude metal");
  const SubstrateKernel k = substrate_kernel(body_mesh, d, opt);
  const int n = k.n;
  check_budget(2 * n, "energy_object_substrate_same_drude (companion)");
  MatrixXd comp = MatrixXd::Zero(2 * n, 2 * n);
  comp.topLeftCorner(n, n) = k.Sdir / (2.0 * M_PI);
  comp.topRightCorner(n, n) = -k.Simg / (2.0 * M_PI);
  comp.bottomLeftCorner(n, n) = MatrixXd::Identity(n, n);
  const Eigen::VectorXcd ws = eigenvalues_of(comp);
  std::complex<double> conf = 0.0;
  for (int i = 0; i < 2 * n; ++i) {
    const std::complex<double> u = 0.5 * (1.0 - ws[i]);
    if (u.real() <= 0.0) {
      std::ostringstream os;
      os << "energy_object_substrate_same_drude: nonpositive mode u = "
         << u.real() << "; refine the mesh or increase the gap";
      throw std::runtime_error(os.str());
    }
    conf += std::sqrt(u);
  }
  const Eigen::VectorXcd ms = eigenvalues_of(k.Sdir);
  std::complex<double> ref = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> ns = 0.5 * (1.0 - ms[i] / (2.0 * M_PI));
    if (ns.real() <= 0.0)
      throw std::runtime_error(
          "energy_object_substrate_same_drude: nonpositive isolated mode");
    ref += std::sqrt(ns);
  }
  ref += (double)n * std::sqrt(0.5);
  SubstrateEnergy out;
  out.omega_ref = metal.omega_p;
  out.U_reduced = 0.5 * (conf.real() - ref.real());
  out.U = hbar * metal.omega_p * out.U_reduced;
  out.n_panels = n;
  out.gap_warning = k.gap_warning;
  return out;
}

}  // namespace vdw
