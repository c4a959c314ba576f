#pragma once

#include <Eigen/Dense>

#include <vector>

#include "vdwshape/dielectric.hpp"
#include "vdwshape/mesh.hpp"
#include "vdwshape/quadrature.hpp"

namespace vdw {

// Dense eigen/determinant work caps the combined panel count.
inline constexpr int kPanelBudget = 2200;

//------------------------------------------------------------------------------
// Near-field subdivision of source panels: a panel within eta source diameters
// of the observation point is sampled on an anisotropic ku x kv midpoint grid
// (bilinear in the stored corners), ku, kv <= kcap.

struct SubdivOpts {
  double eta = 4.0;
  int kcap = 24;
};

// Geometric coupling block: normal field at obs centroids from unit surface
// charge on src panels, R_ij = n_i.(r_i - r_j) a_j / |r_i - r_j|^3.
// same_mesh forces a zero diagonal.  Coincident centroids are a geometry error.
Eigen::MatrixXd bem_block(const Mesh& obs, const Mesh& src, bool same_mesh,
                          const SubdivOpts& opt = {});

//------------------------------------------------------------------------------
// Assembled multi-object system with the symmetrized kernel
// S = D^{1/2} R D^{-1/2}, D = diag(panel areas).

struct BemSystem {
  Eigen::MatrixXd S;
  std::vector<int> offset;  // block starts; offset.back() == total panels
  int n_closed = 0;         // closed components (one interior mode each)
  int size() const { return offset.back(); }
};

BemSystem assemble(const std::vector<const Mesh*>& meshes,
                   const SubdivOpts& opt = {});

//------------------------------------------------------------------------------
// Depolarization spectrum n_s = (1 - m_s/2pi)/2 of the assembled kernel.
// Sum rule: sum n_s = N/2 (the kernel is traceless).

struct Spectrum {
  Eigen::VectorXd n_s;          // real parts, ascending
  double max_imag = 0.0;        // largest |Im n_s|
  double sum_rule_defect = 0.0; // sum n_s - N/2
};

Spectrum spectrum(const std::vector<const Mesh*>& meshes,
                  const SubdivOpts& opt = {});

// (1/2) sum_s sqrt(n_s) over the modes of S; the zero-point half sum entering
// the same-metal mode-sum energies.  Throws if any Re n_s <= 0.
double mode_half_sum(const Eigen::MatrixXd& S);

// Same half sum with the interior modes pinned to their exact value.  A closed
// surface carries one exact n_s = 0 mode (constant charge; a solid angle of
// 2pi), preserved under coupling between free bodies; discretization scatters
// it to +-O(h) and can push it below zero.  The n_interior eigenvalues of
// smallest |n_s| are therefore dropped (each must satisfy |n_s| < 0.05, the
// rest must be positive).
double mode_half_sum_pinned(const Eigen::MatrixXd& S, int n_interior);

//------------------------------------------------------------------------------
// Two bodies of the same undamped Drude metal in vacuum:
// U = hbar omega_p [H(config) - H(reference)], H = mode_half_sum, where the
// reference is the same system with the cross-coupling blocks zeroed, so the
// energy vanishes identically when the bodies decouple.

struct PairEnergy {
  double U = 0.0;          // joules
  double U_reduced = 0.0;  // units of hbar omega_p
  int n_panels = 0;
};

PairEnergy energy_two_objects_same_drude(const Mesh& a, const Mesh& b,
                                         const Material& metal,
                                         const SubdivOpts& opt = {});

//------------------------------------------------------------------------------
// Body above a half-space substrate (surface at z = 0, body gap d > 0 measured
// to its lowest corner).  General dispersive materials via the imaginary-axis
// determinant route:
//   U = (hbar/2pi) Int dxi [logdet(L I - Sdir + f_c Simg) - logdet(L I - Sdir)],
// L(xi) = 2pi (1 - 2u(xi)).

struct SubstrateEnergy {
  double U = 0.0;          // joules
  double U_reduced = 0.0;  // units of hbar omega_ref
  double omega_ref = 0.0;
  int n_panels = 0;
  int nodes_used = 0;
  bool converged = true;
  bool gap_warning = false;  // d below 2% of the body diameter
};

SubstrateEnergy energy_object_substrate(const Mesh& body_mesh, const Material& body,
                                        const Material& substrate,
                                        const Material& ambient, double d,
                                        const SubdivOpts& opt = {},
                                        const QuadSpec& quad = {});

// F = +dU/dd by central difference; F > 0 is attraction toward the substrate.
struct SubstrateForce {
  double F = 0.0;          // joules per mesh length unit
  double F_reduced = 0.0;  // units of hbar omega_ref per mesh length unit
  double omega_ref = 0.0;
  bool gap_warning = false;
};

SubstrateForce force_object_substrate(const Mesh& body_mesh, const Material& body,
                                      const Material& substrate,
                                      const Material& ambient, double d,
                                      double h_rel = 1e-3,
                                      const SubdivOpts& opt = {},
                                      const QuadSpec& quad = {});

// Same-metal body and substrate, undamped Drude: direct mode sum through the
// quadratic pencil det[2pi w^2 I - w Sdir + Simg] = 0, w = 1 - 2u, solved via
// its companion linearization.  Agrees with the determinant route to
// quadrature accuracy.
SubstrateEnergy energy_object_substrate_same_drude(const Mesh& body_mesh,
                                                   const Material& metal, double d,
                                                   const SubdivOpts& opt = {});

}  // namespace vdw
