#pragma once
#include <functional>
#include <vector>

namespace vdw {

struct GaussLegendre {
  std::vector<double> x, w;  // nodes/weights on (-1, 1)
};

// cached Gauss-Legendre rule
const GaussLegendre& gauss_legendre(int n);

// nodes/weights for ∫_0^∞ f(xi) dxi under xi = omega0 (1+t)/(1-t)
struct XiGrid {
  std::vector<double> xi, w;
};
XiGrid xi_grid(double omega0, int n);

struct QuadSpec {
  double omega0 = 0.0;     // 0: pick from materials
  int nodes = 64;
  double tol_rel = 1e-6;
  int max_nodes = 512;
  bool adaptive = true;    // double node count until tol_rel or max_nodes
};

struct QuadResult {
  double value = 0.0;
  int nodes_used = 0;
  double achieved_rel = 0.0;
  bool converged = true;
};

// integrate f over (0, inf) with the mapped rule; doubling per QuadSpec
QuadResult integrate_xi(const std::function<double(double)>& f, double omega0,
                        const QuadSpec& spec);

} // namespace vdw
