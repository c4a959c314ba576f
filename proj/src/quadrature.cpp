#include "vdwshape/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace vdw {

static GaussLegendre compute_gl(int n) {
  if (n < 1) throw std::domain_error("gauss_legendre: n >= 1 required");
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-like initial guess; converges in a few steps
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.x[n - 1 - i] = x;
    gl.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return gl;
}

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

XiGrid xi_grid(double omega0, int n) {
  if (omega0 <= 0.0) throw std::domain_error("xi_grid: omega0 > 0 required");
  const auto& gl = gauss_legendre(n);
  XiGrid g;
  g.xi.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = gl.x[i];
    g.xi[i] = omega0 * (1.0 + t) / (1.0 - t);
    g.w[i] = gl.w[i] * 2.0 * omega0 / ((1.0 - t) * (1.0 - t));
  }
  return g;
}

QuadResult integrate_xi(const std::function<double(double)>& f, double omega0,
                        const QuadSpec& spec) {
  const double w0 = spec.omega0 > 0.0 ? spec.omega0 : omega0;
  auto eval = [&](int n) {
    const XiGrid g = xi_grid(w0, n);
    double s = 0.0;
    for (size_t i = 0; i < g.xi.size(); ++i) s += g.w[i] * f(g.xi[i]);
    return s;
  };
  QuadResult r;
  r.value = eval(spec.nodes);
  r.nodes_used = spec.nodes;
  if (!spec.adaptive) {
    r.achieved_rel = 0.0;
    return r;
  }
  for (int n = 2 * spec.nodes; n <= spec.max_nodes; n *= 2) {
    const double next = eval(n);
    const double scale = std::max(std::abs(next), 1e-300);
    r.achieved_rel = std::abs(next - r.value) / scale;
    r.value = next;
    r.nodes_used = n;
    if (r.achieved_rel < spec.tol_rel) return r;
  }
  r.converged = r.achieved_rel < spec.tol_rel;
  return r;
}

} // namespace vdw
