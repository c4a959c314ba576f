#include "vdwshape/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vdw {

namespace {

using Eigen::Matrix3d;
using Eigen::Vector2d;
using Eigen::Vector3d;

//------------------------------------------------------------------------------
// planar quad at height z with normal (0,0,sgn); pts traversed in order

Panel polyq(const std::array<Vector2d, 4>& p, double z, double sgn) {
  double s = 0.0, cx = 0.0, cy = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Vector2d& a = p[k];
    const Vector2d& b = p[(k + 1) % 4];
    const double cr = a.x() * b.y() - b.x() * a.y();
    s += cr;
    cx += (a.x() + b.x()) * cr;
    cy += (a.y() + b.y()) * cr;
  }
  Panel q;
  q.area = 0.5 * std::abs(s);
  q.centroid = Vector3d(cx / (3.0 * s), cy / (3.0 * s), z);
  q.normal = Vector3d(0.0, 0.0, sgn);
  for (int k = 0; k < 4; ++k) q.corners[k] = Vector3d(p[k].x(), p[k].y(), z);
  return q;
}

// signed solid angle of a spherical triangle on the unit sphere

double tri_omega(const Vector3d& a, const Vector3d& b, const Vector3d& c) {
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

// n edge positions in [lo, hi], panel widths geometric toward both ends

std::vector<double> geo_edges(double lo, double hi, int n, double ratio) {
  std::vector<double> w(n);
  double tot = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = std::pow(ratio, std::min(i, n - 1 - i));
    tot += w[i];
  }
  std::vector<double> e(n + 1);
  e[0] = lo;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += w[i] / tot;
    e[i + 1] = lo + (hi - lo) * acc;
  }
  e[n] = hi;
  return e;
}

// O-grid cap at height z: n_core^2 square core plus a collar of 4*n_core
// boundary columns, n_rad layers graded toward the rim

void ogrid_cap(std::vector<Panel>& out, double R, int n_core, int n_rad, double z,
               double sgn, double grade) {
  const double a = 0.5 * R;
  for (int i = 0; i < n_core; ++i) {
    for (int j = 0; j < n_core; ++j) {
      const double u0 = -a + 2.0 * a * i / n_core;
      const double u1 = -a + 2.0 * a * (i + 1) / n_core;
      const double v0 = -a + 2.0 * a * j / n_core;
      const double v1 = -a + 2.0 * a * (j + 1) / n_core;
      out.push_back(polyq({Vector2d(u0, v0), Vector2d(u1, v0), Vector2d(u1, v1),
                           Vector2d(u0, v1)},
                          z, sgn));
    }
  }
  const int M = 4 * n_core;
  auto B = [&](int k) -> Vector2d {
    k = ((k % M) + M) % M;
    const int side = k / n_core;
    const double t = -a + 2.0 * a * (k % n_core) / n_core;
    switch (side) {
      case 0: return Vector2d(t, -a);
      case 1: return Vector2d(a, t);
      case 2: return Vector2d(-t, a);
      default: return Vector2d(-a, -t);
    }
  };
  auto C = [&](int k) -> Vector2d {
    const Vector2d b = B(k);
    return R * b / b.norm();
  };
  std::vector<double> ss(n_rad + 1, 0.0);
  {
    std::vector<double> w(n_rad);
    double tot = 0.0;
    for (int i = 0; i < n_rad; ++i) {
      w[i] = std::pow(grade, n_rad - 1 - i);
      tot += w[i];
    }
    for (int i = 0; i < n_rad; ++i) ss[i + 1] = ss[i] + w[i] / tot;
    ss[n_rad] = 1.0;
  }
  for (int k = 0; k < M; ++k) {
    const Vector2d bk = B(k), bk1 = B(k + 1), ck = C(k), ck1 = C(k + 1);
    for (int j = 0; j < n_rad; ++j) {
      const double s0 = ss[j], s1 = ss[j + 1];
      const Vector2d p00 = bk + s0 * (ck - bk);
      const Vector2d p10 = bk1 + s0 * (ck1 - bk1);
      const Vector2d p11 = bk1 + s1 * (ck1 - bk1);
      const Vector2d p01 = bk + s1 * (ck - bk);
      out.push_back(polyq({p00, p10, p11, p01}, z, sgn));
    }
  }
}

Matrix3d rodrigues(const Vector3d& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw std::domain_error("transform: rotation axis must be nonzero");
  const Vector3d k = axis / n;
  Matrix3d kx;
  kx << 0.0, -k.z(), k.y(), k.z(), 0.0, -k.x(), -k.y(), k.x(), 0.0;
  return Matrix3d::Identity() + std::sin(angle) * kx +
         (1.0 - std::cos(angle)) * (kx * kx);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

//------------------------------------------------------------------------------

double Mesh::area() const {
  double s = 0.0;
  for (const Panel& p : panels) s += p.area;
  return s;
}

double Mesh::volume() const {
  double s = 0.0;
  for (const Panel& p : panels) s += p.normal.dot(p.centroid) * p.area;
  return s / 3.0;
}

double Mesh::closure_defect() const {
  Vector3d s = Vector3d::Zero();
  for (const Panel& p : panels) s += p.normal * p.area;
  return s.norm();
}

double Mesh::min_corner_z() const {
  double z = std::numeric_limits<double>::infinity();
  for (const Panel& p : panels)
    for (const Vector3d& c : p.corners) z = std::min(z, c.z());
  return z;
}

double Mesh::max_corner_z() const {
  double z = -std::numeric_limits<double>::infinity();
  for (const Panel& p : panels)
    for (const Vector3d& c : p.corners) z = std::max(z, c.z());
  return z;
}

double Mesh::diameter() const {
  if (panels.empty()) return 0.0;
  Vector3d lo = Vector3d::Constant(std::numeric_limits<double>::infinity());
  Vector3d hi = -lo;
  for (const Panel& p : panels) {
    for (const Vector3d& c : p.corners) {
      lo = lo.cwiseMin(c);
      hi = hi.cwiseMax(c);
    }
  }
  return (hi - lo).norm();
}

//------------------------------------------------------------------------------

Mesh gen_sphere(double R, int target_panels) {
  if (!(R > 0.0)) throw std::domain_error("gen_sphere: R must be positive");
  if (target_panels < 24)
    throw std::domain_error("gen_sphere: at least 24 panels required");
  const int n = std::max(2, (int)std::lround(std::sqrt(target_panels / 6.0)));
  std::vector<double> tt(n + 1);
  for (int i = 0; i <= n; ++i)
    tt[i] = std::tan(-M_PI / 4.0 + (M_PI / 2.0) * i / n);
  Mesh m;
  m.label = "sphere";
  m.panels.reserve(6 * n * n);
  for (int ax = 0; ax < 3; ++ax) {
    for (int s : {+1, -1}) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double uv[4][2] = {{tt[i], tt[j]},
                                   {tt[i + 1], tt[j]},
                                   {tt[i + 1], tt[j + 1]},
                                   {tt[i], tt[j + 1]}};
          std::array<Vector3d, 4> dir;
          for (int k = 0; k < 4; ++k) {
            Vector3d c = Vector3d::Zero();
            c[ax] = s;
            c[(ax + 1) % 3] = uv[k][0];
            c[(ax + 2) % 3] = uv[k][1];
            dir[k] = c.normalized();
          }
          const double om = std::abs(tri_omega(dir[0], dir[1], dir[2])) +
                            std::abs(tri_omega(dir[0], dir[2], dir[3]));
          Panel p;
          Vector3d cen = (dir[0] + dir[1] + dir[2] + dir[3]).normalized();
          p.centroid = R * cen;
          p.normal = cen;
          p.area = om * R * R;
          for (int k = 0; k < 4; ++k) p.corners[k] = R * dir[k];
          m.panels.push_back(p);
        }
      }
    }
  }
  return m;
}

Mesh gen_box_faces(double lx, double ly, double lz, const BoxFaces& f) {
  if (!(lx > 0.0 && ly > 0.0 && lz > 0.0))
    throw std::domain_error("gen_box: dimensions must be positive");
  const double dims[3] = {lx, ly, lz};
  struct FaceDef {
    int ax, a1, a2, s;
    FaceCounts fc;
  };
  const FaceDef faces[6] = {{0, 1, 2, +1, f.xp}, {0, 1, 2, -1, f.xm},
                            {1, 0, 2, +1, f.yp}, {1, 0, 2, -1, f.ym},
                            {2, 0, 1, +1, f.zp}, {2, 0, 1, -1, f.zm}};
  Mesh m;
  m.label = "box";
  for (const FaceDef& fd : faces) {
    const int n1 = fd.fc.n1, n2 = fd.fc.n2;
    if (n1 < 1 || n2 < 1)
      throw std::domain_error("gen_box: face counts must be >= 1");
    const double d1 = dims[fd.a1], d2 = dims[fd.a2];
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        const double u0 = -d1 / 2 + i * d1 / n1, u1 = u0 + d1 / n1;
        const double v0 = -d2 / 2 + j * d2 / n2, v1 = v0 + d2 / n2;
        const double uv[4][2] = {{u0, v0}, {u1, v0}, {u1, v1}, {u0, v1}};
        Panel p;
        p.centroid = Vector3d::Zero();
        for (int k = 0; k < 4; ++k) {
          Vector3d c = Vector3d::Zero();
          c[fd.ax] = fd.s * dims[fd.ax] / 2;
          c[fd.a1] = uv[k][0];
          c[fd.a2] = uv[k][1];
          p.corners[k] = c;
          p.centroid += 0.25 * c;
        }
        p.normal = Vector3d::Zero();
        p.normal[fd.ax] = fd.s;
        p.area = (d1 / n1) * (d2 / n2);
        m.panels.push_back(p);
      }
    }
  }
  return m;
}

Mesh gen_box(double lx, double ly, double lz, int target_panels) {
  if (target_panels < 1)
    throw std::domain_error("gen_box: target panel count must be positive");
  if (!(lx > 0.0 && ly > 0.0 && lz > 0.0))
    throw std::domain_error("gen_box: dimensions must be positive");
  const double area = 2.0 * (lx * ly + ly * lz + lz * lx);
  const double h = std::sqrt(area / target_panels);
  auto cnt = [&](double d) { return std::max(1, (int)std::lround(d / h)); };
  BoxFaces f;
  f.xp = f.xm = FaceCounts{cnt(ly), cnt(lz)};
  f.yp = f.ym = FaceCounts{cnt(lx), cnt(lz)};
  f.zp = f.zm = FaceCounts{cnt(lx), cnt(ly)};
  return gen_box_faces(lx, ly, lz, f);
}

Mesh gen_cylinder_layout(double R, double length, int n_core, int n_rad, int nx,
                         double grade) {
  if (!(R > 0.0 && length > 0.0))
    throw std::domain_error("gen_cylinder: R and length must be positive");
  if (n_core < 2 || n_rad < 1 || nx < 1)
    throw std::domain_error("gen_cylinder: need n_core >= 2, n_rad >= 1, nx >= 1");
  if (!(grade >= 1.0))
    throw std::domain_error("gen_cylinder: grade must be >= 1");
  Mesh m;
  m.label = "cylinder";
  ogrid_cap(m.panels, R, n_core, n_rad, +length / 2, +1.0, grade);
  ogrid_cap(m.panels, R, n_core, n_rad, -length / 2, -1.0, grade);
  const int M = 4 * n_core;
  const std::vector<double> ze = geo_edges(-length / 2, length / 2, nx, grade);
  for (int p = 0; p < M; ++p) {
    const double ph0 = 2.0 * M_PI * p / M, ph1 = 2.0 * M_PI * (p + 1) / M;
    const double phc = 0.5 * (ph0 + ph1);
    for (int i = 0; i < nx; ++i) {
      const double z0 = ze[i], z1 = ze[i + 1];
      Panel q;
      q.centroid = Vector3d(R * std::cos(phc), R * std::sin(phc), 0.5 * (z0 + z1));
      q.normal = Vector3d(std::cos(phc), std::sin(phc), 0.0);
      q.area = R * (ph1 - ph0) * (z1 - z0);
      q.corners[0] = Vector3d(R * std::cos(ph0), R * std::sin(ph0), z0);
      q.corners[1] = Vector3d(R * std::cos(ph1), R * std::sin(ph1), z0);
      q.corners[2] = Vector3d(R * std::cos(ph1), R * std::sin(ph1), z1);
      q.corners[3] = Vector3d(R * std::cos(ph0), R * std::sin(ph0), z1);
      m.panels.push_back(q);
    }
  }
  return m;
}

Mesh gen_cylinder(CrossSection cs, double size, double length, int target_panels) {
  if (cs == CrossSection::Square) {
    Mesh m = gen_box(size, size, length, target_panels);
    m.label = "square-cylinder";
    return m;
  }
  const double R = size;
  if (!(R > 0.0 && length > 0.0))
    throw std::domain_error("gen_cylinder: R and length must be positive");
  if (target_panels < 24)
    throw std::domain_error("gen_cylinder: at least 24 panels required");
  const double area = 2.0 * M_PI * R * R + 2.0 * M_PI * R * length;
  const double h = std::sqrt(area / target_panels);
  const int n_core = std::max(2, (int)std::lround(R / h));
  const int n_rad = std::max(1, (int)std::lround(0.45 * R / h));
  const int caps = 2 * (n_core * n_core + 4 * n_core * n_rad);
  const int nx = std::max(
      1, (int)std::lround((target_panels - caps) / (4.0 * n_core)));
  return gen_cylinder_layout(R, length, n_core, n_rad, nx, 1.0);
}

Mesh gen_tube_axial(double R, double length, int nphi, int nx, int ncap_r,
                    double phi_face, double grade) {
  if (!(R > 0.0 && length > 0.0))
    throw std::domain_error("gen_tube_axial: R and length must be positive");
  if (nphi < 4 || nx < 1 || ncap_r < 1)
    throw std::domain_error("gen_tube_axial: need nphi >= 4, nx >= 1, ncap_r >= 1");
  Mesh m;
  m.label = "tube";
  std::vector<double> phi(nphi + 1);
  for (int i = 0; i <= nphi; ++i) {
    const double s = -1.0 + 2.0 * i / nphi;
    phi[i] = phi_face + (grade < 1e-8 ? M_PI * s
                                      : M_PI * std::sinh(grade * s) / std::sinh(grade));
  }
  for (int i = 0; i < nphi; ++i) {
    const double p0 = phi[i], p1 = phi[i + 1], pc = 0.5 * (p0 + p1);
    for (int j = 0; j < nx; ++j) {
      const double x0 = -length / 2 + length * j / nx;
      const double x1 = -length / 2 + length * (j + 1) / nx;
      Panel q;
      q.centroid = Vector3d(0.5 * (x0 + x1), R * std::cos(pc), R * std::sin(pc));
      q.normal = Vector3d(0.0, std::cos(pc), std::sin(pc));
      q.area = R * (p1 - p0) * (x1 - x0);
      q.corners[0] = Vector3d(x0, R * std::cos(p0), R * std::sin(p0));
      q.corners[1] = Vector3d(x1, R * std::cos(p0), R * std::sin(p0));
      q.corners[2] = Vector3d(x1, R * std::cos(p1), R * std::sin(p1));
      q.corners[3] = Vector3d(x0, R * std::cos(p1), R * std::sin(p1));
      m.panels.push_back(q);
    }
  }
  std::vector<double> re(ncap_r + 1);
  for (int k = 0; k <= ncap_r; ++k) re[k] = R * std::sqrt((double)k / ncap_r);
  for (double sx : {+1.0, -1.0}) {
    for (int k = 0; k < ncap_r; ++k) {
      const double r0 = re[k], r1 = re[k + 1];
      const double rc = (2.0 / 3.0) * (r1 * r1 * r1 - r0 * r0 * r0) /
                        (r1 * r1 - r0 * r0);
      const int nph = std::max(4, (int)std::lround(2.0 * M_PI * rc / (r1 - r0)));
      for (int i = 0; i < nph; ++i) {
        const double q0 = 2.0 * M_PI * i / nph, q1 = 2.0 * M_PI * (i + 1) / nph;
        const double qc = 0.5 * (q0 + q1);
        Panel q;
        q.centroid = Vector3d(sx * length / 2, rc * std::cos(qc), rc * std::sin(qc));
        q.normal = Vector3d(sx, 0.0, 0.0);
        q.area = 0.5 * (q1 - q0) * (r1 * r1 - r0 * r0);
        q.corners[0] = Vector3d(sx * length / 2, r0 * std::cos(q0), r0 * std::sin(q0));
        q.corners[1] = Vector3d(sx * length / 2, r1 * std::cos(q0), r1 * std::sin(q0));
        q.corners[2] = Vector3d(sx * length / 2, r1 * std::cos(q1), r1 * std::sin(q1));
        q.corners[3] = Vector3d(sx * length / 2, r0 * std::cos(q1), r0 * std::sin(q1));
        m.panels.push_back(q);
      }
    }
  }
  return m;
}

//------------------------------------------------------------------------------

Mesh transform(const Mesh& m, const Eigen::Matrix3d& rot,
               const Eigen::Vector3d& translation) {
  const double dev =
      (rot * rot.transpose() - Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (!(dev < 1e-10))
    throw std::domain_error("transform: rotation matrix is not orthogonal");
  Mesh out = m;
  for (Panel& p : out.panels) {
    p.centroid = rot * p.centroid + translation;
    p.normal = rot * p.normal;
    for (Vector3d& c : p.corners) c = rot * c + translation;
  }
  return out;
}

Mesh transform(const Mesh& m, const Eigen::Vector3d& axis, double angle,
               const Eigen::Vector3d& translation) {
  return transform(m, rodrigues(axis, angle), translation);
}

Mesh translate(const Mesh& m, const Eigen::Vector3d& translation) {
  Mesh out = m;
  for (Panel& p : out.panels) {
    p.centroid += translation;
    for (Vector3d& c : p.corners) c += translation;
  }
  return out;
}

Mesh mirror_image(const Mesh& m) {
  const double lo = m.min_corner_z(), hi = m.max_corner_z();
  if (!(lo > 0.0) && !(hi < 0.0))
    throw std::domain_error("mirror_image: mesh touches or straddles the z = 0 plane");
  Mesh out = m;
  for (Panel& p : out.panels) {
    p.centroid.z() = -p.centroid.z();
    p.normal.z() = -p.normal.z();
    for (Vector3d& c : p.corners) c.z() = -c.z();
  }
  out.is_image = !m.is_image;
  return out;
}

//------------------------------------------------------------------------------

void save_mesh(const Mesh& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_mesh: cannot open '" + path + "'");
  f << "# vdwshape mesh\n";
  f << "# label: " << m.label << "\n";
  f << "# closed: " << (m.closed ? 1 : 0) << "\n";
  f << "# columns: x y z nx ny nz area\n";
  f << m.size() << "\n";
  for (const Panel& p : m.panels) {
    f << fmt17(p.centroid.x()) << ' ' << fmt17(p.centroid.y()) << ' '
      << fmt17(p.centroid.z()) << ' ' << fmt17(p.normal.x()) << ' '
      << fmt17(p.normal.y()) << ' ' << fmt17(p.normal.z()) << ' '
      << fmt17(p.area) << "\n";
  }
  if (!f) throw std::runtime_error("save_mesh: write to '" + path + "' failed");
}

Mesh load_mesh(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_mesh: cannot open '" + path + "'");
  Mesh m;
  m.label = "mesh";
  std::string line;
  int lineno = 0;
  long declared = -1;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("load_mesh: " + path + " line " +
                             std::to_string(lineno) + ": " + what);
  };
  while (std::getline(f, line)) {
    ++lineno;
    std::string t = line;
    const auto b = t.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    t = t.substr(b);
    if (t[0] == '#') {
      if (t.rfind("# label:", 0) == 0) {
        std::string v = t.substr(8);
        const auto p0 = v.find_first_not_of(" \t");
        const auto p1 = v.find_last_not_of(" \t\r");
        if (p0 != std::string::npos) m.label = v.substr(p0, p1 - p0 + 1);
      } else if (t.rfind("# closed:", 0) == 0) {
        m.closed = t.find('1', 9) != std::string::npos;
      }
      continue;
    }
    if (declared < 0) {
      std::istringstream is(t);
      if (!(is >> declared) || declared < 0) fail("expected a panel count");
      std::string extra;
      if (is >> extra) fail("expected a panel count alone on the line");
      continue;
    }
    if ((long)m.panels.size() >= declared) fail("more panel rows than declared");
    std::istringstream is(t);
    double x, y, z, nx, ny, nz, a;
    if (!(is >> x >> y >> z >> nx >> ny >> nz >> a))
      fail("expected 7 numeric fields: x y z nx ny nz area");
    if (!(a > 0.0)) fail("panel area must be positive");
    Panel p;
    p.centroid = Vector3d(x, y, z);
    p.normal = Vector3d(nx, ny, nz);
    const double nn = p.normal.norm();
    if (!(nn > 0.0)) fail("panel normal must be nonzero");
    p.normal /= nn;
    p.area = a;
    const Vector3d e =
        std::abs(p.normal.x()) < 0.9 ? Vector3d::UnitX() : Vector3d::UnitY();
    const Vector3d t1 = p.normal.cross(e).normalized();
    const Vector3d t2 = p.normal.cross(t1);
    const double hh = 0.5 * std::sqrt(a);
    p.corners[0] = p.centroid - hh * t1 - hh * t2;
    p.corners[1] = p.centroid + hh * t1 - hh * t2;
    p.corners[2] = p.centroid + hh * t1 + hh * t2;
    p.corners[3] = p.centroid - hh * t1 + hh * t2;
    m.panels.push_back(p);
  }
  if (declared < 0) {
    lineno = 0;
    fail("no panel count found");
  }
  if ((long)m.panels.size() != declared) {
    fail("declared " + std::to_string(declared) + " panels, found " +
         std::to_string(m.panels.size()));
  }
  return m;
}

}  // namespace vdw
