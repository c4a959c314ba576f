#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace vdw {

//------------------------------------------------------------------------------
// Quad surface panels.  Corners are stored alongside centroid/normal/area and
// drive the near-field subdivision of the boundary kernel; degenerate quads
// (repeated corners) are allowed and treated as triangles.

struct Panel {
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double area = 0.0;
  std::array<Eigen::Vector3d, 4> corners{};
};

struct Mesh {
  std::vector<Panel> panels;
  std::string label = "mesh";
  bool closed = true;     // closed surface with outward normals
  bool is_image = false;  // produced by mirror_image()

  int size() const { return static_cast<int>(panels.size()); }
  double area() const;
  double volume() const;          // (1/3) sum (r.n) a; requires closed+outward
  double closure_defect() const;  // |sum n a|, ~0 for a closed mesh
  double min_corner_z() const;
  double max_corner_z() const;
  double diameter() const;        // corner bounding-box diagonal
};

//------------------------------------------------------------------------------
// Generators.  All bodies are centered at the origin; cylinders have their
// axis along z except gen_tube_axial (axis along x).

enum class CrossSection { Circle, Square };

// Cubed sphere: 6 n^2 panels, equiangular grid, exact spherical areas.
// target_panels < 24 is rejected.
Mesh gen_sphere(double R, int target_panels);

// Axis-aligned box, uniform panels sized from the target count.
Mesh gen_box(double lx, double ly, double lz, int target_panels);

struct FaceCounts {
  int n1 = 1;
  int n2 = 1;
};

// Per-face panel counts.  +x/-x: n1 along y, n2 along z; +y/-y: n1 along x,
// n2 along z; +z/-z: n1 along x, n2 along y.
struct BoxFaces {
  FaceCounts xp, xm, yp, ym, zp, zm;
};

Mesh gen_box_faces(double lx, double ly, double lz, const BoxFaces& f);

// Circular cylinder: O-grid caps (square core + boundary-matched collar, no
// degenerate center) and an axial tube.  Square delegates to gen_box.
Mesh gen_cylinder(CrossSection cs, double size, double length, int target_panels);

// Explicit O-grid layout; collar layers and tube rows geometrically graded
// toward the rims by `grade` (1 = uniform).
Mesh gen_cylinder_layout(double R, double length, int n_core, int n_rad, int nx,
                         double grade);

// Circular cylinder along x with sinh-graded azimuthal panels concentrated at
// phi_face and equal-area polar-ring caps.  grade -> 0 gives uniform phi.
Mesh gen_tube_axial(double R, double length, int nphi, int nx, int ncap_r,
                    double phi_face, double grade);

//------------------------------------------------------------------------------
// Rigid motions and reflection.

Mesh transform(const Mesh& m, const Eigen::Vector3d& axis, double angle,
               const Eigen::Vector3d& translation);
Mesh transform(const Mesh& m, const Eigen::Matrix3d& rot,
               const Eigen::Vector3d& translation);
Mesh translate(const Mesh& m, const Eigen::Vector3d& translation);

// Reflect through the z = 0 plane (positions and normals).  The mesh must lie
// strictly on one side of the plane; mirroring twice restores the original.
Mesh mirror_image(const Mesh& m);

//------------------------------------------------------------------------------
// Plain-text mesh files: '#' comments, a panel-count line, then one
// "x y z nx ny nz area" row per panel.  Corners are not stored; on load each
// panel is given a tangent-square footprint of matching area.

void save_mesh(const Mesh& m, const std::string& path);
Mesh load_mesh(const std::string& path);

}  // namespace vdw
