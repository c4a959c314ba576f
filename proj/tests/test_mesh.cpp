#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "vdwshape/mesh.hpp"

using namespace vdw;
using Eigen::Vector3d;

TEST_CASE("cubed sphere") {
  for (int target : {24, 600, 1014}) {
    const Mesh m = gen_sphere(2.0, target);
    CHECK(m.size() == target);  // 6 n^2 targets land exactly
    CHECK(m.area() == doctest::Approx(4.0 * M_PI * 4.0).epsilon(1e-12));
    CHECK(m.volume() == doctest::Approx(4.0 * M_PI / 3.0 * 8.0).epsilon(1e-12));
    CHECK(m.closure_defect() < 1e-10 * m.area());
    CHECK(m.closed);
    for (const Panel& p : m.panels) {
      CHECK(p.centroid.norm() == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(p.normal.dot(p.centroid) == doctest::Approx(2.0).epsilon(1e-14));
      for (const Vector3d& c : p.corners)
        CHECK(c.norm() == doctest::Approx(2.0).epsilon(1e-13));
    }
  }
  CHECK(gen_sphere(1.0, 30).size() == 24);  // rounds to n = 2
  CHECK(gen_sphere(1.0, 100).size() == 96);
  // even n puts corners on the coordinate axes, so the corner bounding box
  // spans the full [-R, R]^3 cube
  CHECK(gen_sphere(1.0, 96).diameter() ==
        doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(gen_sphere(1.0, 23), std::domain_error);
  CHECK_THROWS_AS(gen_sphere(0.0, 100), std::domain_error);
}

TEST_CASE("boxes") {
  const Mesh m = gen_box(1.0, 2.0, 3.0, 200);
  CHECK(m.area() == doctest::Approx(22.0).epsilon(1e-13));
  CHECK(m.volume() == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(m.closure_defect() < 1e-12 * m.area());
  CHECK(m.min_corner_z() == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(m.max_corner_z() == doctest::Approx(+1.5).epsilon(1e-15));
  CHECK(m.diameter() == doctest::Approx(std::sqrt(14.0)).epsilon(1e-14));

  BoxFaces f;
  f.xp = {2, 3};
  f.xm = {1, 1};
  f.yp = {4, 1};
  f.ym = {2, 2};
  f.zp = {3, 3};
  f.zm = {5, 2};
  const Mesh b = gen_box_faces(1.0, 2.0, 3.0, f);
  CHECK(b.size() == 6 + 1 + 4 + 4 + 9 + 10);
  int nxp = 0, nxm = 0, nzp = 0, nzm = 0;
  for (const Panel& p : b.panels) {
    if (p.normal.x() > 0.5) ++nxp;
    if (p.normal.x() < -0.5) ++nxm;
    if (p.normal.z() > 0.5) ++nzp;
    if (p.normal.z() < -0.5) ++nzm;
  }
  CHECK(nxp == 6);
  CHECK(nxm == 1);
  CHECK(nzp == 9);
  CHECK(nzm == 10);
  CHECK(b.area() == doctest::Approx(22.0).epsilon(1e-13));
  CHECK(b.volume() == doctest::Approx(6.0).epsilon(1e-13));

  BoxFaces bad;
  bad.yp = {0, 1};
  CHECK_THROWS_AS(gen_box_faces(1, 1, 1, bad), std::domain_error);
  CHECK_THROWS_AS(gen_box(0.0, 1, 1, 10), std::domain_error);
  CHECK_THROWS_AS(gen_box(1, 1, 1, 0), std::domain_error);
}

TEST_CASE("cylinders") {
  const Mesh sq = gen_cylinder(CrossSection::Square, 1.0, 2.0, 300);
  const Mesh bx = gen_box(1.0, 1.0, 2.0, 300);
  REQUIRE(sq.size() == bx.size());
  CHECK(sq.label == "square-cylinder");
  for (int i = 0; i < sq.size(); ++i) {
    CHECK((sq.panels[i].centroid - bx.panels[i].centroid).norm() < 1e-12);
    CHECK(sq.panels[i].area == bx.panels[i].area);
  }

  const double R = 0.7, L = 2.4;
  const Mesh cyl = gen_cylinder(CrossSection::Circle, R, L, 800);
  const double exact = 2.0 * M_PI * R * L + 2.0 * M_PI * R * R;
  CHECK(cyl.area() == doctest::Approx(exact).epsilon(0.01));
  CHECK(cyl.volume() == doctest::Approx(M_PI * R * R * L).epsilon(0.01));
  CHECK(cyl.label == "cylinder");

  const Mesh lay = gen_cylinder_layout(R, L, 6, 2, 10, 1.3);
  CHECK(lay.size() == 2 * (36 + 48) + 24 * 10);
  CHECK(lay.area() == doctest::Approx(exact).epsilon(0.01));
  CHECK_THROWS_AS(gen_cylinder_layout(R, L, 1, 1, 1, 1.0), std::domain_error);
  CHECK_THROWS_AS(gen_cylinder_layout(R, L, 4, 1, 1, 0.5), std::domain_error);
  CHECK_THROWS_AS(gen_cylinder(CrossSection::Circle, R, L, 10), std::domain_error);

  const Mesh tube = gen_tube_axial(0.5, 3.0, 16, 10, 3, M_PI / 2, 1.5);
  const double texact = 2.0 * M_PI * 0.5 * 3.0 + 2.0 * M_PI * 0.25;
  CHECK(tube.area() == doctest::Approx(texact).epsilon(1e-12));
  CHECK(tube.volume() == doctest::Approx(M_PI * 0.25 * 3.0).epsilon(1e-12));
  CHECK(tube.closure_defect() < 0.01 * tube.area());
  CHECK(tube.label == "tube");
  CHECK_THROWS_AS(gen_tube_axial(0.5, 3.0, 3, 10, 3, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(gen_tube_axial(0.0, 3.0, 16, 10, 3, 0.0, 1.0), std::domain_error);
}

TEST_CASE("rigid motions") {
  const Mesh m = gen_sphere(1.0, 96);
  const Mesh full = transform(m, Vector3d(1, 1, 1), 2.0 * M_PI, Vector3d::Zero());
  const Mesh none = transform(m, Vector3d(0, 0, 1), 0.0, Vector3d::Zero());
  for (int i = 0; i < m.size(); ++i) {
    CHECK((full.panels[i].centroid - m.panels[i].centroid).norm() < 1e-12);
    CHECK((none.panels[i].centroid - m.panels[i].centroid).norm() < 1e-15);
  }

  const Mesh b = gen_box(1.0, 2.0, 3.0, 100);
  const Vector3d shift(0.3, -0.2, 5.0);
  const Mesh r = transform(b, Vector3d(0, 0, 1), M_PI / 3, shift);
  CHECK(r.area() == doctest::Approx(b.area()).epsilon(1e-13));
  for (int i = 0; i < b.size(); ++i) {
    CHECK(r.panels[i].area == b.panels[i].area);
    CHECK(r.panels[i].normal.norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
  // pairwise distances are preserved
  const double d0 = (b.panels[0].centroid - b.panels[37].centroid).norm();
  const double d1 = (r.panels[0].centroid - r.panels[37].centroid).norm();
  CHECK(d1 == doctest::Approx(d0).epsilon(1e-13));

  const Mesh t = translate(b, shift);
  for (int i = 0; i < b.size(); ++i) {
    CHECK((t.panels[i].centroid - b.panels[i].centroid - shift).norm() < 1e-15);
    CHECK((t.panels[i].normal - b.panels[i].normal).norm() == 0.0);
  }

  CHECK_THROWS_AS(transform(b, Vector3d::Zero(), 1.0, Vector3d::Zero()),
                  std::domain_error);
  CHECK_THROWS_AS(transform(b, Eigen::Matrix3d::Identity() * 2.0, Vector3d::Zero()),
                  std::domain_error);
}

TEST_CASE("mirror image") {
  const Mesh m = translate(gen_sphere(1.0, 96), Vector3d(0.2, -0.1, 3.0));
  const Mesh im = mirror_image(m);
  CHECK(im.is_image);
  CHECK(!m.is_image);
  for (int i = 0; i < m.size(); ++i) {
    const Panel &a = m.panels[i], &b = im.panels[i];
    CHECK(b.centroid.x() == a.centroid.x());
    CHECK(b.centroid.z() == -a.centroid.z());
    CHECK(b.normal.z() == -a.normal.z());
    CHECK(b.normal.y() == a.normal.y());
    CHECK(b.corners[2].z() == -a.corners[2].z());
    CHECK(b.area == a.area);
  }
  const Mesh back = mirror_image(im);
  CHECK(!back.is_image);
  for (int i = 0; i < m.size(); ++i)
    CHECK((back.panels[i].centroid - m.panels[i].centroid).norm() == 0.0);

  CHECK_THROWS_AS(mirror_image(gen_sphere(1.0, 96)), std::domain_error);
  Mesh touching = translate(gen_box(1, 1, 1, 24), Vector3d(0, 0, 0.5));
  CHECK_THROWS_AS(mirror_image(touching), std::domain_error);
}

TEST_CASE("mesh files round-trip") {
  Mesh m = gen_sphere(1.3, 54);
  m.label = "probe sphere";
  const std::string path = "mesh_roundtrip.txt";
  save_mesh(m, path);
  const Mesh r = load_mesh(path);
  CHECK(r.label == "probe sphere");
  CHECK(r.closed == m.closed);
  REQUIRE(r.size() == m.size());
  for (int i = 0; i < m.size(); ++i) {
    const Panel &a = m.panels[i], &b = r.panels[i];
    CHECK(b.centroid.x() == a.centroid.x());
    CHECK(b.centroid.y() == a.centroid.y());
    CHECK(b.centroid.z() == a.centroid.z());
    CHECK(b.area == a.area);
    CHECK((b.normal - a.normal).norm() < 1e-15);
    // loaded footprint: tangent square of the declared area, centered
    const double s0 = (b.corners[1] - b.corners[0]).norm();
    const double s1 = (b.corners[3] - b.corners[0]).norm();
    CHECK(s0 * s1 == doctest::Approx(b.area).epsilon(1e-12));
    Vector3d mid = 0.25 * (b.corners[0] + b.corners[1] + b.corners[2] + b.corners[3]);
    CHECK((mid - b.centroid).norm() < 1e-12);
  }
  std::remove(path.c_str());

  auto write_and_try = [](const std::string& text) {
    const std::string p = "mesh_bad.txt";
    std::ofstream f(p);
    f << text;
    f.close();
    try {
      load_mesh(p);
    } catch (const std::runtime_error& e) {
      std::remove(p.c_str());
      return std::string(e.what());
    }
    std::remove(p.c_str());
    return std::string("no error");
  };

  CHECK(write_and_try("# only comments\n").find("no panel count") != std::string::npos);
  CHECK(write_and_try("2 extra\n").find("a panel count alone") != std::string::npos);
  CHECK(write_and_try("1\n1 2 3\n").find("line 2: expected 7 numeric fields") !=
        std::string::npos);
  CHECK(write_and_try("1\n0 0 0 0 0 1 -1\n").find("area must be positive") !=
        std::string::npos);
  CHECK(write_and_try("1\n0 0 0 0 0 0 1\n").find("normal must be nonzero") !=
        std::string::npos);
  CHECK(write_and_try("2\n0 0 0 0 0 1 1\n").find("declared 2 panels, found 1") !=
        std::string::npos);
  CHECK(write_and_try("1\n0 0 0 0 0 1 1\n0 0 1 0 0 1 1\n")
            .find("more panel rows than declared") != std::string::npos);
  CHECK_THROWS_AS(load_mesh("definitely_missing_mesh.txt"), std::runtime_error);
}
