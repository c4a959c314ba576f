#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vdwshape/bem.hpp"
#include "vdwshape/constants.hpp"
#include "vdwshape/dielectric.hpp"
#include "vdwshape/mesh.hpp"
#include "vdwshape/multipole.hpp"
#include "vdwshape/pfa.hpp"
#include "vdwshape/quadrature.hpp"
#include "vdwshape/scan.hpp"

namespace py = pybind11;
using namespace vdw;

PYBIND11_MODULE(_vdwshape, m) {
  m.doc() = "van der Waals interactions between finite bodies";
  m.attr("__version__") = kVersion;
  m.attr("hbar") = hbar;

  py::class_<Material>(m, "Material")
      .def_static("drude", &Material::drude, py::arg("omega_p"),
                  py::arg("gamma") = 0.0)
      .def_static("oscillators", &Material::oscillators)
      .def_static("tabulated", &Material::tabulated)
      .def_static("constant", &Material::constant)
      .def_static("vacuum", &Material::vacuum)
      .def_static("gold", &Material::gold)
      .def_static("gold_undamped", &Material::gold_undamped)
      .def_static("polystyrene", &Material::polystyrene)
      .def_readonly("omega_p", &Material::omega_p)
      .def_readonly("gamma", &Material::gamma)
      .def("is_undamped_drude", &Material::is_undamped_drude)
      .def("same_model", &Material::same_model);
  m.def("material_from_name", &material_from_name);
  m.def("eval_epsilon", &eval_epsilon);
  m.def("spectral_u", &spectral_u);
  m.def("contrast_factor", &contrast_factor);
  m.def("load_tabulated", &load_tabulated);
  m.def("reference_omega", &reference_omega);

  py::class_<QuadSpec>(m, "QuadSpec")
      .def(py::init<>())
      .def_readwrite("omega0", &QuadSpec::omega0)
      .def_readwrite("nodes", &QuadSpec::nodes)
      .def_readwrite("tol_rel", &QuadSpec::tol_rel)
      .def_readwrite("max_nodes", &QuadSpec::max_nodes)
      .def_readwrite("adaptive", &QuadSpec::adaptive);

  py::class_<SphereSystem>(m, "SphereSystem")
      .def(py::init<>())
      .def_readwrite("R", &SphereSystem::R)
      .def_readwrite("delta", &SphereSystem::delta)
      .def_readwrite("z", &SphereSystem::z)
      .def_readwrite("core", &SphereSystem::core)
      .def_readwrite("coat", &SphereSystem::coat)
      .def_readwrite("substrate", &SphereSystem::substrate)
      .def_readwrite("ambient", &SphereSystem::ambient);

  py::class_<EnergyResult>(m, "EnergyResult")
      .def_readonly("U", &EnergyResult::U)
      .def_readonly("L_used", &EnergyResult::L_used)
      .def_readonly("achieved_rel", &EnergyResult::achieved_rel)
      .def_readonly("converged", &EnergyResult::converged);

  py::class_<ModeSpectrum::Mode>(m, "Mode")
      .def_readonly("m", &ModeSpectrum::Mode::m)
      .def_readonly("s", &ModeSpectrum::Mode::s)
      .def_readonly("n", &ModeSpectrum::Mode::n);
  py::class_<ModeSpectrum>(m, "ModeSpectrum")
      .def_readonly("modes", &ModeSpectrum::modes)
      .def_readonly("z_over_R", &ModeSpectrum::z_over_R)
      .def_readonly("L_max", &ModeSpectrum::L_max);

  m.def("depolarization", &depolarization);
  m.def("homogeneous_polarizability", &homogeneous_polarizability);
  m.def("coated_polarizability", &coated_polarizability);
  m.def("spectral_modes", &spectral_modes);
  m.def("modes_fixed_fc", &modes_fixed_fc);
  m.def("energy_argument_principle", &energy_argument_principle, py::arg("sys"),
        py::arg("L_max"), py::arg("quad") = QuadSpec{});
  m.def("energy_mode_sum", &energy_mode_sum);
  m.def("sphere_force", &force, py::arg("sys"), py::arg("L_max"),
        py::arg("quad") = QuadSpec{}, py::arg("h_rel") = 1e-3);
  m.def("converge_Lmax", &converge_Lmax, py::arg("sys"), py::arg("tol_rel"),
        py::arg("L_start"), py::arg("L_cap"), py::arg("quad") = QuadSpec{});

  py::class_<PlanarPair>(m, "PlanarPair")
      .def(py::init<>())
      .def_readwrite("material_1", &PlanarPair::material_1)
      .def_readwrite("material_2", &PlanarPair::material_2)
      .def_readwrite("ambient", &PlanarPair::ambient)
      .def_readwrite("d", &PlanarPair::d);
  m.def("polylog3", &polylog3);
  m.def("halfspace_energy_per_area", &halfspace_energy_per_area, py::arg("pair"),
        py::arg("quad") = QuadSpec{});
  m.def("hamaker_constant", &hamaker_constant);
  m.def("a12_from_hamaker", &a12_from_hamaker);
  m.def("pfa_sphere_force", &pfa_sphere_force);
  m.def("analytic_smallsep_energy", &analytic_smallsep_energy);
  m.def("film2d_force", &film2d_force);
  m.def("halfspace_film_energy_per_area", &halfspace_film_energy_per_area,
        py::arg("d"), py::arg("delta"), py::arg("film"), py::arg("halfspace"),
        py::arg("quad") = QuadSpec{});

  py::class_<Panel>(m, "Panel")
      .def_readonly("centroid", &Panel::centroid)
      .def_readonly("normal", &Panel::normal)
      .def_readonly("area", &Panel::area);
  py::class_<Mesh>(m, "Mesh")
      .def(py::init<>())
      .def_readonly("panels", &Mesh::panels)
      .def_readwrite("label", &Mesh::label)
      .def_readwrite("closed", &Mesh::closed)
      .def("size", &Mesh::size)
      .def("area", &Mesh::area)
      .def("volume", &Mesh::volume)
      .def("closure_defect", &Mesh::closure_defect)
      .def("min_corner_z", &Mesh::min_corner_z)
      .def("max_corner_z", &Mesh::max_corner_z)
      .def("diameter", &Mesh::diameter);
  py::enum_<CrossSection>(m, "CrossSection")
      .value("Circle", CrossSection::Circle)
      .value("Square", CrossSection::Square);
  py::class_<FaceCounts>(m, "FaceCounts")
      .def(py::init<>())
      .def_readwrite("n1", &FaceCounts::n1)
      .def_readwrite("n2", &FaceCounts::n2);
  py::class_<BoxFaces>(m, "BoxFaces")
      .def(py::init<>())
      .def_readwrite("xp", &BoxFaces::xp)
      .def_readwrite("xm", &BoxFaces::xm)
      .def_readwrite("yp", &BoxFaces::yp)
      .def_readwrite("ym", &BoxFaces::ym)
      .def_readwrite("zp", &BoxFaces::zp)
      .def_readwrite("zm", &BoxFaces::zm);
  m.def("gen_sphere", &gen_sphere, py::arg("R"), py::arg("target"));
  m.def("gen_box", &gen_box);
  m.def("gen_box_faces", &gen_box_faces);
  m.def("gen_cylinder", &gen_cylinder);
  m.def("gen_cylinder_layout", &gen_cylinder_layout, py::arg("R"),
        py::arg("length"), py::arg("n_core"), py::arg("n_rad"), py::arg("nx"),
        py::arg("grade") = 1.0);
  m.def("gen_tube_axial", &gen_tube_axial, py::arg("R"), py::arg("length"),
        py::arg("nphi"), py::arg("nx"), py::arg("ncap_r"),
        py::arg("phi_face") = 0.0, py::arg("grade") = 0.0);
  m.def("transform",
        py::overload_cast<const Mesh&, const Eigen::Vector3d&, double,
                          const Eigen::Vector3d&>(&transform));
  m.def("translate", &translate);
  m.def("mirror_image", &mirror_image);
  m.def("save_mesh", &save_mesh);
  m.def("load_mesh", &load_mesh);

  py::class_<SubdivOpts>(m, "SubdivOpts")
      .def(py::init<>())
      .def_readwrite("eta", &SubdivOpts::eta)
      .def_readwrite("kcap", &SubdivOpts::kcap);
  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("n_s", &Spectrum::n_s)
      .def_readonly("max_imag", &Spectrum::max_imag)
      .def_readonly("sum_rule_defect", &Spectrum::sum_rule_defect);
  py::class_<PairEnergy>(m, "PairEnergy")
      .def_readonly("U", &PairEnergy::U)
      .def_readonly("U_reduced", &PairEnergy::U_reduced)
      .def_readonly("n_panels", &PairEnergy::n_panels);
  py::class_<SubstrateEnergy>(m, "SubstrateEnergy")
      .def_readonly("U", &SubstrateEnergy::U)
      .def_readonly("U_reduced", &SubstrateEnergy::U_reduced)
      .def_readonly("omega_ref", &SubstrateEnergy::omega_ref)
      .def_readonly("n_panels", &SubstrateEnergy::n_panels)
      .def_readonly("nodes_used", &SubstrateEnergy::nodes_used)
      .def_readonly("converged", &SubstrateEnergy::converged)
      .def_readonly("gap_warning", &SubstrateEnergy::gap_warning);
  py::class_<SubstrateForce>(m, "SubstrateForce")
      .def_readonly("F", &SubstrateForce::F)
      .def_readonly("F_reduced", &SubstrateForce::F_reduced)
      .def_readonly("omega_ref", &SubstrateForce::omega_ref)
      .def_readonly("gap_warning", &SubstrateForce::gap_warning);

  m.def(
      "spectrum",
      [](const std::vector<Mesh>& meshes, const SubdivOpts& opt) {
        std::vector<const Mesh*> ptrs;
        for (const auto& mm : meshes) ptrs.push_back(&mm);
        return spectrum(ptrs, opt);
      },
      py::arg("meshes"), py::arg("opt") = SubdivOpts{});
  m.def("energy_two_objects_same_drude", &energy_two_objects_same_drude,
        py::arg("a"), py::arg("b"), py::arg("metal"),
        py::arg("opt") = SubdivOpts{});
  m.def("energy_object_substrate", &energy_object_substrate,
        py::arg("body_mesh"), py::arg("body"), py::arg("substrate"),
        py::arg("ambient"), py::arg("d"), py::arg("opt") = SubdivOpts{},
        py::arg("quad") = QuadSpec{});
  m.def("force_object_substrate", &force_object_substrate, py::arg("body_mesh"),
        py::arg("body"), py::arg("substrate"), py::arg("ambient"), py::arg("d"),
        py::arg("h_rel") = 1e-3, py::arg("opt") = SubdivOpts{},
        py::arg("quad") = QuadSpec{});
  m.def("energy_object_substrate_same_drude", &energy_object_substrate_same_drude,
        py::arg("body_mesh"), py::arg("metal"), py::arg("d"),
        py::arg("opt") = SubdivOpts{});
}
