import math

import vdwshape as v


def test_version_and_constants():
    assert v.__version__.startswith("vdwshape")
    assert abs(v.hbar - 1.054571817e-34) < 1e-44


def test_materials():
    au = v.Material.gold()
    und = v.Material.gold_undamped()
    assert not au.is_undamped_drude()
    assert und.is_undamped_drude()
    assert abs(v.eval_epsilon(und, und.omega_p) - 2.0) < 1e-12
    ps = v.Material.polystyrene()
    assert abs(v.eval_epsilon(ps, 0.0) - 2.5) < 1e-12
    assert v.material_from_name("gold").same_model(au)
    assert abs(v.contrast_factor(und, v.Material.vacuum(), und.omega_p) - 1.0 / 3.0) < 1e-12


def test_sphere_substrate_energy():
    sys = v.SphereSystem()
    sys.core = sys.coat = sys.substrate = v.Material.gold_undamped()
    sys.z = 1.0
    res = v.energy_argument_principle(sys, 16)
    assert res.converged
    assert res.U < 0.0
    ums = v.energy_mode_sum(sys, 16)
    assert abs(ums - res.U) < 1e-4 * abs(res.U)
    assert v.sphere_force(sys, 16) > 0.0


def test_bem_spectrum_sum_rule():
    m = v.gen_sphere(1.0, 216)
    assert abs(m.area() - 4.0 * math.pi) < 1e-10
    sp = v.spectrum([m])
    assert abs(sp.sum_rule_defect) < 1e-8 * m.size()
    # l = 1 cluster near 1/3 right after the interior mode
    for k in range(1, 4):
        assert abs(sp.n_s[k] - 1.0 / 3.0) < 0.05


def test_two_body_energy():
    au = v.Material.gold_undamped()
    a = v.gen_sphere(1.0, 96)
    b = v.translate(a, [0.0, 0.0, 2.5])
    pe = v.energy_two_objects_same_drude(a, b, au)
    assert pe.U < 0.0
    assert pe.n_panels == 192


def test_hamaker_order():
    A = v.hamaker_constant(v.Material.gold(), v.Material.gold(), v.Material.vacuum())
    assert 1e-20 < A < 1e-18
    assert abs(v.a12_from_hamaker(A) - A / (12.0 * math.pi)) < 1e-40
