"""Smoke tests for the compiled python module: a few closed-form golds and the
error-type contract. The heavy numerical checks live in the C++ suites."""

import math

import pytest

import uckl


def test_riesz_constant_golds():
    assert abs(uckl.riesz_constant(2 + 0j, 3).real * 4 * math.pi - 1) < 1e-13
    want = 0.058061238515603918616 + 0.018064851198306516696j
    assert abs(uckl.riesz_constant(2 + 1j, 3) - want) < 1e-13
    with pytest.raises(ValueError):
        uckl.riesz_constant(3 + 0j, 3)


def test_kernel_values():
    # Plain kernel at unit distance is the constant itself.
    assert abs(uckl.kernel([0, 0, 0], [1, 0, 0]) - uckl.riesz_constant(2 + 0j, 3)) < 1e-15
    # One-term truncation at t = 0.1: c_2 (1/0.9 - 1).
    want = 0.0088419412828830742094
    got = uckl.kernel([0.1, 0, 0], [1, 0, 0], N=1)
    assert abs(got.real - want) < 1e-12 * want
    assert got.imag == 0.0
    # Homogeneity of degree z - d = -1.
    a = uckl.kernel([0.2, -0.1, 0.3], [-0.4, 0.5, 0.1], N=2)
    b = uckl.kernel([0.4, -0.2, 0.6], [-0.8, 1.0, 0.2], N=2)
    assert abs(b - 0.5 * a) < 1e-12 * abs(a)
    with pytest.raises(ValueError):
        uckl.kernel([0.1, 0, 0], [0, 0, 0], N=1)  # y = 0 excluded


def test_weight_exponent():
    assert uckl.weight_exponent(5, 3, 0.25) == 5.0
    assert abs(uckl.weight_exponent(2, 4, 0.25) - (2 + 1.75 / 3)) < 1e-15
    with pytest.raises(ValueError):
        uckl.weight_exponent(1, 3, 0.5)


def test_eval_potential():
    assert uckl.eval_potential("hardy:beta=0.5", [1, 0, 0]) == pytest.approx(0.125, abs=1e-15)
    assert uckl.eval_potential("const:c=2,radius=1", [0.5, 0, 0]) == 2.0
    assert uckl.eval_potential("zero", [0.5, 0, 0]) == 0.0
    with pytest.raises(ValueError):
        uckl.eval_potential("hardy:beta=0.5", [0, 0, 0])
    with pytest.raises(ValueError):
        uckl.eval_potential("vortex", [1, 0, 0])


def test_tau_and_f3_agree_and_are_deterministic():
    a = uckl.tau("hardy:beta=0.5", [0, 0, 0], 0.25, n=8)
    b = uckl.tau_f3("hardy:beta=0.5", [0, 0, 0], 0.25, n=8)
    assert a["kind"] == "twoTwo"
    assert a["value"] == b["value"]
    assert a["value"] > 0
    again = uckl.tau("hardy:beta=0.5", [0, 0, 0], 0.25, n=8)
    assert again == a


def test_kato_norm_gold():
    k = uckl.kato_norm("const:c=1,radius=1", [0, 0, 0], 0.5, n=12)
    assert k["kind"] == "supImage"
    assert k["value"] == pytest.approx(0.125, rel=0.05)


def test_weak_lorentz_lattice_gold():
    # |x|^{-2} on a centered lattice: the sup sits on the innermost cells,
    # at 16/3 independent of resolution.
    wl = uckl.weak_lorentz("hardy:beta=4", [0, 0, 0], 1.0, 1.5, n=16)
    assert wl == pytest.approx(16.0 / 3.0, abs=1e-10)


def test_lp_and_strichartz():
    vol = uckl.lp_local("const:c=1,radius=1", [0, 0, 0], 1.0, 1.0, n=16)
    assert vol == pytest.approx(4 * math.pi / 3, rel=0.05)
    assert uckl.strichartz_prefactor(3) == pytest.approx(2 * math.pi / 3, abs=1e-14)
    rhs = uckl.strichartz_rhs("const:c=1,radius=1", [0, 0, 0], 1.0, n=8)
    wl = uckl.weak_lorentz("const:c=1,radius=1", [0, 0, 0], 1.0, 1.5, n=8)
    assert rhs == pytest.approx(uckl.strichartz_prefactor(3) * math.sqrt(wl), rel=1e-12)


def test_morrey_norm():
    m = uckl.morrey_norm("const:c=1,radius=1", 2.0, [0, 0, 0], 0.5, [0.5, 0.25], n=8)
    assert m["value"] == pytest.approx(0.511663, rel=0.05)
    with pytest.raises(ValueError):
        uckl.morrey_norm("const:c=1,radius=1", 1.0, [0, 0, 0], 0.5, [0.5], n=8)


def test_binom_bound_report():
    rep = uckl.binom_bound(gamma_max=2.0, kmax=50)
    assert rep["pass"] is True
    assert rep["empiricalConstant"] == pytest.approx(1.0, abs=1e-12)
    understated = uckl.binom_bound(gamma_max=2.0, kmax=50, c=math.pi**2 / 48)
    assert understated["pass"] is False


def test_identity_check_report():
    rep = uckl.identity_check(N=1, n=16)
    assert rep["pass"] is True
    assert rep["empiricalConstant"] < 0.05
    assert rep["fittedGrowth"]["outsideResidual"] < 0.005


def test_capacity_error_type():
    with pytest.raises(uckl.CapacityError):
        uckl.tau("const:c=1,radius=1", [0, 0, 0], 0.25, n=40)
