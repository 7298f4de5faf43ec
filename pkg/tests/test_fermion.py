import itertools
import math

import numpy as np
import pytest

from boxcasimir import fermion
from boxcasimir.errors import DomainError
from boxcasimir.fermion import (
    PLATE_T0_ENERGY,
    PLATE_T0_FORCE,
    ShatOperand,
    a3_via_shat,
    energy_finiteT,
    energy_T0,
    evaluate_box,
    force,
    force_finiteT,
    force_T0,
    free_energy,
    gundersen_comparison,
    parallel_plate,
    shat_apply,
    shat_identity_operands,
    slab_energy_sinh_form,
    waveguide,
    waveguide_finiteT,
    waveguide_T0,
)
from boxcasimir.geometry import BoxGeometry, ThermalState
from boxcasimir.lattice_sums import eval_M1, eval_V1

from conftest import TIGHT, rel_err, richardson_derivative
from oracles import m32_oracle, radial_oracle, w3_oracle

PI = math.pi

# frozen regressions (agree with the three-figure published constants)
CUBE_ENERGY_T0 = -0.04892754119367475
CUBE_FORCE_T0 = -0.016309180397891608
CUBE_ENERGY_T1 = -0.006058390655578033


def fd_force(geom, T, axis, h=1e-3):
    g = BoxGeometry(*geom)

    def energy(x):
        return free_energy(g.with_edge(axis, x), T, TIGHT).value

    return -richardson_derivative(energy, g.edge(axis), h * g.edge(axis))


class TestZeroTemperature:
    def test_cube_energy(self):
        v = energy_T0((1, 1, 1)).value
        assert v == pytest.approx(-0.0489, abs=5e-4)
        assert v == pytest.approx(CUBE_ENERGY_T0, rel=1e-12)

    def test_cube_scaling(self):
        assert energy_T0((2, 2, 2)).value == pytest.approx(CUBE_ENERGY_T0 / 2, rel=1e-12)

    def test_permutations(self):
        vals = [energy_T0(p).value for p in itertools.permutations((2, 1, 1.5))]
        assert max(vals) - min(vals) <= 1e-10 * abs(vals[0])

    def test_cube_force(self):
        fs = [force_T0((1, 1, 1), ax).value for ax in "abc"]
        assert fs[0] == pytest.approx(-0.0163, abs=5e-4)
        assert fs[0] == pytest.approx(CUBE_FORCE_T0, rel=1e-12)
        assert fs[0] == fs[1] == fs[2]

    def test_force_is_energy_derivative(self):
        assert force_T0((3, 1, 1.2), "a", TIGHT).value == pytest.approx(
            fd_force((3, 1, 1.2), 0.0, "a", h=1e-4 / 3), rel=1e-5)

    @pytest.mark.parametrize("axis", "abc")
    def test_force_along_each_axis(self, axis):
        geom = (1.7, 0.8, 1.2)
        assert force_T0(geom, axis, TIGHT).value == pytest.approx(
            fd_force(geom, 0.0, axis), rel=1e-6)


class TestFiniteTemperature:
    def test_cube_regression(self):
        assert energy_finiteT((1, 1, 1), 1.0).value == pytest.approx(CUBE_ENERGY_T1, rel=1e-11)

    def test_low_temperature_continuity(self):
        assert energy_finiteT((1, 1, 1), 1e-3).value == pytest.approx(CUBE_ENERGY_T0, abs=1e-3)
        assert force_finiteT((2, 1, 1), 1e-3, "a").value == pytest.approx(
            force_T0((2, 1, 1), "a").value, abs=1e-3)

    def test_high_temperature_vanishes(self):
        assert abs(energy_finiteT((1, 1, 1), 50.0).value) < 1e-6
        assert abs(force_finiteT((1, 1, 1), 50.0, "a").value) < 1e-6

    def test_high_temperature_monotone(self):
        Ts = [5, 7, 10, 15, 20, 30, 50]
        e = [abs(energy_finiteT((1, 1, 1), T).value) for T in Ts]
        f = [abs(force_finiteT((1, 1, 1), T, "a").value) for T in Ts]
        assert all(x > y for x, y in zip(e, e[1:]))
        assert all(x > y for x, y in zip(f, f[1:]))

    def test_component_oracle(self):
        # (1, 2, 3) in canonical order is a=3, b=1, c=2
        a, b, c, T = 3.0, 1.0, 2.0, 1.0
        t = 1 / (2 * T)
        a3 = (-w3_oracle(a, b, c, t) - a * radial_oracle(c, b, t, "M1", N=60)
              - a * c * math.sqrt(2 * T ** 3 / b) * m32_oracle(2 * b * T))
        assert energy_finiteT((1, 2, 3), T).value == pytest.approx(4 * T * a3, rel=1e-10)

    def test_cube_force_is_energy_derivative(self):
        assert force_finiteT((1, 1, 1), 1.0, "a", TIGHT).value == pytest.approx(
            fd_force((1, 1, 1), 1.0, "a"), rel=1e-5)

    @pytest.mark.parametrize("geom,T,axis", [
        ((1.4, 0.7, 2.1), 0.6, "a"), ((1.4, 0.7, 2.1), 0.6, "b"),
        ((1.4, 0.7, 2.1), 2.0, "c"), ((0.5, 1.9, 1.1), 1.3, "b"),
    ])
    def test_force_energy_consistency(self, geom, T, axis):
        f = force_finiteT(geom, T, axis, TIGHT).value
        assert f == pytest.approx(fd_force(geom, T, axis), rel=1e-5)

    def test_zero_temperature_rejected(self):
        with pytest.raises(DomainError):
            energy_finiteT((1, 1, 1), 0.0)
        with pytest.raises(DomainError):
            force_finiteT((1, 1, 1), 0.0)


def test_routing_by_temperature():
    assert free_energy((1, 1, 1), 0.0).value == energy_T0((1, 1, 1)).value
    assert force((1, 1, 1), 0.0, "b").value == force_T0((1, 1, 1), "b").value
    res = evaluate_box((1, 2, 1.5), ThermalState(0.7), ("a", "c"))
    assert set(res.forces) == {"a", "c"}
    assert res.energy.value == energy_finiteT((1, 2, 1.5), 0.7).value
    assert res.normalization == "total"


def test_permutation_invariance(rng):
    for _ in range(20):
        edges = tuple(np.exp(rng.uniform(math.log(0.5), math.log(2.5), 3)))
        for T in (0.5, 1.0, 3.0):
            ref = energy_finiteT(edges, T).value
            for perm in itertools.permutations(edges):
                v = energy_finiteT(perm, T, canonical=False).value
                assert v == pytest.approx(ref, rel=1e-10, abs=1e-14)


def test_energy_always_negative(rng):
    pts = [(0.3, 0.3, 0.3, 0.1), (3, 3, 3, 5), (0.3, 3, 3, 0.1), (3, 0.3, 0.3, 5)]
    for _ in range(40):
        pts.append((*np.exp(rng.uniform(math.log(0.3), math.log(3), 3)),
                    math.exp(rng.uniform(math.log(0.1), math.log(5)))))
    for a, b, c, T in pts:
        v = energy_finiteT((a, b, c), T)
        assert v.value < 0 or abs(v.value) <= v.error_bound


@pytest.mark.parametrize("T", [0.7, 1.0])
def test_long_box_approaches_waveguide(T):
    b, c = 1.0, 1.3
    per_length = waveguide_finiteT(b, c, T).energy.value
    for a, tol in ((5.0, 1e-2), (20.0, 1e-4)):
        assert rel_err(energy_finiteT((a, b, c), T).value / a, per_length) < tol


class TestWaveguide:
    def test_square_values(self):
        w = waveguide_T0(1, 1)
        assert w.energy.value == pytest.approx(-0.0382, abs=5e-4)
        assert w.forces["b"].value == pytest.approx(-0.0382, abs=5e-4)
        assert w.forces["b"].value == pytest.approx(w.forces["c"].value, rel=1e-14)
        assert w.normalization == "per_unit_length"

    def test_wide_guide_tends_to_plates(self):
        assert waveguide_T0(1, 40).energy.value / 40 == pytest.approx(-7 * PI ** 2 / 2880, abs=1e-6)

    def test_force_c_changes_sign_near_121(self):
        lo = waveguide_T0(1, 1.16).forces["c"].value
        hi = waveguide_T0(1, 1.26).forces["c"].value
        assert lo * hi < 0
        assert abs(waveguide_T0(1, 1.21).forces["c"].value) < 1e-4

    def test_low_temperature_continuity(self):
        assert waveguide_finiteT(1, 1, 1e-3).energy.value == pytest.approx(
            waveguide_T0(1, 1).energy.value, abs=1e-3)

    def test_force_b_attractive(self):
        for b in (0.3, 0.6, 1.0):
            for c in (b, 1.5 * b, 3 * b):
                assert waveguide_finiteT(b, c, 1.0).forces["b"].value < 0

    def test_relabeling(self):
        w1, w2 = waveguide_finiteT(0.8, 1.4, 1.0), waveguide_finiteT(1.4, 0.8, 1.0)
        assert w1.energy.value == pytest.approx(w2.energy.value, rel=1e-14)
        assert w1.forces["b"].value == pytest.approx(w2.forces["c"].value, rel=1e-14)

    @pytest.mark.parametrize("b,c,T", [(1.0, 1.0, 1.0), (0.7, 1.5, 0.8), (1.5, 0.7, 2.0)])
    def test_force_b_is_energy_derivative(self, b, c, T):
        fd = -richardson_derivative(
            lambda x: waveguide_finiteT(x, c, T, TIGHT).energy.value, b, 1e-3)
        assert waveguide_finiteT(b, c, T, TIGHT).forces["b"].value == pytest.approx(fd, rel=1e-6)

    def test_zero_temperature_force_is_derivative(self):
        fd = -richardson_derivative(lambda x: waveguide_T0(x, 1.3, TIGHT).energy.value, 0.9, 1e-3)
        assert waveguide_T0(0.9, 1.3, TIGHT).forces["b"].value == pytest.approx(fd, rel=1e-6)

    def test_dispatch(self):
        assert waveguide(1, 1).energy.value == waveguide_T0(1, 1).energy.value


class TestPlates:
    def test_zero_temperature_closed_forms(self):
        p = parallel_plate(1.0)
        assert p.energy.value == pytest.approx(-7 * PI ** 2 / 2880, rel=1e-14)
        assert p.forces["b"].value == pytest.approx(-7 * PI ** 2 / 960, rel=1e-14)
        assert (p.energy.value, p.forces["b"].value) == pytest.approx((-0.023989, -0.071967), abs=5e-6)
        assert parallel_plate(2.0).energy.value == pytest.approx(PLATE_T0_ENERGY / 8, rel=1e-14)
        assert parallel_plate(2.0).forces["b"].value == pytest.approx(PLATE_T0_FORCE / 16, rel=1e-14)

    def test_low_temperature_continuity(self):
        p = parallel_plate(1.0, 1e-3)
        assert p.energy.value == pytest.approx(PLATE_T0_ENERGY, abs=1e-6)
        assert p.forces["b"].value == pytest.approx(PLATE_T0_FORCE, abs=1e-6)

    def test_hotter_is_weaker(self):
        p1, p2 = parallel_plate(1.0, 1.0), parallel_plate(1.0, 2 * PI)
        assert abs(p2.energy.value) < abs(p1.energy.value)
        assert abs(p2.forces["b"].value) < abs(p1.forces["b"].value)

    def test_force_is_derivative(self):
        fd = -richardson_derivative(lambda x: parallel_plate(x, 0.8, TIGHT).energy.value, 1.1, 1e-3)
        assert parallel_plate(1.1, 0.8, TIGHT).forces["b"].value == pytest.approx(fd, rel=1e-7)

    def test_rejects_bad_separation(self):
        with pytest.raises(DomainError):
            parallel_plate(0.0)


class TestShat:
    def test_two_edge_functions_vanish(self):
        for u in (lambda a, b, c: a * b ** 2, lambda a, b, c: math.sin(a + c),
                  lambda a, b, c: math.exp(-b * c)):
            assert abs(shat_apply(ShatOperand(u), (1.3, 0.7, 2.1))) < 1e-13

    def test_monomial(self):
        g = (1.3, 0.7, 2.1)
        assert shat_apply(ShatOperand(lambda a, b, c: a * b * c), g) == pytest.approx(
            g[0] * g[1] * g[2], rel=1e-14)

    def test_v1_maps_to_m1(self):
        s = shat_apply(ShatOperand(lambda a, b, c: eval_V1(a, b, c, TIGHT)), (1, 1, 1))
        assert s.value == pytest.approx(-eval_M1(1, 1, 1, TIGHT).value, abs=1e-9)

    @pytest.mark.parametrize("geom,T", [((1, 1, 1), 1.0), ((1.6, 0.8, 1.1), 0.7)])
    def test_operator_identities(self, geom, T):
        for name, (operand, expected) in shat_identity_operands(T, TIGHT).items():
            got = float(shat_apply(operand, geom))
            want = float(expected(*BoxGeometry(*geom).edges))
            scale = max(abs(want), 1e-3)
            assert abs(got - want) <= 1e-10 * scale, name

    def test_energy_via_operator(self):
        g = BoxGeometry(1.5, 0.9, 1.2)
        assert 4 * 0.8 * a3_via_shat(g, 0.8, TIGHT).value == pytest.approx(
            energy_finiteT(g, 0.8, TIGHT).value, rel=1e-9)


class TestSlab:
    def test_matches_plate_energy(self):
        g, bb = gundersen_comparison(1.0)
        assert g.value == pytest.approx(parallel_plate(1.0, 1.0).energy.value, rel=1e-15)
        assert bb == pytest.approx(-7 * PI ** 2 / 180, rel=1e-15)

    @pytest.mark.parametrize("xi", [0.5, 1.0, 2.0])
    def test_hyperbolic_form(self, xi):
        g, _ = gundersen_comparison(xi)
        assert g.value == pytest.approx(slab_energy_sinh_form(xi).value, rel=1e-9, abs=1e-15)

    def test_suppressed(self):
        assert abs(gundersen_comparison(10.0)[0].value) < 1e-10
