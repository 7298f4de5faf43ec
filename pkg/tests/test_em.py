import itertools
import math

import numpy as np
import pytest

from boxcasimir import em
from boxcasimir.em import (
    em_energy_finiteT,
    em_energy_T0,
    em_f1,
    em_f2,
    em_high_T,
    em_thermal_mode_sum,
    renorm_coefficients,
)
from boxcasimir.errors import DomainError
from boxcasimir.series import DEFAULT_POLICY
from boxcasimir.special_functions import ZETA4

PI = math.pi
CUBE_E0 = 0.09165742701235183


def mode_sum(edges, T, n_max):
    """Thermal correction from the cavity spectrum, accumulated slice by slice."""
    a, b, c = edges
    n = np.arange(1, n_max + 1, dtype=float)

    def logs(omega):
        return np.log1p(-np.exp(-omega / T)).sum()

    two = sum(logs(PI * np.sqrt((n[:, None] / x) ** 2 + (n[None, :] / y) ** 2))
              for x, y in ((a, b), (a, c), (b, c)))
    three = sum(logs(PI * np.sqrt((i / a) ** 2 + (n[:, None] / b) ** 2 + (n[None, :] / c) ** 2))
                for i in n)
    return T * (two + 2 * three)


class TestZeroTemperature:
    def test_cube(self):
        v = em_energy_T0((1, 1, 1)).value
        assert v == pytest.approx(0.0917, abs=5e-4)
        assert v == pytest.approx(CUBE_E0, rel=1e-12)

    def test_scaling(self):
        assert em_energy_T0((3, 3, 3)).value == pytest.approx(CUBE_E0 / 3, rel=1e-12)

    def test_written_form_is_symmetric(self):
        # the closed form privileges one edge; every labelling must agree
        edges = (1.0, 2.0, 2.0)
        vals = [em._e0_ren(*p, DEFAULT_POLICY).value for p in itertools.permutations(edges)]
        assert max(vals) - min(vals) < 1e-10 * abs(vals[0])
        assert em_energy_T0((1, 2, 2)).value == pytest.approx(em_energy_T0((2, 1, 2)).value,
                                                              rel=1e-14)

    def test_generic_box_permutations(self):
        edges = (1.3, 0.8, 2.2)
        vals = [em._e0_ren(*p, DEFAULT_POLICY).value for p in itertools.permutations(edges)]
        assert max(vals) - min(vals) < 1e-9 * abs(vals[0])


class TestFiniteTemperature:
    def test_f2_decays(self):
        assert abs(em_f2((1, 1, 1), 30.0).value) < 1e-6

    def test_thermal_correction_matches_mode_sum(self):
        res = em_energy_finiteT((1, 1, 1), 1.0)
        oracle = em_thermal_mode_sum((1, 1, 1), 1.0, n_max=60)
        assert res.delta_T_F0.value == pytest.approx(oracle, rel=1e-8)

    @pytest.mark.parametrize("edges,T", [((1, 2, 3), 1.0), ((0.7, 1.1, 1.6), 2.5)])
    def test_thermal_correction_other_boxes(self, edges, T):
        res = em_energy_finiteT(edges, T)
        assert res.delta_T_F0.value == pytest.approx(mode_sum(edges, T, 120), rel=1e-8)

    def test_low_temperature(self):
        res = em_energy_finiteT((1, 1, 1), 1e-3)
        assert abs(res.delta_T_F0.value) < 1e-8
        assert res.f_phys.value == pytest.approx(CUBE_E0, abs=1e-4)

    def test_result_fields(self):
        res = em_energy_finiteT((1, 1, 1), 2.0)
        assert res.renorm_coefficients == (0.0, PI / 4)
        assert res.log_channel == pytest.approx(-math.log(2.0))
        assert res.f_phys.value == pytest.approx(
            res.log_channel + 2.0 * res.f1.value + res.f2.value, rel=1e-14)

    def test_f_phys_permutation_invariant(self):
        edges, T = (1.3, 0.8, 2.2), 0.9
        ref = em_energy_finiteT(edges, T).f_phys.value
        for p in itertools.permutations(edges):
            raw = (-T * math.log(T) / 2 + T * em._f1(*p, DEFAULT_POLICY).value
                   + em._f2(*p, T, DEFAULT_POLICY).value)
            assert raw == pytest.approx(ref, rel=1e-8)

    def test_zero_temperature_rejected(self):
        with pytest.raises(DomainError):
            em_energy_finiteT((1, 1, 1), 0.0)


class TestHighTemperature:
    @pytest.mark.parametrize("edges", [(1, 1, 1), (1, 2, 3)])
    def test_gap(self, edges):
        res = em_energy_finiteT(edges, 30.0)
        gap = res.f_phys.value - res.log_channel - em_high_T(edges, 30.0).value
        assert abs(gap) < 1e-6

    def test_f1_temperature_independent(self):
        g = (1.0, 1.5, 2.0)
        assert em_high_T(g, 10.0).value / 10 == pytest.approx(em_high_T(g, 20.0).value / 20, rel=1e-14)


def test_renormalization_coefficients_from_mode_sum():
    edges = (1.0, 1.0, 1.0)
    Ts = np.linspace(5, 15, 11)
    y = np.array([mode_sum(edges, T, int(12 * T) + 10) for T in Ts]) + Ts * np.log(Ts) / 2
    basis = np.vstack([Ts ** 4, Ts ** 3, Ts ** 2, Ts, np.ones_like(Ts)]).T
    c4, c3, c2, c1, c0 = np.linalg.lstsq(basis, y, rcond=None)[0]
    alpha1, alpha2 = renorm_coefficients(edges)
    assert c4 == pytest.approx(-2 * ZETA4 / PI ** 2, abs=1e-6)
    assert c3 == pytest.approx(-alpha1, abs=1e-6)
    assert c2 == pytest.approx(alpha2, abs=1e-6)
    assert c1 == pytest.approx(em_f1(edges).value, abs=1e-6)
    assert c0 == pytest.approx(-em_energy_T0(edges).value, abs=1e-6)
