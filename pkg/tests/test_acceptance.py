"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""
import contextlib
import itertools
import math
import time

import numpy as np
import pytest

from boxcasimir import em, fermion
from boxcasimir.analysis import (
    diagonal_zero_force,
    find_critical_aspect_T0,
    find_critical_curve,
    normalized_convergence_profile,
)
from boxcasimir.geometry import BoxGeometry
from boxcasimir.identities import IDENTITY_NAMES, verify_identity
from boxcasimir.identity_grid import grid_params
from boxcasimir.lattice_sums import eval_M32, eval_V1, eval_W3, eval_Y
from boxcasimir.series import DEFAULT_POLICY

from conftest import TIGHT, richardson_derivative

PI = math.pi
ACCEPTANCE_SEED = 20240611


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, budget_s=None):
        start = time.perf_counter()
        ok, detail = False, ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if budget_s is not None:
                assert elapsed < budget_s, f"took {elapsed:.2f} s, budget {budget_s} s"
            ok = True
            detail = f"{elapsed:.2f} s"
        except Exception as exc:
            detail = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            raise
        finally:
            with capsys.disabled():
                print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    return run


def test_criterion_1_cube_fermion(criterion):
    with criterion(1, budget_s=1.0):
        assert abs(fermion.energy_T0((1, 1, 1)).value - (-0.0489)) <= 5e-4
        assert abs(fermion.force_T0((1, 1, 1), "a").value - (-0.0163)) <= 5e-4


def test_criterion_2_waveguide_and_plate(criterion):
    with criterion(2, budget_s=1.0):
        w = fermion.waveguide_T0(1, 1)
        assert abs(w.energy.value - (-0.0382)) <= 5e-4
        assert abs(w.forces["b"].value - (-0.0382)) <= 5e-4
        p = fermion.parallel_plate(1)
        assert p.energy.value == pytest.approx(-7 * PI ** 2 / 2880, rel=1e-10)
        assert p.forces["b"].value == pytest.approx(-7 * PI ** 2 / 960, rel=1e-10)


def test_criterion_3_em_cube(criterion):
    with criterion(3, budget_s=5.0):
        assert abs(em.em_energy_T0((1, 1, 1)).value - 0.0917) <= 5e-4


def test_criterion_4_identity_grid(criterion):
    with criterion(4, budget_s=120.0):
        worst = {}
        for name in IDENTITY_NAMES:
            params = grid_params(name)
            assert len(params) == 25, f"{name}: {len(params)} grid tuples"
            worst[name] = min(verify_identity(name, p).digits_agreed for p in params)
        low = {k: v for k, v in worst.items() if v < 7}
        assert len(worst) == 8 and not low, f"below 7 digits: {low}"


def _random_points(rng, count):
    pts = []
    for _ in range(count):
        edges = tuple(np.exp(rng.uniform(math.log(0.5), math.log(2.5), 3)))
        T = 0.0 if rng.random() < 0.2 else float(np.exp(rng.uniform(math.log(0.1), math.log(3.0))))
        pts.append((edges, T, "abc"[rng.integers(3)]))
    return pts


def test_criterion_5_force_energy_consistency(criterion):
    rng = np.random.default_rng(ACCEPTANCE_SEED)
    with criterion(5, budget_s=120.0):
        checked, bad = 0, []
        for edges, T, axis in _random_points(rng, 30):
            g = BoxGeometry(*edges)
            f = fermion.force(g, T, axis, TIGHT).value
            if abs(f) < 1e-7:
                continue

            def energy(x, g=g, T=T, axis=axis):
                return fermion.free_energy(g.with_edge(axis, x), T, TIGHT).value

            x = g.edge(axis)
            fd = -richardson_derivative(energy, x, 1e-3 * x)
            checked += 1
            if abs(f - fd) > 1e-5 * abs(fd):
                bad.append((edges, T, axis, f, fd))
        assert checked >= 20, f"only {checked} points above the force floor"
        assert not bad, f"mismatches: {bad}"


def test_criterion_6_critical_aspect(criterion):
    with criterion(6, budget_s=30.0):
        ratio = find_critical_aspect_T0()
        assert 1.19 <= ratio <= 1.23, f"ratio {ratio}"


def test_criterion_7_high_temperature_decay(criterion):
    with criterion(7):
        Ts = [5.0, 10.0, 20.0, 50.0]
        energies = [abs(fermion.free_energy((1, 1, 1), T).value) for T in Ts]
        forces = [abs(fermion.force((1, 1, 1), T, "a").value) for T in Ts]
        assert energies[-1] < 1e-6 and forces[-1] < 1e-6
        assert all(np.diff(energies) < 0), f"energy not decreasing: {energies}"
        assert all(np.diff(forces) < 0), f"force not decreasing: {forces}"
        assert em.em_f2((1, 1, 1), 30.0).value < 1e-6


def test_criterion_8_boundary_shapes(criterion):
    with criterion(8):
        c_cr = find_critical_curve("c_cr_vs_T", [1.0, PI, 2 * PI])
        assert None not in c_cr.roots and all(np.diff(c_cr.roots) < 0), f"c_cr {c_cr.roots}"

        Ts = [0.6, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.5, 2.0]
        b_cr = find_critical_curve("b_cr_vs_T", Ts)
        assert b_cr.diagnostics["interior_maximum"], f"b_cr {b_cr.roots}"
        assert 0.8 <= b_cr.diagnostics["argmax"] <= 1.5

        root = diagonal_zero_force(2.0, 1.0)
        assert 1.5 <= root.value <= 1.9, f"diagonal root {root.value}"

        profile = normalized_convergence_profile("plate_edge", 1.0, separation=1.0)
        assert profile.convergence_edge is not None and profile.convergence_edge <= 2.2


def test_criterion_9_em_thermal_oracle(criterion):
    with criterion(9, budget_s=60.0):
        res = em.em_energy_finiteT((1, 1, 1), 1.0, TIGHT)
        direct = em.em_thermal_mode_sum((1, 1, 1), 1.0, n_max=60)
        assert res.delta_T_F0.value == pytest.approx(direct, rel=1e-8)


def _invariant_points(rng, count):
    return [tuple(np.exp(rng.uniform(math.log(0.4), math.log(2.5), 3))) for _ in range(count)]


def test_criterion_10_invariants(criterion):
    rng = np.random.default_rng(ACCEPTANCE_SEED + 10)
    with criterion(10):
        for edges in _invariant_points(rng, 6):
            T = float(rng.uniform(0.2, 2.0))
            ref0 = fermion.energy_T0(edges).value
            refT = fermion.free_energy(edges, T).value
            refE = em.em_energy_T0(edges).value
            for perm in itertools.permutations(edges):
                assert fermion.energy_T0(perm).value == pytest.approx(ref0, rel=1e-12)
                assert fermion.free_energy(perm, T).value == pytest.approx(refT, rel=1e-12)
                assert em.em_energy_T0(perm).value == pytest.approx(refE, rel=1e-12)

            # negativity
            assert ref0 < 0 and refT < 0

            # truncation error bounds cover the change under a tighter policy
            for loose, tight in (
                (fermion.free_energy(edges, T), fermion.free_energy(edges, T, TIGHT)),
                (eval_V1(*edges), eval_V1(*edges, policy=TIGHT)),
                (eval_W3(*edges, 1 / T), eval_W3(*edges, 1 / T, policy=TIGHT)),
                (eval_Y(1.5, edges[0]), eval_Y(1.5, edges[0], TIGHT)),
                (eval_M32(edges[1]), eval_M32(edges[1], TIGHT)),
            ):
                assert loose.error_bound <= DEFAULT_POLICY.rel_tol * abs(loose.value) * 10
                assert abs(loose.value - tight.value) <= loose.error_bound + 1e-15 * abs(tight.value)

        for T in (0.5, 1.0, 2.0):
            for name, (operand, expected) in fermion.shat_identity_operands(T, TIGHT).items():
                got = float(fermion.shat_apply(operand, (1, 1, 1)))
                want = float(expected(1, 1, 1))
                assert got == pytest.approx(want, rel=1e-10, abs=1e-12), f"{name} at T={T}"
