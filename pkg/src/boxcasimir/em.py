"""Casimir free energy of the electromagnetic field in a perfectly conducting box.

The renormalized free energy at temperature ``T`` splits as

    F_phys = -(T ln T) / 2 + T * F_1(a, b, c) + F_2(a, b, c, T)

where ``F_1`` is temperature independent and ``F_2`` vanishes at high
temperature.  The ``-(T ln T)/2`` piece does not depend on the edges, so
it is reported as a separate channel that force calculations must drop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import BoxGeometry, ThermalState
from .lattice_sums import eval_V1, eval_Y, eval_Z
from .series import DEFAULT_POLICY, PrecisionPolicy, SeriesValue
from .special_functions import ZETA2, ZETA3, ZETA4

PI = math.pi


def _pol(policy):
    return DEFAULT_POLICY if policy is None else policy


def _canonical(geom) -> BoxGeometry:
    g = geom if isinstance(geom, BoxGeometry) else BoxGeometry(*geom)
    return g.canonical()


def _temperature(th) -> float:
    T = th.T if isinstance(th, ThermalState) else ThermalState(th).T
    if T == 0.0:
        raise DomainError("finite-temperature formula called with T = 0")
    return T


@dataclass(frozen=True)
class EmResult:
    """Components of the electromagnetic free energy at one ``(a, b, c, T)``.

    Attributes
    ----------
    e0_ren : SeriesValue
        Renormalized zero-temperature energy.
    f1, f2 : SeriesValue
        Temperature-independent and decaying parts.
    f_phys : SeriesValue
        ``log_channel + T * f1 + f2``.
    delta_T_F0 : SeriesValue
        Thermal correction to the unrenormalized free energy rebuilt
        from the pieces above; it equals the plain logarithmic mode sum.
    log_channel : float
        The edge-independent ``-(T ln T)/2`` term.
    renorm_coefficients : tuple of float
        Coefficients of ``T**3`` and ``T**2`` removed by renormalization.
    """

    e0_ren: SeriesValue
    f1: SeriesValue
    f2: SeriesValue
    f_phys: SeriesValue
    delta_T_F0: SeriesValue
    log_channel: float
    renorm_coefficients: tuple
    geometry: BoxGeometry
    T: float


def _e0_ren(a, b, c, policy):
    return (
        -a * (
            ZETA4 * c / (8 * PI ** 2 * b ** 3)
            + ZETA3 / (16 * PI * c ** 2)
            + eval_Y(1.5, c / b, policy) / (2 * b ** 1.5 * c ** 0.5)
        )
        + PI / 48 * (1 / b + 1 / c)
        - (eval_V1(a, b, c, policy)
           + eval_Y(1, a / b, policy) / (2 * b)
           + eval_Y(1, a / c, policy) / (2 * c))
    )


def em_energy_T0(geom, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Renormalized zero-temperature Casimir energy of the EM field."""
    g = _canonical(geom)
    return _e0_ren(g.a, g.b, g.c, _pol(policy))


def _f1(a, b, c, policy):
    y1, y32, v1 = (lambda x: eval_Y(1, x, policy)), (lambda x: eval_Y(1.5, x, policy)), eval_V1
    logs = (eval_Z(2, a, b, c, policy=policy) + eval_Z(1, a / b, policy=policy) * 0.5
            + eval_Z(1, a / c, policy=policy) * 0.5 + y1(c / a))
    return (
        ZETA4 * b * c / (4 * PI ** 2 * a ** 2)
        - a ** 2 * (ZETA4 * c / (4 * PI ** 2 * b ** 3) + ZETA3 / (8 * PI * c ** 2)
                    + y32(c / b) / (b ** 1.5 * c ** 0.5))
        + logs
        - (2 * a * v1(a, b, c, policy) + (a / b) * y1(a / b) + (a / c) * y1(a / c))
        + 2 * a * v1(c, b, a, policy)
        + c / math.sqrt(a * b) * y32(b / a)
        - math.log(b * c) / 4 - ZETA2 / (4 * PI) - math.log(2) / 2
    )


def _f2(a, b, c, T, policy):
    t = 1 / (2 * T)
    logs = (2 * eval_Z(3, a, b, c, t, policy=policy)
            + eval_Z(2, a, b, t, policy=policy) + eval_Z(2, a, c, t, policy=policy)
            - eval_Z(1, 2 * T * b, policy=policy) * 0.5
            - eval_Z(1, 2 * T * c, policy=policy) * 0.5)
    bessel = (2 * eval_V1(c, b, t, policy)
              + 2 * c * math.sqrt(2 * T ** 3 / b) * eval_Y(1.5, 2 * b * T, policy)
              + 2 * T * eval_Y(1, 2 * c * T, policy))
    return T * (logs - a * bessel)


def em_f1(geom, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Temperature-independent coefficient of ``T`` in the free energy."""
    g = _canonical(geom)
    return _f1(g.a, g.b, g.c, _pol(policy))


def em_f2(geom, T, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Part of the free energy that vanishes as ``T`` grows."""
    g = _canonical(geom)
    return _f2(g.a, g.b, g.c, _temperature(T), _pol(policy))


def renorm_coefficients(geom) -> tuple[float, float]:
    """Coefficients of the ``T**3`` and ``T**2`` terms removed by renormalization."""
    g = geom if isinstance(geom, BoxGeometry) else BoxGeometry(*geom)
    return (0.0, PI * (g.a + g.b + g.c) / 12)


def em_energy_finiteT(geom, th, policy: PrecisionPolicy | None = None) -> EmResult:
    """All components of the EM free energy at ``T > 0``."""
    g = _canonical(geom)
    T = _temperature(th)
    policy = _pol(policy)
    a, b, c = g.a, g.b, g.c
    e0 = _e0_ren(a, b, c, policy)
    f1 = _f1(a, b, c, policy)
    f2 = _f2(a, b, c, T, policy)
    log_channel = -T * math.log(T) / 2
    f_phys = log_channel + T * f1 + f2
    coeffs = renorm_coefficients(g)
    blackbody = -2 * ZETA4 * a * b * c * T ** 4 / PI ** 2
    delta = f_phys - e0 + blackbody + coeffs[1] * T ** 2 - coeffs[0] * T ** 3
    return EmResult(e0, f1, f2, f_phys, delta, log_channel, coeffs, g, T)


def em_high_T(geom, T, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """High-temperature asymptote ``T * F_1`` (without the log channel)."""
    return _temperature(T) * em_f1(geom, policy)


def em_thermal_mode_sum(geom, T: float, n_max: int = 60) -> float:
    """Thermal correction as a direct sum over cavity modes.

    Counts one polarization for modes with one vanishing index and two
    for modes with all indices positive, truncated at ``n_max`` per axis.
    Used as an oracle for :attr:`EmResult.delta_T_F0`.
    """
    g = geom if isinstance(geom, BoxGeometry) else BoxGeometry(*geom)
    n = np.arange(1, n_max + 1, dtype=float)

    def logsum(*edges):
        grids = np.meshgrid(*[n / e for e in edges], indexing="ij", sparse=True)
        omega = PI * np.sqrt(sum(x * x for x in grids))
        return float(np.sum(np.log1p(-np.exp(-omega / T))))

    a, b, c = g.edges
    return T * (logsum(a, b) + logsum(a, c) + logsum(b, c) + 2 * logsum(a, b, c))
