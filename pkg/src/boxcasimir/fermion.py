"""Casimir free energy and forces of a massless fermion field in a box.

The field obeys bag boundary conditions on all six walls, so the allowed
momenta along an edge ``l`` are ``(n + 1/2) pi / l``.  Every result is
in natural units and follows the sign convention

    negative force = attraction (the wall is pulled inward).

Formulas are written for a privileged edge ``a`` and two transverse
edges ``b <= c``.  Energies are evaluated in the canonical order
``b <= c <= a``; forces put the differentiated edge into the ``a`` slot.
The exact value of either quantity does not depend on this bookkeeping,
only the speed of convergence does.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .geometry import AXES, BoxGeometry, ThermalState
from .lattice_sums import (
    eval_M0,
    eval_M1,
    eval_M32,
    eval_N0,
    eval_N_half,
    eval_V1,
    eval_W3,
    eval_W3_dx,
    eval_Y,
    eval_Z,
)
from .series import DEFAULT_POLICY, PrecisionPolicy, SeriesValue, box_sum
from .special_functions import ZETA3, ZETA4

PI = math.pi
PLATE_T0_ENERGY = -7 * PI ** 2 / 2880   # times b**-3
PLATE_T0_FORCE = -7 * PI ** 2 / 960     # times b**-4

NORMALIZATIONS = ("total", "per_unit_length", "per_unit_area")


def _pol(policy):
    return DEFAULT_POLICY if policy is None else policy


def _geom(geom) -> BoxGeometry:
    return geom if isinstance(geom, BoxGeometry) else BoxGeometry(*geom)


def _thermal(th) -> ThermalState:
    return th if isinstance(th, ThermalState) else ThermalState(th)


def _positive_T(th: ThermalState) -> float:
    if th.is_zero:
        raise DomainError("finite-temperature formula called with T = 0; "
                          "use the zero-temperature functions")
    return th.T


@dataclass(frozen=True)
class CasimirResult:
    """Energy and optional forces for one geometry and temperature."""

    energy: SeriesValue
    geometry: BoxGeometry
    thermal: ThermalState
    forces: dict = field(default_factory=dict)
    normalization: str = "total"


@dataclass(frozen=True)
class DensityResult:
    """Energy and force densities of an infinitely extended geometry.

    ``forces`` maps an edge label to its force density.
    """

    energy: SeriesValue
    forces: dict
    normalization: str


# -- zero temperature ---------------------------------------------------------

def _energy_T0_raw(a, b, c, policy):
    return -(
        7 * ZETA4 * a * c / (32 * PI ** 2 * b ** 3)
        + a / (b ** 1.5 * c ** 0.5) * eval_M32(c / b, policy)
        + 2.0 * eval_M1(a, b, c, policy)
    )


def energy_T0(geom, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Renormalized zero-temperature Casimir energy of the box."""
    g = _geom(geom).canonical()
    return _energy_T0_raw(g.a, g.b, g.c, _pol(policy))


def _force_T0_raw(a, b, c, policy):
    return (
        7 * ZETA4 * c / (32 * PI ** 2 * b ** 3)
        + eval_M32(c / b, policy) / (b ** 1.5 * c ** 0.5)
        - (2.0 / a) * eval_M1(a, b, c, policy)
        - 4 * PI * eval_M0(a, b, c, policy)
    )


def force_T0(geom, axis: str = "a", policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Zero-temperature Casimir force on the walls normal to ``axis``."""
    l, p, q = _geom(geom).axis_first(axis)
    return _force_T0_raw(l, p, q, _pol(policy))


# -- finite temperature -------------------------------------------------------

def _a3_terms(a, b, c, T, policy):
    t = 1.0 / (2.0 * T)
    return (
        -eval_W3(a, b, c, t, policy),
        -a * eval_M1(c, b, t, policy),
        -a * c * math.sqrt(2 * T ** 3 / b) * eval_M32(2 * b * T, policy),
    )


def energy_finiteT(geom, th, policy: PrecisionPolicy | None = None, *,
                   canonical: bool = True) -> SeriesValue:
    """Renormalized Casimir free energy at temperature ``T > 0``.

    Parameters
    ----------
    geom : BoxGeometry or tuple
        Edges in any order.
    th : ThermalState or float
    canonical : bool
        Reorder edges to ``b <= c <= a`` first (fastest).  With ``False``
        the edges are used as given, which is only useful for checking
        that the result is independent of the labelling.
    """
    g = _geom(geom)
    if canonical:
        g = g.canonical()
    T = _positive_T(_thermal(th))
    w, m, s = _a3_terms(g.a, g.b, g.c, T, _pol(policy))
    return 4 * T * (w + m + s)


def _force_finiteT_raw(a, b, c, T, policy):
    t = 1.0 / (2.0 * T)
    fermi = eval_W3_dx(a, b, c, t, policy)
    return 4 * T * (
        fermi
        + eval_M1(c, b, t, policy)
        + c * math.sqrt(2 * T ** 3 / b) * eval_M32(2 * b * T, policy)
    )


def force_finiteT(geom, th, axis: str = "a",
                  policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Casimir force on the walls normal to ``axis`` at ``T > 0``."""
    l, p, q = _geom(geom).axis_first(axis)
    T = _positive_T(_thermal(th))
    return _force_finiteT_raw(l, p, q, T, _pol(policy))


def free_energy(geom, th=0.0, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Casimir free energy, routing ``T = 0`` to the zero-temperature formula."""
    th = _thermal(th)
    if th.is_zero:
        return energy_T0(geom, policy)
    return energy_finiteT(geom, th, policy)


def force(geom, th=0.0, axis: str = "a", policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Casimir force along ``axis``, routing ``T = 0`` to the zero-temperature formula."""
    th = _thermal(th)
    if th.is_zero:
        return force_T0(geom, axis, policy)
    return force_finiteT(geom, th, axis, policy)


def evaluate_box(geom, th=0.0, axes=(), policy: PrecisionPolicy | None = None) -> CasimirResult:
    """Energy plus the forces along the requested ``axes``."""
    g, th = _geom(geom), _thermal(th)
    forces = {ax: force(g, th, ax, policy) for ax in axes}
    return CasimirResult(free_energy(g, th, policy), g, th, forces)


# -- infinite geometries --------------------------------------------------------

def _positive(*vals):
    for v in vals:
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"lengths must be positive and finite, got {vals}")


def _waveguide_force_T0(b, c, policy):
    return (
        -21 * ZETA4 * c / (32 * PI ** 2 * b ** 4)
        + 2 * PI * c ** 0.5 / b ** 3.5 * eval_N_half(c / b, policy)
    )


def waveguide_T0(b: float, c: float, policy: PrecisionPolicy | None = None) -> DensityResult:
    """Energy and force densities per unit length of an infinite waveguide at ``T = 0``.

    The cross-section has sides ``b`` and ``c``; ``forces`` holds the
    densities on the walls normal to ``b`` and to ``c``.
    """
    _positive(b, c)
    policy = _pol(policy)
    lo, hi = min(b, c), max(b, c)
    energy = -(
        7 * ZETA4 * hi / (32 * PI ** 2 * lo ** 3)
        + eval_M32(hi / lo, policy) / (lo ** 1.5 * hi ** 0.5)
    )
    forces = {"b": _waveguide_force_T0(b, c, policy), "c": _waveguide_force_T0(c, b, policy)}
    return DensityResult(energy, forces, "per_unit_length")


def _waveguide_energy(b, c, T, policy):
    t = 1.0 / (2.0 * T)
    return -4 * T * (
        eval_M1(c, b, t, policy) + c * math.sqrt(2 * T ** 3 / b) * eval_M32(2 * b * T, policy)
    )


def _waveguide_force(b, c, T, policy):
    t = 1.0 / (2.0 * T)
    plate_like = (
        eval_M32(2 * T * b, policy) / b ** 1.5
        + (2 * PI * T / b ** 0.5) * eval_N_half(2 * T * b, policy)
    )
    return 8 * T * c * (
        (PI / b ** 3) * eval_N0(c, b, t, policy) - math.sqrt(2 * T ** 3) * plate_like
    )


def waveguide_finiteT(b: float, c: float, T: float,
                      policy: PrecisionPolicy | None = None) -> DensityResult:
    """Energy and force densities per unit length of an infinite waveguide at ``T > 0``."""
    _positive(b, c)
    T = _positive_T(_thermal(T))
    policy = _pol(policy)
    lo, hi = min(b, c), max(b, c)
    forces = {"b": _waveguide_force(b, c, T, policy), "c": _waveguide_force(c, b, T, policy)}
    return DensityResult(_waveguide_energy(lo, hi, T, policy), forces, "per_unit_length")


def waveguide(b: float, c: float, T: float = 0.0,
              policy: PrecisionPolicy | None = None) -> DensityResult:
    """Waveguide densities at any ``T >= 0``."""
    if _thermal(T).is_zero:
        return waveguide_T0(b, c, policy)
    return waveguide_finiteT(b, c, T, policy)


def parallel_plate(b: float, T: float = 0.0,
                   policy: PrecisionPolicy | None = None) -> DensityResult:
    """Energy and force densities per unit area between two plates at distance ``b``."""
    _positive(b)
    th = _thermal(T)
    if th.is_zero:
        energy = SeriesValue.exact(PLATE_T0_ENERGY / b ** 3)
        force_b = SeriesValue.exact(PLATE_T0_FORCE / b ** 4)
        return DensityResult(energy, {"b": force_b}, "per_unit_area")
    T = th.T
    policy = _pol(policy)
    x = 2 * b * T
    pref = (2 * T) ** 2.5 / b ** 0.5
    m32 = eval_M32(x, policy)
    energy = -pref * m32
    force_b = -2 * pref * (m32 / b + 2 * PI * T * eval_N_half(x, policy))
    return DensityResult(energy, {"b": force_b}, "per_unit_area")


# -- the eight-term edge-doubling operator --------------------------------------

_SHAT_TERMS = (
    (+1, (2, 2, 2)), (+1, (1, 1, 2)), (+1, (1, 2, 1)), (+1, (2, 1, 1)),
    (-1, (1, 2, 2)), (-1, (2, 1, 2)), (-1, (2, 2, 1)), (-1, (1, 1, 1)),
)


@dataclass(frozen=True)
class ShatOperand:
    """A function ``u(a, b, c)`` to which the edge-doubling operator is applied."""

    func: Callable
    label: str = "u"

    def __call__(self, a, b, c):
        return self.func(a, b, c)


def shat_apply(operand, geom):
    """Eight-term alternating combination of ``u`` at doubled edges.

    Returns whatever type ``u`` returns combined linearly, so a
    ``SeriesValue``-valued operand keeps its error bound.

    Notes
    -----
    Integer-mode lattice sums are turned into half-integer ones by this
    combination, because the doubled lattices cancel every even index.
    """
    g = _geom(geom)
    total = 0.0
    for sign, (fa, fb, fc) in _SHAT_TERMS:
        val = operand(fa * g.a, fb * g.b, fc * g.c)
        total = total + val if sign > 0 else total - val
    return total


def a3_via_shat(geom, T: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """The thermal sum ``A_3`` assembled by applying the operator to integer-mode sums.

    An independent route to the same quantity used by
    :func:`energy_finiteT`; ``4 T`` times it is the free energy.
    """
    g = _geom(geom).canonical()
    T = _positive_T(_thermal(T))
    policy = _pol(policy)
    ops = shat_identity_operands(T, policy)
    return sum((shat_apply(ops[name][0], g) for name in ("log", "bessel_v1", "bessel_y32")),
               SeriesValue.exact(0.0))


def shat_identity_operands(T: float, policy: PrecisionPolicy | None = None) -> dict:
    """Operands and their expected images under the operator.

    Returns a mapping ``name -> (operand, expected)`` where ``expected``
    is a function of ``(a, b, c)``.  These cover the whole chain from
    the integer-mode thermal sum to the half-integer result.
    """
    policy = _pol(policy)
    t1, t2 = 1.0 / T, 1.0 / (2.0 * T)
    z4, z3 = ZETA4, ZETA3

    def const_part(a, b, c):
        return (3 * z3 * a * b * T ** 2 / (16 * PI) + 3 * z3 * a * c * T ** 2 / (16 * PI)
                - PI * a * T / 48 + z3 * a / (32 * PI * b ** 2 * T)
                + 0.5 * (eval_Z(2, t1, b, c, policy=policy) - eval_Z(2, t2, b, c, policy=policy))
                - 0.5 * a * T * eval_Y(1, b * T, policy) + a * T * eval_Y(1, 2 * b * T, policy))

    def polynomial(a, b, c):
        return -7 * z4 * a * b * c * T ** 3 / (8 * PI ** 2) - z4 * a * c / (16 * PI ** 2 * b ** 3 * T)

    def y32(a, b, c):
        return a * eval_Y(1.5, c / b, policy) / (b ** 1.5 * c ** 0.5)

    def v1(a, b, c):
        return eval_V1(a, b, c, policy)

    def log(a, b, c):
        return eval_Z(3, a, b, c, t2, policy=policy) - eval_Z(3, a, b, c, t1, policy=policy)

    def bessel_v1(a, b, c):
        return -a * eval_V1(c, b, t2, policy) + a * eval_V1(c, b, t1, policy)

    def bessel_y32(a, b, c):
        return (-a * c * math.sqrt(2 * T ** 3 / b) * eval_Y(1.5, 2 * T * b, policy)
                + 0.5 * a * c * math.sqrt(T ** 3 / b) * eval_Y(1.5, T * b, policy))

    expected = {
        "constant": lambda a, b, c: 0.0,
        "polynomial": lambda a, b, c: (-7 * z4 * a * b * c * T ** 3 / (8 * PI ** 2)
                                       + 7 * z4 * a * c / (128 * PI ** 2 * b ** 3 * T)),
        "y32": lambda a, b, c: -a / (b ** 1.5 * c ** 0.5) * eval_M32(c / b, policy),
        "v1": lambda a, b, c: -eval_M1(a, b, c, policy),
        "log": lambda a, b, c: -eval_W3(a, b, c, t2, policy),
        "bessel_v1": lambda a, b, c: -a * eval_M1(c, b, t2, policy),
        "bessel_y32": lambda a, b, c: (-a * c * math.sqrt(2 * T ** 3 / b)
                                       * eval_M32(2 * b * T, policy)),
    }
    funcs = {"constant": const_part, "polynomial": polynomial, "y32": y32, "v1": v1,
             "log": log, "bessel_v1": bessel_v1, "bessel_y32": bessel_y32}
    return {k: (ShatOperand(funcs[k], k), expected[k]) for k in funcs}


# -- comparison with the classic slab result --------------------------------------

def slab_energy_function(xi: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Dimensionless slab free energy ``b**3 F_plate`` as a function of ``xi = b T``."""
    _positive(xi)
    return -(2 * xi) ** 2.5 * eval_M32(2 * xi, policy)


def slab_energy_sinh_form(xi: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Same quantity from its single alternating series of hyperbolic functions.

    ``xi / (4 pi) * sum_n (-1)**n (sinh x + x cosh x) / (n**3 sinh(x)**2)``
    with ``x = 2 pi xi n``, rewritten as ``(1 + x coth x) / sinh x`` with
    exponentials of ``-x`` only so that no overflow occurs.
    """
    _positive(xi)
    rate = 2 * PI * xi

    def kernel(n):
        x = rate * n
        q = np.exp(-x)
        q2 = q * q
        inv_sinh = 2 * q / (1 - q2)
        coth = (1 + q2) / (1 - q2)
        sign = np.where(n % 2 == 1, -1.0, 1.0)
        return sign * (1 + x * coth) * inv_sinh / n ** 3

    total = box_sum(kernel, (1,), (rate,), _pol(policy), alternating_axis=0, name="slab sinh")
    return xi / (4 * PI) * total


def blackbody_slab_term(xi: float) -> float:
    """Blackbody contribution ``-7 pi**2 xi**4 / 180`` to the dimensionless slab energy."""
    return -7 * PI ** 2 * xi ** 4 / 180


def gundersen_comparison(xi: float, policy: PrecisionPolicy | None = None):
    """Return ``(g, blackbody)`` where ``g + blackbody`` is the unsubtracted slab energy.

    ``g`` is the renormalized dimensionless slab energy; adding the
    blackbody term recovers the classic unrenormalized free energy
    ``f(xi)`` tabulated in the older literature.
    """
    return slab_energy_function(xi, policy), blackbody_slab_term(xi)
