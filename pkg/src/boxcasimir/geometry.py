"""Box geometry and temperature containers."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

AXES = ("a", "b", "c")

# thresholds on the dimensionless products T * edge used for labelling only
LOW_T_PRODUCT = 0.1
HIGH_T_PRODUCT = 10.0


@dataclass(frozen=True)
class BoxGeometry:
    """Edge lengths of a rectangular box in natural units."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in AXES:
            v = _as_float(getattr(self, name))
            if v is None or not (math.isfinite(v) and v > 0):
                raise DomainError(f"edge {name} must be a positive finite number, "
                                  f"got {getattr(self, name)!r}")
            object.__setattr__(self, name, v)

    @property
    def edges(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def canonical(self) -> "BoxGeometry":
        """Permutation with ``b <= c <= a``."""
        lo, mid, hi = sorted(self.edges)
        return BoxGeometry(hi, lo, mid)

    def edge(self, axis: str) -> float:
        return getattr(self, _check_axis(axis))

    def with_edge(self, axis: str, value: float) -> "BoxGeometry":
        edges = dict(zip(AXES, self.edges))
        edges[_check_axis(axis)] = value
        return BoxGeometry(**edges)

    def axis_first(self, axis: str) -> tuple[float, float, float]:
        """``(l, p, q)`` with ``l`` the edge along ``axis`` and ``p <= q``.

        This is the ordering in which force formulas treat the
        differentiated edge; the remaining two edges are symmetric.
        """
        l = self.edge(axis)
        others = sorted(getattr(self, x) for x in AXES if x != axis)
        return (l, others[0], others[1])

    def volume(self) -> float:
        return self.a * self.b * self.c


def _as_float(v):
    if isinstance(v, (bool, str)):
        return None
    try:
        return float(v)
    except (TypeError, ValueError):
        return None


def _check_axis(axis):
    if axis not in AXES:
        raise DomainError(f"axis must be one of {AXES}, got {axis!r}")
    return axis


@dataclass(frozen=True)
class ThermalState:
    """Temperature in inverse-length units (``k_B = hbar = c = 1``)."""

    T: float

    def __post_init__(self):
        v = _as_float(self.T)
        if v is None or not (math.isfinite(v) and v >= 0):
            raise DomainError(f"temperature must be finite and >= 0, got {self.T!r}")
        object.__setattr__(self, "T", v)

    @property
    def is_zero(self) -> bool:
        return self.T == 0.0

    def regime(self, geom: BoxGeometry | None = None) -> str:
        """``"zero"``, ``"low"``, ``"finite"`` or ``"high"``.

        Without a geometry the unit length is used as reference.  ``low``
        means the thermal wavelength exceeds ten times the largest edge,
        ``high`` that it is below a tenth of the smallest edge.
        """
        if self.is_zero:
            return "zero"
        edges = geom.edges if geom is not None else (1.0,)
        if self.T * max(edges) < LOW_T_PRODUCT:
            return "low"
        if self.T * min(edges) > HIGH_T_PRODUCT:
            return "high"
        return "finite"
