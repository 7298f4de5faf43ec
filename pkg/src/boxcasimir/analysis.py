"""Force-sign maps, critical lengths and convergence profiles.

Everything here orchestrates calls into :mod:`boxcasimir.fermion`; no
physics is re-derived.  Forces are classified with an absolute dead zone
(:data:`F_TOL`), roots are located by plain bisection, and grid results
are always returned in grid order regardless of how many worker
processes evaluated them.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Callable, Sequence

import numpy as np

from . import fermion
from .errors import BracketError, DomainError
from .geometry import AXES, BoxGeometry
from .series import PrecisionPolicy

F_TOL = 1e-9
ROOT_TOL = 1e-4
ASPECT_BRACKET = (1.05, 1.5)

REPULSIVE, ATTRACTIVE, INDETERMINATE = "repulsive", "attractive", "indeterminate"
REGION_LABELS = ("I", "II", "III", "IV")
CSV_COLUMNS = ("a", "b", "c", "T", "f_a", "f_b", "f_c",
               "sign_a", "sign_b", "sign_c", "region")


def classify_sign(value: float, f_tol: float = F_TOL) -> str:
    """Sign label of a force with the dead zone ``|f| < f_tol``."""
    if not math.isfinite(value) or abs(value) < f_tol:
        return INDETERMINATE
    return REPULSIVE if value > 0 else ATTRACTIVE


def region_label(sign_a: str, sign_b: str, sign_c: str) -> str | None:
    """Region of the ``b = 1`` map or ``None`` when it cannot be assigned.

    I: repulsive along ``a`` only.  II: repulsive along ``a`` and ``c``.
    III: attractive along every edge.  IV: repulsive along ``c`` only.
    """
    if INDETERMINATE in (sign_a, sign_b, sign_c) or sign_b != ATTRACTIVE:
        return None
    rep_a, rep_c = sign_a == REPULSIVE, sign_c == REPULSIVE
    return {(True, False): "I", (True, True): "II",
            (False, False): "III", (False, True): "IV"}[(rep_a, rep_c)]


# -- bisection ------------------------------------------------------------------

@dataclass(frozen=True)
class Root:
    """A sign change of ``f`` located to within ``hi - lo``."""

    value: float
    lo: float
    hi: float
    f_lo: float
    f_hi: float
    evaluations: int

    @property
    def half_width(self) -> float:
        return 0.5 * (self.hi - self.lo)


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float = ROOT_TOL,
           max_iter: int = 200, f_lo: float | None = None,
           f_hi: float | None = None) -> Root:
    """Bisection on ``[lo, hi]`` until the bracket is narrower than ``tol``.

    Raises
    ------
    BracketError
        If ``f`` has the same sign (or a zero dead-zone sign) at both ends.
    """
    if not lo < hi:
        raise DomainError(f"empty bracket [{lo}, {hi}]")
    evals = 0
    if f_lo is None:
        f_lo, evals = float(f(lo)), evals + 1
    if f_hi is None:
        f_hi, evals = float(f(hi)), evals + 1
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)) or f_lo * f_hi > 0:
        raise BracketError(f"no sign change on [{lo:.6g}, {hi:.6g}]: "
                           f"f = {f_lo:.6g}, {f_hi:.6g}")
    for _ in range(max_iter):
        if f_lo == 0.0:
            hi, f_hi = lo, f_lo
            break
        if f_hi == 0.0:
            lo, f_lo = hi, f_hi
            break
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = float(f(mid))
        evals += 1
        if (f_mid < 0) == (f_lo < 0) and f_mid != 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return Root(0.5 * (lo + hi), lo, hi, f_lo, f_hi, evals)


def scan_bracket(f: Callable[[float], float], lo: float, hi: float, n: int = 21):
    """First subinterval of an ``n``-point scan on which ``f`` changes sign.

    Returns ``(x0, x1, f0, f1)`` or ``None``.
    """
    xs = np.linspace(lo, hi, n)
    prev = float(f(xs[0]))
    for x0, x1 in zip(xs[:-1], xs[1:]):
        cur = float(f(x1))
        if prev * cur <= 0 and (prev != 0 or cur != 0):
            return float(x0), float(x1), prev, cur
        prev = cur
    return None


# -- grid evaluation ----------------------------------------------------------------

def _box_forces(point, axes, policy):
    a, b, c, T = point
    g = BoxGeometry(a, b, c)
    return tuple(float(fermion.force(g, T, ax, policy)) for ax in axes)


def _map_points(fn, points, workers):
    if workers is None or workers <= 1 or len(points) < 2:
        return [fn(p) for p in points]
    chunk = max(1, len(points) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, points, chunksize=chunk))


@dataclass(frozen=True)
class RegionRecord:
    """Forces and their sign labels at one grid point.

    Components that were not requested are ``None``.
    """

    a: float
    b: float
    c: float
    T: float
    f_a: float | None
    f_b: float | None
    f_c: float | None
    sign_a: str | None
    sign_b: str | None
    sign_c: str | None
    region: str | None

    @property
    def geometry(self) -> BoxGeometry:
        return BoxGeometry(self.a, self.b, self.c)


@dataclass(frozen=True)
class Crossing:
    """Zero of one force component along one grid line.

    ``line`` holds the fixed coordinates, ``axis`` the coordinate that
    varies, and ``value`` the linear-interpolation estimate inside the
    grid cell ``[lo, hi]`` whose endpoints have opposite signs.
    """

    component: str
    axis: str
    line: dict
    value: float
    lo: float
    hi: float


@dataclass
class RegionMap:
    """Sign field of the Casimir forces on a grid plus its zero crossings."""

    records: list
    zero_crossings: list
    grid: dict
    f_tol: float = F_TOL
    diagnostics: dict = field(default_factory=dict)

    def regions(self) -> dict:
        """Count of grid points per region label (``None`` for unassigned)."""
        out: dict = {}
        for r in self.records:
            out[r.region] = out.get(r.region, 0) + 1
        return out

    def lookup(self, a: float, b: float, c: float) -> RegionRecord:
        for r in self.records:
            if (r.a, r.b, r.c) == (a, b, c):
                return r
        raise KeyError((a, b, c))

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "f_tol": self.f_tol,
            "records": [asdict(r) for r in self.records],
            "zero_crossings": [asdict(x) for x in self.zero_crossings],
            "diagnostics": self.diagnostics,
        }


def _build_records(points, forces, axes, f_tol, classify):
    records = []
    for (a, b, c, T), vals in zip(points, forces):
        fv = dict(zip(axes, vals))
        sv = {ax: classify_sign(v, f_tol) for ax, v in fv.items()}
        region = region_label(sv["a"], sv["b"], sv["c"]) if classify else None
        records.append(RegionRecord(a, b, c, T, fv.get("a"), fv.get("b"), fv.get("c"),
                                    sv.get("a"), sv.get("b"), sv.get("c"), region))
    return records


def _line_crossings(records, component, axis, fixed_axes):
    """Sign changes of ``component`` along lines where only ``axis`` varies."""
    lines: dict = {}
    for r in records:
        key = tuple(getattr(r, k) for k in fixed_axes)
        lines.setdefault(key, []).append(r)
    out = []
    for key, recs in lines.items():
        recs.sort(key=lambda r: getattr(r, axis))
        for r0, r1 in zip(recs[:-1], recs[1:]):
            s0, s1 = getattr(r0, "sign_" + component), getattr(r1, "sign_" + component)
            if INDETERMINATE in (s0, s1) or s0 == s1:
                continue
            x0, x1 = getattr(r0, axis), getattr(r1, axis)
            f0, f1 = getattr(r0, "f_" + component), getattr(r1, "f_" + component)
            x = x0 + (x1 - x0) * f0 / (f0 - f1)
            out.append(Crossing(component, axis, dict(zip(fixed_axes, key)), x, x0, x1))
    return out


def _axis_values(values) -> list[float]:
    if isinstance(values, dict):
        return [float(x) for x in np.linspace(values["min"], values["max"], int(values["num"]))]
    return [float(x) for x in values]


def classify_regions(a_values, c_values, T: float = 0.0, b: float = 1.0,
                     policy: PrecisionPolicy | None = None, f_tol: float = F_TOL,
                     workers: int | None = None) -> RegionMap:
    """Force-sign regions over an ``(a, c)`` grid at fixed ``b``.

    Parameters
    ----------
    a_values, c_values : sequence of float or dict
        Grid coordinates, or ``{"min", "max", "num"}`` for a uniform grid.
    T : float
        Temperature.
    b : float
        The fixed edge; lengths are measured in units of it.
    workers : int, optional
        Number of processes; results are merged in grid order.

    Returns
    -------
    RegionMap
        Records in ``a``-major order with region labels, and zero
        crossings of ``f_a`` and ``f_c`` along both grid directions.
    """
    av, cv = _axis_values(a_values), _axis_values(c_values)
    points = [(a, float(b), c, float(T)) for a in av for c in cv]
    fn = partial(_box_forces, axes=AXES, policy=policy)
    forces = _map_points(fn, points, workers)
    records = _build_records(points, forces, AXES, f_tol, classify=True)
    crossings = []
    for comp in ("a", "c"):
        crossings += _line_crossings(records, comp, "a", ("b", "c", "T"))
        crossings += _line_crossings(records, comp, "c", ("a", "b", "T"))
    grid = {"a": av, "b": [float(b)], "c": cv, "T": float(T)}
    attractive_b = all(r.sign_b == ATTRACTIVE for r in records)
    return RegionMap(records, crossings, grid, f_tol,
                     {"force_b_always_attractive": attractive_b})


def zero_force_surface(T: float = 1.0, a_values=None, b_values=None, c_values=None,
                       policy: PrecisionPolicy | None = None, f_tol: float = F_TOL,
                       workers: int | None = None) -> RegionMap:
    """Sign field of the force along ``a`` over a 3-D grid.

    The default grid covers ``[0.1, 2]`` on every edge in steps of 0.1.
    Crossings are reported along the ``b`` and ``c`` grid lines.  The
    diagnostics hold the largest sign asymmetry under ``b <-> c``.
    """
    default = [round(0.1 * i, 10) for i in range(1, 21)]
    av = _axis_values(default if a_values is None else a_values)
    bv = _axis_values(default if b_values is None else b_values)
    cv = _axis_values(default if c_values is None else c_values)
    points = [(a, b, c, float(T)) for a in av for b in bv for c in cv]
    fn = partial(_box_forces, axes=("a",), policy=policy)
    forces = _map_points(fn, points, workers)
    records = _build_records(points, forces, ("a",), f_tol, classify=False)
    crossings = (_line_crossings(records, "a", "b", ("a", "c", "T"))
                 + _line_crossings(records, "a", "c", ("a", "b", "T")))
    signs = {(r.a, r.b, r.c): r.sign_a for r in records}
    asym = sum(1 for (a, b, c), s in signs.items()
               if (a, c, b) in signs and signs[(a, c, b)] != s)
    grid = {"a": av, "b": bv, "c": cv, "T": float(T)}
    return RegionMap(records, crossings, grid, f_tol, {"b_c_sign_mismatches": asym})


def diagonal_zero_force(a: float, T: float, lo: float = 1.2, hi: float = 2.0,
                        tol: float = ROOT_TOL,
                        policy: PrecisionPolicy | None = None) -> Root:
    """Root of ``f_a(a, s, s, T)`` in ``s``, the zero-force line on the diagonal ``b = c``."""
    return bisect(lambda s: float(fermion.force((a, s, s), T, "a", policy)), lo, hi, tol)


# -- critical lengths ---------------------------------------------------------------

def _waveguide_force_c(b, c, T, policy):
    return float(fermion.waveguide(b, c, T, policy).forces["c"])


def _box_force_b(b, a, c, T, policy):
    return float(fermion.force((a, b, c), T, "b", policy))


def find_critical_aspect_T0(b: float = 1.0, bracket: tuple = ASPECT_BRACKET,
                            tol: float = ROOT_TOL,
                            policy: PrecisionPolicy | None = None) -> float:
    """Aspect ratio ``c / b`` at which the zero-temperature waveguide force along ``c`` vanishes.

    ``bracket`` is given in units of ``b`` and the tolerance applies to
    the ratio.

    Raises
    ------
    BracketError
        If the force has the same sign at both ends of the bracket.
    """
    root = bisect(lambda c: _waveguide_force_c(b, c, 0.0, policy),
                  bracket[0] * b, bracket[1] * b, tol * b)
    return root.value / b


@dataclass
class CriticalCurve:
    """Roots of one force component along a sweep of a control parameter.

    ``roots`` holds ``None`` where no sign change was found in the scan.
    """

    mode: str
    parameter: str
    values: list
    roots: list
    bracket_widths: list
    fixed: dict
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


CURVE_MODES = ("c_cr_vs_b_at_T", "c_cr_vs_T", "b_cr_vs_T")


def _monotonicity(values, roots) -> dict:
    pts = [(v, r) for v, r in zip(values, roots) if r is not None]
    if len(pts) < 2:
        return {"trend": "undetermined", "argmax": None, "interior_maximum": False}
    rs = [r for _, r in pts]
    d = np.diff(rs)
    trend = ("increasing" if np.all(d > 0) else "decreasing" if np.all(d < 0)
             else "non-monotonic")
    k = int(np.argmax(rs))
    return {"trend": trend, "argmax": pts[k][0],
            "interior_maximum": 0 < k < len(rs) - 1}


def find_critical_curve(mode: str, values: Sequence[float], *, T: float = 1.0,
                        b: float = 0.5, a: float = 1.0, c: float = 1.0,
                        scan_points: int = 31, tol: float = ROOT_TOL,
                        policy: PrecisionPolicy | None = None) -> CriticalCurve:
    """Critical edge length as a function of a swept parameter.

    Modes
    -----
    ``c_cr_vs_b_at_T``
        Waveguide at temperature ``T``; ``values`` are ``b``; the root is the
        ``c`` in ``(b, 3b]`` where the force along ``c`` flips sign.
    ``c_cr_vs_T``
        Same force at fixed ``b``; ``values`` are temperatures.
    ``b_cr_vs_T``
        Box with edges ``a`` and ``c`` fixed (unit cube by default);
        ``values`` are temperatures and the root is the ``b`` in
        ``(max(a, c), 4 max(a, c)]`` where the force along ``b`` flips sign.

    Each root comes from a coarse scan (``scan_points``) followed by
    bisection to ``tol``.
    """
    if mode not in CURVE_MODES:
        raise DomainError(f"mode must be one of {CURVE_MODES}, got {mode!r}")
    values = [float(v) for v in values]
    roots, widths = [], []
    for v in values:
        if mode == "c_cr_vs_b_at_T":
            f = partial(_waveguide_force_c, v, T=T, policy=policy)
            lo, hi = v * 1.001, 3 * v
        elif mode == "c_cr_vs_T":
            f = partial(_waveguide_force_c, b, T=v, policy=policy)
            lo, hi = b * 1.001, 3 * b
        else:
            f = partial(_box_force_b, a=a, c=c, T=v, policy=policy)
            lo, hi = max(a, c), 4 * max(a, c)
        br = scan_bracket(f, lo, hi, scan_points)
        if br is None:
            roots.append(None)
            widths.append(None)
            continue
        root = bisect(f, br[0], br[1], tol, f_lo=br[2], f_hi=br[3])
        roots.append(root.value)
        widths.append(root.hi - root.lo)
    parameter = "b" if mode == "c_cr_vs_b_at_T" else "T"
    fixed = ({"T": T} if mode == "c_cr_vs_b_at_T" else {"b": b} if mode == "c_cr_vs_T"
             else {"a": a, "c": c})
    return CriticalCurve(mode, parameter, values, roots, widths, fixed,
                         _monotonicity(values, roots))


# -- approach to infinite geometries ------------------------------------------------

PROFILE_FAMILIES = ("plate_edge", "waveguide_length")


@dataclass
class ConvergenceProfile:
    """Box densities normalized by the infinite-geometry limit.

    ``convergence_edge`` is the smallest sampled edge beyond which both
    ratios stay within ``within`` of one, or ``None`` if none does.
    """

    family: str
    T: float
    edges: list
    energy_ratio: list
    force_ratio: list
    convergence_edge: float | None
    within: float

    def to_dict(self) -> dict:
        return asdict(self)


def _settles(edges, *ratio_lists, within):
    ok = [all(abs(r[i] - 1) <= within for r in ratio_lists) for i in range(len(edges))]
    edge = None
    for i in range(len(edges) - 1, -1, -1):
        if not ok[i]:
            break
        edge = edges[i]
    return edge


def normalized_convergence_profile(family: str, T: float, edges=None, *,
                                   separation: float = 1.0, width: float = 1.0,
                                   within: float = 0.01,
                                   policy: PrecisionPolicy | None = None
                                   ) -> ConvergenceProfile:
    """Ratio of box to infinite-geometry densities as an edge grows.

    ``plate_edge``
        Square plates of side ``e`` at distance ``separation``:
        ``F(e, d, e) / (e**2 F_plate(d))``, likewise for the force normal
        to the plates.
    ``waveguide_length``
        A ``separation x width`` waveguide of length ``e``:
        ``F(e, b, c) / (e F_guide(b, c))`` and the force along ``b``.
    """
    if family not in PROFILE_FAMILIES:
        raise DomainError(f"family must be one of {PROFILE_FAMILIES}, got {family!r}")
    edges = [float(e) for e in (np.linspace(1.0, 4.0, 31) if edges is None else edges)]
    d = float(separation)
    if family == "plate_edge":
        ref = fermion.parallel_plate(d, T, policy)
        geoms = [BoxGeometry(e, d, e) for e in edges]
        scale = [e * e for e in edges]
    else:
        ref = fermion.waveguide(d, width, T, policy)
        geoms = [BoxGeometry(e, d, width) for e in edges]
        scale = list(edges)
    e_ref, f_ref = float(ref.energy), float(ref.forces["b"])
    e_ratio = [float(fermion.free_energy(g, T, policy)) / (s * e_ref)
               for g, s in zip(geoms, scale)]
    f_ratio = [float(fermion.force(g, T, "b", policy)) / (s * f_ref)
               for g, s in zip(geoms, scale)]
    return ConvergenceProfile(family, float(T), edges, e_ratio, f_ratio,
                              _settles(edges, e_ratio, f_ratio, within=within), within)


# -- output ---------------------------------------------------------------------------

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def write_region_csv(region_map: RegionMap, path) -> None:
    """One row per grid point with the columns of :data:`CSV_COLUMNS`."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for r in region_map.records:
            w.writerow([_fmt(getattr(r, k)) for k in CSV_COLUMNS])


def write_json(obj, path, manifest: dict | None = None) -> None:
    """Dump ``obj.to_dict()`` (or a plain dict) with an optional manifest block."""
    data = obj.to_dict() if hasattr(obj, "to_dict") else dict(obj)
    if manifest is not None:
        data = {"manifest": manifest, **data}
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
