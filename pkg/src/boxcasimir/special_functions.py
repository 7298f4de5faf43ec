"""Modified Bessel functions K_nu of real argument and a few zeta constants.

Only the orders that occur in the lattice sums are supported: the integer
orders 0 and 1 and the half-integer orders 1/2, 3/2, ..., 17/2.

Integer orders are evaluated piecewise:

* ``z <= 2``: the ascending series with its logarithmic term;
* ``2 < z <= 25``: the trapezoid rule applied to the scaled integral
  ``exp(z) K_nu(z) = int_0^inf exp(-z (cosh t - 1)) cosh(nu t) dt``.
  The integrand is entire and decays double exponentially, so the rule
  converges geometrically in the node spacing;
* ``z > 25``: the Hankel asymptotic expansion, cut at its smallest term.

Half-integer orders use the terminating closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedOrderError
from .series import SeriesValue

EULER_GAMMA = 0.57721566490153286061
ZETA2 = math.pi ** 2 / 6.0
ZETA3 = 1.2020569031595942854
ZETA4 = math.pi ** 4 / 90.0

MAX_HALF_INDEX = 8
UNDERFLOW_Z = 700.0
SMALL_Z = 2.0
LARGE_Z = 25.0

# relative accuracy claimed for the piecewise integer-order evaluation
_INTEGER_REL_ERR = 2e-14
_HALF_REL_ERR = 8 * np.finfo(float).eps


def zeta_constant(s: int) -> float:
    """Riemann zeta at ``s`` in {2, 3, 4}."""
    try:
        return {2: ZETA2, 3: ZETA3, 4: ZETA4}[int(s)]
    except KeyError:
        raise DomainError(f"zeta constant only stored for s in {{2, 3, 4}}, got {s}") from None


@dataclass(frozen=True)
class BesselOrder:
    """Order of a supported K_nu.

    ``kind`` is ``"integer"`` (``nu = index``, index 0 or 1) or
    ``"half_integer"`` (``nu = index + 1/2``, index 0..8).
    """

    kind: str
    index: int

    def __post_init__(self):
        if self.kind == "integer":
            if self.index not in (0, 1):
                raise UnsupportedOrderError(f"integer order must be 0 or 1, got {self.index}")
        elif self.kind == "half_integer":
            if not 0 <= self.index <= MAX_HALF_INDEX:
                raise UnsupportedOrderError(
                    f"half-integer index must be in [0, {MAX_HALF_INDEX}], got {self.index}")
        else:
            raise UnsupportedOrderError(f"unknown order kind {self.kind!r}")

    @property
    def nu(self) -> float:
        return float(self.index) + (0.5 if self.kind == "half_integer" else 0.0)

    @classmethod
    def from_nu(cls, nu) -> "BesselOrder":
        if isinstance(nu, BesselOrder):
            return nu
        nu = abs(float(nu))  # K_{-nu} = K_nu
        if nu == int(nu):
            return cls("integer", int(nu))
        if 2 * nu == int(2 * nu):
            return cls("half_integer", int(nu - 0.5))
        raise UnsupportedOrderError(f"order {nu} is neither integer nor half-integer")


# -- integer orders -----------------------------------------------------------

_N_SERIES = 17
_CHUNK = 1 << 15
_HARMONIC = np.concatenate(([0.0], np.cumsum(1.0 / np.arange(1, _N_SERIES + 1))))
_INV_FACT2 = np.array([1.0 / math.factorial(k) ** 2 for k in range(_N_SERIES)])
_INV_FACT_FACT1 = np.array([1.0 / (math.factorial(k) * math.factorial(k + 1))
                            for k in range(_N_SERIES)])
# psi(k+1) + psi(k+2) = H_k + H_{k+1} - 2 gamma
_PSI_PAIR = _HARMONIC[:_N_SERIES] + _HARMONIC[1:_N_SERIES + 1] - 2 * EULER_GAMMA

_TRAP_H = 0.1
_TRAP_T = np.arange(0.0, 4.5 + _TRAP_H / 2, _TRAP_H)
_TRAP_W = np.full(_TRAP_T.shape, _TRAP_H)
_TRAP_W[0] = _TRAP_H / 2
_COSH_T_M1 = np.cosh(_TRAP_T) - 1.0


def _powers(u):
    return u[:, None] ** np.arange(_N_SERIES)


def _chunked(func, z):
    if z.size <= _CHUNK:
        return func(z)
    return np.concatenate([func(z[lo:lo + _CHUNK]) for lo in range(0, z.size, _CHUNK)])


def _k0_small(z):
    u = z * z / 4.0
    p = _powers(u)
    i0 = p @ _INV_FACT2
    tail = p @ (_INV_FACT2 * _HARMONIC[:_N_SERIES])
    return -(np.log(z / 2.0) + EULER_GAMMA) * i0 + tail


def _k1_small(z):
    u = z * z / 4.0
    p = _powers(u)
    i1 = (z / 2.0) * (p @ _INV_FACT_FACT1)
    rest = p @ (_INV_FACT_FACT1 * _PSI_PAIR)
    return 1.0 / z + np.log(z / 2.0) * i1 - (z / 4.0) * rest


_TRAP_W1 = _TRAP_W * np.cosh(_TRAP_T)


def _kn_scaled_mid(n, z):
    """exp(z) K_n(z) by the trapezoid rule."""
    weights = _TRAP_W1 if n else _TRAP_W
    out = np.empty_like(z)
    for lo in range(0, z.size, _CHUNK):  # bound the (points x nodes) temporary
        zc = z[lo:lo + _CHUNK]
        out[lo:lo + _CHUNK] = np.exp(-zc[:, None] * _COSH_T_M1) @ weights
    return out


def _kn_scaled_large(n, z):
    """exp(z) K_n(z) from the asymptotic expansion, cut at the smallest term."""
    mu = 4.0 * n * n
    term = np.ones_like(z)
    total = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, 40):
        nxt = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        active &= np.abs(nxt) < np.abs(term)
        term = np.where(active, nxt, term)
        total = total + np.where(active, nxt, 0.0)
        if not active.any() or np.all(np.abs(nxt) < 1e-17 * np.abs(total)):
            break
    return total * np.sqrt(np.pi / (2.0 * z))


def _check_z(z):
    z = np.asarray(z, dtype=float)
    if np.any(~(z > 0.0)):
        raise DomainError("Bessel argument must be strictly positive")
    return z


def kn_scaled(n: int, z) -> np.ndarray:
    """``exp(z) * K_n(z)`` for ``n`` in {0, 1}, vectorised."""
    if n not in (0, 1):
        raise UnsupportedOrderError(f"integer order must be 0 or 1, got {n}")
    z = _check_z(z)
    flat = np.atleast_1d(z).ravel()
    out = np.empty_like(flat)
    small = flat <= SMALL_Z
    large = flat > LARGE_Z
    mid = ~(small | large)
    if small.any():
        zs = flat[small]
        out[small] = _chunked(_k0_small if n == 0 else _k1_small, zs) * np.exp(zs)
    if mid.any():
        out[mid] = _kn_scaled_mid(n, flat[mid])
    if large.any():
        out[large] = _kn_scaled_large(n, flat[large])
    return out.reshape(z.shape)


def _kn(n, z):
    z = _check_z(z)
    flat = np.atleast_1d(z).ravel()
    out = np.zeros_like(flat)
    small = flat <= SMALL_Z
    if small.any():
        zs = flat[small]
        out[small] = _chunked(_k0_small if n == 0 else _k1_small, zs)
    rest = (~small) & (flat <= UNDERFLOW_Z)
    if rest.any():
        zr = flat[rest]
        out[rest] = kn_scaled(n, zr) * np.exp(-zr)
    return out.reshape(z.shape)


def k0(z) -> np.ndarray:
    """K_0(z), vectorised; exactly 0 beyond ``z = 700``."""
    return _kn(0, z)


def k1(z) -> np.ndarray:
    """K_1(z), vectorised; exactly 0 beyond ``z = 700``."""
    return _kn(1, z)


# -- half-integer orders ------------------------------------------------------

_HALF_COEFFS = [
    np.array([math.factorial(i + k) / (math.factorial(k) * math.factorial(i - k) * 2.0 ** k)
              for k in range(i + 1)])
    for i in range(MAX_HALF_INDEX + 1)
]


def kv_half_scaled(i: int, z) -> np.ndarray:
    """``exp(z) * K_{i+1/2}(z)`` from the terminating closed form."""
    if not 0 <= i <= MAX_HALF_INDEX:
        raise UnsupportedOrderError(f"half-integer index must be in [0, {MAX_HALF_INDEX}]")
    z = _check_z(z)
    inv = 1.0 / z
    poly = np.zeros_like(z)
    for c in _HALF_COEFFS[i][::-1]:  # Horner in 1/z
        poly = poly * inv + c
    return np.sqrt(np.pi / 2.0 * inv) * poly


def kv_half(i: int, z) -> np.ndarray:
    """K_{i+1/2}(z), vectorised; exactly 0 beyond ``z = 700``."""
    z = _check_z(z)
    with np.errstate(under="ignore"):
        e = np.where(z <= UNDERFLOW_Z, np.exp(-np.minimum(z, UNDERFLOW_Z)), 0.0)
    return kv_half_scaled(i, z) * e


def bessel_kv(nu, z) -> np.ndarray:
    """Vectorised K_nu(z) for any supported order (float or BesselOrder)."""
    order = BesselOrder.from_nu(nu)
    if order.kind == "integer":
        return _kn(order.index, z)
    return kv_half(order.index, z)


def bessel_k(order, z: float) -> SeriesValue:
    """K_nu(z) with an error bound and an underflow flag.

    Parameters
    ----------
    order : BesselOrder or float
        Supported order.
    z : float
        Positive real argument.

    Returns
    -------
    SeriesValue
        ``underflow`` is set, and the value is exactly 0, when
        ``z > 700``.
    """
    order = BesselOrder.from_nu(order)
    z = float(z)
    if not z > 0.0:
        raise DomainError(f"Bessel argument must be strictly positive, got {z}")
    if z > UNDERFLOW_Z:
        return SeriesValue(0.0, 0.0, 0, underflow=True)
    value = float(bessel_kv(order, z))
    if order.kind == "integer":
        return SeriesValue(value, float(_INTEGER_REL_ERR * value), _N_SERIES)
    return SeriesValue(value, float(_HALF_REL_ERR * value), order.index + 1)


def bessel_k_derivative_identity_check(nu, z: float, i: int = 1, step: float | None = None) -> float:
    """Residual of the lowering relation for ``z**nu K_nu(z)``.

    Checks ``(d / (z dz))**i [z**nu K_nu(z)] = (-1)**i z**(nu-i) K_{nu-i}(z)``
    with central differences.  Writing ``w = z**2 / 2`` turns the operator
    into a plain ``i``-th derivative in ``w``, which is approximated by the
    central stencil at steps ``h`` and ``h/2`` combined by Richardson
    extrapolation.

    Returns
    -------
    float
        Absolute difference between the two sides.
    """
    order = BesselOrder.from_nu(nu)
    z = float(z)
    if not z > 0.0:
        raise DomainError(f"Bessel argument must be strictly positive, got {z}")
    i = int(i)
    if i < 1:
        raise DomainError("step count i must be >= 1")
    lowered = BesselOrder.from_nu(order.nu - i)  # raises if unsupported
    w0 = z * z / 2.0
    if step is None:
        step = min(0.5 * w0, 1e-2 * max(w0, 1.0)) * (0.3 if i > 1 else 0.1)

    def g(w):
        zz = np.sqrt(2.0 * w)
        return zz ** order.nu * bessel_kv(order, zz)

    coeffs = np.array([(-1) ** j * math.comb(i, j) for j in range(i + 1)], dtype=float)
    offsets = i / 2.0 - np.arange(i + 1)

    def stencil(h):
        return float(coeffs @ g(w0 + offsets * h)) / h ** i

    d1, d2 = stencil(step), stencil(step / 2.0)
    deriv = d2 + (d2 - d1) / 3.0
    exact = (-1) ** i * z ** (order.nu - i) * float(bessel_kv(lowered, z))
    return abs(deriv - exact)
