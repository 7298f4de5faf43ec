"""Named lattice sums of Bessel and logarithmic kernels.

Every public ``eval_*`` function returns a :class:`SeriesValue` and takes
an optional :class:`PrecisionPolicy`.  Index conventions:

* integer indices start at 1;
* half-integer indices ``m + 1/2`` start at ``m = 0``;
* the alternating index ``n`` carries ``(-1)**(n + 1)``.

Sums whose Bessel argument is a product ``mu * n`` of two indices go
through :func:`product_sum`; all others are summed on rectangular blocks
with :func:`box_sum`.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .series import DEFAULT_POLICY, PrecisionPolicy, SeriesValue, box_sum, product_sum
from .special_functions import ZETA2, ZETA3, ZETA4, bessel_kv, k0, k1, kv_half

TWO_PI = 2.0 * math.pi


def _positive(*args):
    for v in args:
        if not (v > 0.0 and math.isfinite(v)):
            raise DomainError(f"lattice-sum arguments must be positive and finite, got {args}")
    return tuple(float(v) for v in args)


def _policy(policy):
    return DEFAULT_POLICY if policy is None else policy


def _bessel(nu):
    if nu == 0:
        return k0
    if nu == 1:
        return k1
    return lambda z: kv_half(int(nu - 0.5), z)


def bessel_product_sum(nu, x, q, p, *, shift=0.0, alternating=False,
                       policy: PrecisionPolicy | None = None, name="product") -> SeriesValue:
    """``sum_{m, n>=1} s_n mu**q n**(-p) K_nu(2 pi mu n x)`` with ``mu = m + shift``.

    ``m`` starts at 1 for ``shift == 0`` and at 0 otherwise; ``s_n`` is
    ``(-1)**(n+1)`` when ``alternating`` and 1 otherwise.
    """
    (x,) = _positive(x)
    return product_sum(
        lambda mu, n: mu ** q * n ** (-p),
        _bessel(nu),
        TWO_PI * x,
        _policy(policy),
        shift=shift,
        alternating=alternating,
        name=name,
    )


# -- double Bessel sums -------------------------------------------------------

_Y_PARAMS = {0: (2.0, 0.0), 1: (1.0, 1.0), 1.5: (1.5, 1.5)}


def eval_Y(order, x: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Double Bessel sum of order 0, 1 or 3/2 over ``m, n >= 1``.

    * order 0: ``m**2 K_0(2 pi m n x)``
    * order 1: ``(m / n) K_1(2 pi m n x)``
    * order 3/2: ``(m / n)**1.5 K_{3/2}(2 pi m n x)``
    """
    order = float(order)
    if order not in _Y_PARAMS:
        raise DomainError(f"Y order must be 0, 1 or 3/2, got {order}")
    q, p = _Y_PARAMS[order]
    return bessel_product_sum(order, x, q, p, policy=policy, name=f"Y_{order:g}")


def eval_M32(x: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Alternating half-integer sum with ``n**-1.5 (m+1/2)**1.5 K_{3/2}``."""
    return bessel_product_sum(1.5, x, 1.5, 1.5, shift=0.5, alternating=True,
                              policy=policy, name="M_3/2")


def eval_N_half(x: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Alternating sum of ``n**-0.5 (k+1/2)**2.5 K_{1/2}(2 pi (k+1/2) n x)``."""
    return bessel_product_sum(0.5, x, 2.5, 0.5, shift=0.5, alternating=True,
                              policy=policy, name="N_1/2")


# -- logarithmic sums ---------------------------------------------------------

def _log_minus(e):
    return np.log1p(-np.exp(-e))


def _log_plus(e):
    return np.log1p(np.exp(-e))


def eval_Z(arity: int, *args: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Sums of ``ln(1 - exp(-2 pi x r))`` over a positive-integer lattice.

    ``eval_Z(1, x)`` uses ``r = m``; ``eval_Z(2, x, y, z)`` uses
    ``r = sqrt(n**2/y**2 + m**2/z**2)``; ``eval_Z(3, x, y, z, t)`` adds
    ``j**2/t**2``.  The value is never positive.
    """
    arity = int(arity)
    if arity not in (1, 2, 3) or len(args) != (1 if arity == 1 else arity + 1):
        raise DomainError(f"Z of arity {arity} got {len(args)} arguments")
    x, *lengths = _positive(*args)
    policy = _policy(policy)
    if arity == 1:
        return box_sum(lambda m: _log_minus(TWO_PI * x * m), (1,), (TWO_PI * x,),
                       policy, name="Z_1")
    inv2 = [1.0 / (L * L) for L in lengths]

    def kernel(*idx):
        r2 = sum(i * i * w for i, w in zip(idx, inv2))
        return _log_minus(TWO_PI * x * np.sqrt(r2))

    rates = [TWO_PI * x / L for L in lengths]
    return box_sum(kernel, (1,) * arity, rates, policy, name=f"Z_{arity}")


def eval_W3(x: float, y: float, z: float, t: float,
            policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Sum of ``ln(1 + exp(-2 pi x s))`` over half-integer triples.

    ``s = sqrt((m+1/2)**2/y**2 + (n+1/2)**2/z**2 + (k+1/2)**2/t**2)``.
    """
    x, y, z, t = _positive(x, y, z, t)
    inv2 = (1.0 / y ** 2, 1.0 / z ** 2, 1.0 / t ** 2)

    def kernel(m, n, k):
        s = np.sqrt(m * m * inv2[0] + n * n * inv2[1] + k * k * inv2[2])
        return _log_plus(TWO_PI * x * s)

    rates = (TWO_PI * x / y, TWO_PI * x / z, TWO_PI * x / t)
    return box_sum(kernel, (0.5, 0.5, 0.5), rates, _policy(policy), name="W_3")


def eval_W3_dx(x: float, y: float, z: float, t: float,
               policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Partial derivative of :func:`eval_W3` with respect to ``x``.

    Equals ``-2 pi sum s / (exp(2 pi x s) + 1)`` over the same lattice.
    """
    x, y, z, t = _positive(x, y, z, t)
    inv2 = (1.0 / y ** 2, 1.0 / z ** 2, 1.0 / t ** 2)

    def kernel(m, n, k):
        s = np.sqrt(m * m * inv2[0] + n * n * inv2[1] + k * k * inv2[2])
        e = np.exp(-TWO_PI * x * s)
        return s * e / (1.0 + e)

    rates = (TWO_PI * x / y, TWO_PI * x / z, TWO_PI * x / t)
    out = box_sum(kernel, (0.5, 0.5, 0.5), rates, _policy(policy), name="dW_3/dx")
    return -TWO_PI * out


# -- triple Bessel sums -------------------------------------------------------

def _radial_bessel(x, y, z, start, alternating, weight, bessel, name, policy):
    """Sum over ``(k, m, n)`` of ``weight(q, m, n) * bessel(2 pi x n q)``.

    ``q = sqrt(m**2/y**2 + k**2/z**2)``; ``k`` and ``m`` start at ``start``
    and ``n`` at 1, alternating in sign when requested.
    """
    x, y, z = _positive(x, y, z)
    inv_y2, inv_z2 = 1.0 / y ** 2, 1.0 / z ** 2
    q_min = start * math.sqrt(inv_y2 + inv_z2)

    def kernel(k, m, n):
        q = np.sqrt(m * m * inv_y2 + k * k * inv_z2)
        t = weight(q, m, n) * bessel(TWO_PI * x * n * q)
        if alternating:
            t = np.where(n % 2 == 1, t, -t)
        return t

    rates = (TWO_PI * x / z, TWO_PI * x / y, TWO_PI * x * q_min)
    return box_sum(kernel, (start, start, 1), rates, _policy(policy),
                   alternating_axis=2 if alternating else None, name=name)


def eval_V1(x: float, y: float, z: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """``sum_{k,m,n>=1} (q / n) K_1(2 pi n x q)``, ``q = sqrt(m**2/y**2 + k**2/z**2)``."""
    return _radial_bessel(x, y, z, 1.0, False, lambda q, m, n: q / n, k1, "V_1", policy)


def eval_M1(x: float, y: float, z: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Alternating half-integer analogue of :func:`eval_V1`."""
    return _radial_bessel(x, y, z, 0.5, True, lambda q, m, n: q / n, k1, "M_1", policy)


def eval_M0(x: float, y: float, z: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Alternating ``sum q**2 K_0(2 pi x n q)`` over half-integer ``k, m``."""
    return _radial_bessel(x, y, z, 0.5, True, lambda q, m, n: q * q, k0, "M_0", policy)


def eval_N0(x: float, y: float, z: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Alternating ``sum (m+1/2)**2 K_0(2 pi x n q)`` over half-integer ``k, m``.

    Here ``m`` is the index paired with ``y``.  This is the sum produced
    by differentiating :func:`eval_M1` with respect to ``y``::

        d/dy M_1(x, y, z) = (2 pi x / y**3) * N_0(x, y, z)
    """
    return _radial_bessel(x, y, z, 0.5, True, lambda q, m, n: m * m, k0, "N_0", policy)


def eval_M(order, *args: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Dispatch to ``M_0(x, y, z)``, ``M_1(x, y, z)`` or ``M_{3/2}(x)``."""
    order = float(order)
    if order == 1.5:
        if len(args) != 1:
            raise DomainError("M_3/2 takes a single argument")
        return eval_M32(*args, policy=policy)
    if order in (0.0, 1.0):
        if len(args) != 3:
            raise DomainError(f"M_{order:g} takes three arguments")
        return (eval_M0 if order == 0.0 else eval_M1)(*args, policy=policy)
    raise DomainError(f"M order must be 0, 1 or 3/2, got {order}")


# -- integration constants ----------------------------------------------------

def eval_Q(a: float, b: float, policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Constant term of the two-dimensional logarithmic partition identity."""
    a, b = _positive(a, b)
    return (
        eval_Z(1, a / b, policy=policy) * 0.5
        - ZETA2 / (4 * math.pi)
        + ZETA3 * b / (8 * math.pi * a)
        - ZETA3 * a ** 2 / (8 * math.pi * b ** 2)
        + eval_Y(1, b / a, policy)
        - (a / b) * eval_Y(1, a / b, policy)
    )


def eval_N_const(a: float, b: float, c: float,
                 policy: PrecisionPolicy | None = None) -> SeriesValue:
    """Constant term of the three-dimensional logarithmic partition identity."""
    a, b, c = _positive(a, b, c)
    pi = math.pi
    zeta_part = (
        ZETA2 / (8 * pi)
        + ZETA3 * a ** 2 / (16 * pi * b ** 2)
        - ZETA3 * b / (16 * pi * a)
        - ZETA3 * c / (16 * pi * a)
        + c * (ZETA4 * b / (8 * pi ** 2 * a ** 2) - ZETA4 * a ** 2 / (8 * pi ** 2 * b ** 3))
    )
    return (
        eval_Z(2, a, b, c, policy=policy) * 0.5
        + a * (eval_V1(c, a, b, policy) - eval_V1(a, b, c, policy))
        + zeta_part
        - eval_Y(1, b / a, policy) * 0.5
        + c / (2 * math.sqrt(a * b)) * eval_Y(1.5, b / a, policy)
        - a ** 2 / (2 * math.sqrt(c) * b ** 1.5) * eval_Y(1.5, c / b, policy)
    )


def eval_integration_constants(which: str, *args: float,
                               policy: PrecisionPolicy | None = None) -> SeriesValue:
    """``Q(a, b)`` (``which="Q"``) or ``N(a, b, c)`` (``which="N"``)."""
    if which == "Q":
        return eval_Q(*args, policy=policy)
    if which == "N":
        return eval_N_const(*args, policy=policy)
    raise DomainError(f"unknown integration constant {which!r}")


# -- diagnostics --------------------------------------------------------------

def alternating_partial_sums(family: str, args, n_max: int = 8,
                             policy: PrecisionPolicy | None = None) -> np.ndarray:
    """Partial sums over the alternating index ``n = 1..n_max``.

    All non-alternating indices are summed to the extent the decay budget
    of ``policy`` prescribes.  For the sign-alternating families whose
    terms decrease in ``n`` the partial sums bracket the limit.
    """
    policy = _policy(policy)
    budget = policy.decay_budget
    n = np.arange(1, n_max + 1, dtype=float)
    sign = np.where(n % 2 == 1, 1.0, -1.0)
    if family in ("M_3/2", "N_1/2"):
        (x,) = _positive(*args)
        count = int(math.ceil(budget / (TWO_PI * x))) + 2
        mu = np.arange(count, dtype=float)[:, None] + 0.5
        if family == "M_3/2":
            t = mu ** 1.5 * n ** -1.5 * bessel_kv(1.5, TWO_PI * x * mu * n)
        else:
            t = mu ** 2.5 * n ** -0.5 * bessel_kv(0.5, TWO_PI * x * mu * n)
        cols = t.sum(axis=0)
    elif family in ("M_0", "M_1"):
        x, y, z = _positive(*args)
        ck = int(math.ceil(budget * z / (TWO_PI * x))) + 2
        cm = int(math.ceil(budget * y / (TWO_PI * x))) + 2
        k = np.arange(ck, dtype=float)[:, None, None] + 0.5
        m = np.arange(cm, dtype=float)[None, :, None] + 0.5
        q = np.sqrt(m * m / y ** 2 + k * k / z ** 2)
        nn = n[None, None, :]
        if family == "M_1":
            t = q / nn * k1(TWO_PI * x * nn * q)
        else:
            t = q * q * k0(TWO_PI * x * nn * q)
        cols = t.sum(axis=(0, 1))
    else:
        raise DomainError(f"no alternating partial sums for {family!r}")
    return np.cumsum(sign * cols)
