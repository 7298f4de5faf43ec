"""Numerical verification of Schlomilch-type lattice-sum identities.

Each identity equates a slowly convergent exponential lattice sum with an
expression built from rapidly convergent Bessel sums, logarithmic sums
and zeta constants.  The verifiers below evaluate the left side by plain
direct summation and the right side from :mod:`boxcasimir.lattice_sums`,
so every report is a genuinely independent two-route comparison.

Supported identities (``IDENTITY_NAMES``):

``schlomilch``
    ``alpha sum k/(e^{2 alpha k}-1) + beta sum k/(e^{2 beta k}-1)
    = (alpha+beta)/24 - 1/4`` with ``alpha beta = pi**2``.
``one_partition``
    ``sum ln(1-e^{-alpha k})`` against the same sum at ``4 pi**2/alpha``.
``one_sum``
    Bose-weighted sum over ``sqrt(theta**2 n**2 + m**2)``.
``two_sum``, ``three_sum``
    Two- and three-dimensional Bose-weighted sums.
``two_partition``, ``three_partition``
    Logarithmic (partition-function) sums over 2D and 3D lattices.
``three_partition_plus``
    The Fermi-type variant with ``ln(1 + ...)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, fields

import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureError
from .lattice_sums import (
    bessel_product_sum,
    eval_N_const,
    eval_Q,
    eval_V1,
    eval_Y,
    eval_Z,
)
from .series import PrecisionPolicy, SeriesValue, box_sum
from .special_functions import ZETA2, ZETA3, ZETA4, k0

PI = math.pi
MAX_DIGITS = 16
LHS_MAX_INDEX = 100_000
QUAD_REL_TOL = 1e-10
# both routes are compared near machine precision, so sub-series are summed
# tighter than the library default
IDENTITY_POLICY = PrecisionPolicy(rel_tol=1e-13)

IDENTITY_NAMES = (
    "schlomilch", "one_partition", "one_sum", "two_sum", "two_partition",
    "three_sum", "three_partition", "three_partition_plus",
)
MULTI_SERIES = ("two_sum", "two_partition", "three_sum", "three_partition",
                "three_partition_plus", "one_partition")

# parameters each identity reads from IdentityParams
REQUIRED = {
    "schlomilch": ("alpha",),
    "one_partition": ("alpha",),
    "one_sum": ("theta", "m", "alpha"),
    "two_sum": ("theta", "sigma"),
    "two_partition": ("a", "b", "alpha"),
    "three_sum": ("theta", "sigma", "gamma"),
    "three_partition": ("a", "b", "c", "alpha"),
    "three_partition_plus": ("a", "b", "c", "alpha"),
}


@dataclass(frozen=True)
class IdentityParams:
    """Parameters of an identity; unused ones stay ``None``.

    ``beta`` is always derived as ``pi**2 / alpha``.  ``m`` may be zero
    (the massless limit of ``one_sum``); everything else must be positive.
    """

    alpha: float | None = None
    theta: float | None = None
    sigma: float | None = None
    gamma: float | None = None
    m: float | None = None
    a: float | None = None
    b: float | None = None
    c: float | None = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            v = float(v)
            ok = v >= 0 if f.name == "m" else v > 0
            if not (ok and math.isfinite(v)):
                raise DomainError(f"identity parameter {f.name} must be positive, got {v}")
            object.__setattr__(self, f.name, v)

    @property
    def beta(self) -> float:
        if self.alpha is None:
            raise DomainError("beta requires alpha")
        return PI ** 2 / self.alpha

    def require(self, names):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise DomainError(f"missing identity parameters: {', '.join(missing)}")
        return tuple(getattr(self, n) for n in names)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)
                if getattr(self, f.name) is not None}


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one two-route comparison."""

    identity: str
    params: IdentityParams
    lhs: SeriesValue
    rhs: SeriesValue
    abs_diff: float
    digits_agreed: int
    diagnostics: tuple = ()
    components: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params.as_dict(),
            "lhs": self.lhs.value,
            "lhs_error_bound": self.lhs.error_bound,
            "rhs": self.rhs.value,
            "rhs_error_bound": self.rhs.error_bound,
            "abs_diff": self.abs_diff,
            "digits_agreed": self.digits_agreed,
            "diagnostics": list(self.diagnostics),
        }


def digits_agreed(lhs: float, rhs: float) -> int:
    """Number of agreeing significant digits, capped at ``MAX_DIGITS``."""
    diff = abs(lhs - rhs)
    if diff == 0.0:
        return MAX_DIGITS
    rel = diff / max(abs(lhs), 1e-300)
    return int(min(MAX_DIGITS, math.floor(-math.log10(rel))))


def _report(name, params, lhs, rhs, components=None):
    diag = tuple(label for label, v in (("lhs", lhs), ("rhs", rhs)) if v.truncated)
    diff = abs(lhs.value - rhs.value)
    return IdentityReport(name, params, lhs, rhs, diff, digits_agreed(lhs.value, rhs.value),
                          diag, components or {})


def _pol(policy):
    return IDENTITY_POLICY if policy is None else policy


def _lhs_policy(policy):
    # the direct side gets a larger index budget and may report truncation
    return policy.with_overrides(max_index=max(policy.max_index, LHS_MAX_INDEX), strict=False)


def _inv_expm1(x):
    """``1 / (exp(x) - 1)`` for ``x > 0`` without overflow."""
    return np.exp(-x) / -np.expm1(-x)


def _bose_weight(s):
    """``s / (exp(s) - 1)`` with its removable singularity at 0 filled in."""
    s = np.asarray(s, dtype=float)
    out = np.ones_like(s)
    nz = s > 0
    out[nz] = s[nz] * _inv_expm1(s[nz])
    return out


# -- one-dimensional identities ---------------------------------------------------

def verify_schlomilch(alpha: float, policy: PrecisionPolicy | None = None) -> IdentityReport:
    """Classical two-sided identity at ``alpha`` and ``beta = pi**2 / alpha``."""
    params = IdentityParams(alpha=alpha)
    policy = _lhs_policy(_pol(policy))
    beta = params.beta

    def side(x):
        return x * box_sum(lambda k: k * _inv_expm1(2 * x * k), (1,), (2 * x,), policy,
                           name="schlomilch lhs")

    s_alpha, s_beta = side(alpha), side(beta)
    lhs = s_alpha + s_beta
    rhs = SeriesValue.exact((alpha + beta) / 24 - 0.25)
    return _report("schlomilch", params, lhs, rhs,
                   {"alpha_sum": s_alpha.value, "beta_sum": s_beta.value})


def _log_sum_1d(x, policy, name):
    return box_sum(lambda k: np.log1p(-np.exp(-x * k)), (1,), (x,), policy, name=name)


def verify_one_partition(alpha: float, policy: PrecisionPolicy | None = None) -> IdentityReport:
    """``sum ln(1 - e^{-alpha k})`` against its dual at ``4 pi**2 / alpha``."""
    params = IdentityParams(alpha=alpha)
    policy = _pol(policy)
    lhs = _log_sum_1d(alpha, _lhs_policy(policy), "one_partition lhs")
    dual = eval_Z(1, 2 * PI / alpha, policy=policy)
    rhs = (dual - math.log(alpha) / 2 - PI ** 2 / (6 * alpha) + alpha / 24
           + math.log(2 * PI) / 2)
    return _report("one_partition", params, lhs, rhs, {"direct_sum": lhs.value,
                                                       "dual_sum": dual.value})


def one_partition_residual(alpha: float, policy: PrecisionPolicy | None = None) -> float:
    """Signed ``lhs - rhs`` of the one-dimensional partition identity."""
    rep = verify_one_partition(alpha, policy)
    return rep.lhs.value - rep.rhs.value


def _quad(func, lo, hi, name):
    # scipy warns when 1e-13 is out of reach; the check below decides instead
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err = integrate.quad(func, lo, hi, epsabs=0.0, epsrel=1e-13, limit=400)
    if not err <= QUAD_REL_TOL * max(abs(value), 1e-300):
        raise QuadratureError(f"{name}: estimated error {err:.3g} on value {value:.6g}")
    return SeriesValue(value, err)


def one_sum_integrals(theta: float, m: float, alpha: float) -> tuple[SeriesValue, SeriesValue]:
    """The two continuum integrals of the one-sum identity.

    Both are written in decay-normalized variables so the integrand has
    unit exponential scale.  For ``m == 0`` they reduce to
    ``zeta(2) / alpha**2`` and ``zeta(2) theta**2 / (4 pi**2)``.
    """
    if m == 0.0:
        return (SeriesValue.exact(ZETA2 / alpha ** 2),
                SeriesValue.exact(ZETA2 * theta ** 2 / (4 * PI ** 2)))
    mu = alpha * m

    def f1(u):  # x = u / alpha
        s = math.sqrt(u * u + mu * mu)
        return s / math.expm1(s) if s < 700 else 0.0

    w = 2 * PI / theta
    nu = w * m

    def f2(v):  # y = m + v / w
        y = nu + v
        return math.sqrt(v * (v + 2 * nu)) / math.expm1(y) if y < 700 else 0.0

    i1 = _quad(f1, 0.0, math.inf, "first one_sum integral") * (1 / alpha ** 2)
    i2 = _quad(f2, 0.0, math.inf, "second one_sum integral") * (1 / w ** 2)
    return i1, i2


def verify_one_sum(theta: float, m: float, alpha: float,
                   policy: PrecisionPolicy | None = None) -> IdentityReport:
    """Single Bose-weighted sum with mass-like shift ``m``."""
    params = IdentityParams(theta=theta, m=m, alpha=alpha)
    policy = _pol(policy)

    lhs = box_sum(lambda n: _bose_weight(alpha * np.sqrt(theta ** 2 * n ** 2 + m * m)) / alpha,
                  (1,), (alpha * theta,), _lhs_policy(policy), name="one_sum lhs")

    w = 2 * PI / theta
    def dual_kernel(n):
        q = np.sqrt(4 * PI ** 2 * n * n / alpha ** 2 + m * m)
        return n * n / q * _inv_expm1(w * q)

    dual = box_sum(dual_kernel, (1,), (w * 2 * PI / alpha,), policy, name="one_sum dual")
    if m == 0.0:
        zero_mode = -1 / (2 * alpha)
    else:
        zero_mode = -m / (2 * math.expm1(alpha * m)) if alpha * m < 700 else 0.0
    i1, i2 = one_sum_integrals(theta, m, alpha)
    rhs = (-8 * PI ** 3 / (theta * alpha ** 3)) * dual + zero_mode + (i1 + i2) * (1 / theta)
    return _report("one_sum", params, lhs, rhs,
                   {"integral_1": i1.value, "integral_2": i2.value, "zero_mode": zero_mode})


# -- double series -----------------------------------------------------------------

def _verify_two_sum(p: IdentityParams, policy):
    theta, sigma = p.require(("theta", "sigma"))
    lhs = box_sum(lambda n, m: _bose_weight(np.sqrt(theta ** 2 * n * n + sigma ** 2 * m * m)),
                  (1, 1), (theta, sigma), _lhs_policy(policy), name="two_sum lhs")
    w = 2 * PI / theta

    def dual(n, m):
        q = np.sqrt(4 * PI ** 2 * n * n + sigma ** 2 * m * m)
        return n * n / q * _inv_expm1(w * q)

    dual_sum = box_sum(dual, (1, 1), (w * 2 * PI, w * sigma), policy, name="two_sum dual")
    edge = box_sum(lambda m: m * _inv_expm1(sigma * m), (1,), (sigma,), policy,
                   name="two_sum edge")
    bracket = (-8 * PI ** 3 / sigma * eval_Y(0, 2 * PI / sigma, policy)
               - ZETA2 / 2 + PI * ZETA3 / sigma + ZETA3 * sigma ** 2 / (16 * PI ** 2))
    rhs = (-8 * PI ** 3 / theta * dual_sum - sigma / 2 * edge + bracket * (1 / theta)
           + sigma / (2 * PI) * eval_Y(1, sigma / theta, policy))
    return lhs, rhs


def _log_lattice(alpha, lengths, sign, policy, name):
    inv2 = [1.0 / L ** 2 for L in lengths]

    def kernel(*idx):
        s = np.sqrt(sum(i * i * w for i, w in zip(idx, inv2)))
        return np.log1p(sign * np.exp(-alpha * s))

    return box_sum(kernel, (1,) * len(lengths), [alpha / L for L in lengths],
                   _lhs_policy(policy), name=name)


def _verify_two_partition(p: IdentityParams, policy):
    a, b, alpha = p.require(("a", "b", "alpha"))
    lhs = _log_lattice(alpha, (a, b), -1.0, policy, "two_partition lhs")
    x = alpha / (2 * PI)
    rhs = (
        eval_Z(2, a, b, x, policy=policy)
        - 0.5 * eval_Z(1, alpha / (2 * PI * b), policy=policy)
        + a * (ZETA2 / (2 * alpha) - PI * ZETA3 * b / (2 * alpha ** 2)
               + ZETA3 * alpha / (16 * PI ** 2 * b ** 2)
               - 2 * PI / alpha * eval_Y(1, 2 * PI * b / alpha, policy))
        + alpha / (2 * PI * b) * eval_Y(1, a / b, policy)
        + eval_Q(a, b, policy)
    )
    return lhs, rhs


# -- triple series -----------------------------------------------------------------

def _verify_three_sum(p: IdentityParams, policy):
    theta, sigma, gamma = p.require(("theta", "sigma", "gamma"))
    lhs = box_sum(
        lambda n, m, j: _bose_weight(np.sqrt(theta ** 2 * n * n + sigma ** 2 * m * m
                                             + gamma ** 2 * j * j)),
        (1, 1, 1), (theta, sigma, gamma), _lhs_policy(policy), name="three_sum lhs")
    w = 2 * PI / theta

    def dual(k, m, j):
        q = np.sqrt(4 * PI ** 2 * k * k + sigma ** 2 * m * m + gamma ** 2 * j * j)
        return k * k / q * _inv_expm1(w * q)

    dual_sum = box_sum(dual, (1, 1, 1), (w * 2 * PI, w * sigma, w * gamma), policy,
                       name="three_sum dual")

    def face(m, j):
        return _bose_weight(np.sqrt(sigma ** 2 * m * m + gamma ** 2 * j * j)) / 2

    face_sum = box_sum(face, (1, 1), (sigma, gamma), policy, name="three_sum face")

    scale = 2 * PI * sigma / gamma

    def k0_kernel(m, k, n):
        return k * k * k0(scale * n * np.sqrt(m * m + 4 * PI ** 2 * k * k / sigma ** 2))

    k0_sum = box_sum(k0_kernel, (1, 1, 1),
                     (scale, scale * 2 * PI / sigma, scale * math.sqrt(1 + 4 * PI ** 2 / sigma ** 2)),
                     policy, name="three_sum K0")
    half_sum = bessel_product_sum(0.5, 2 * PI / sigma, 2.5, 0.5, policy=policy,
                                  name="three_sum K1/2")
    inner = (
        -8 * PI ** 3 / gamma * k0_sum
        + (ZETA2 / 4 - PI * ZETA3 / (2 * sigma) - ZETA3 * sigma ** 2 / (32 * PI ** 2)
           + 4 * PI ** 3 / sigma * eval_Y(0, 2 * PI / sigma, policy))
        + (1 / gamma) * (-PI * ZETA3 / 2 + 3 * PI * ZETA4 / sigma
                         + ZETA4 * sigma ** 3 / (16 * PI ** 3)
                         - 4 * PI ** 4 * math.sqrt(2 / (PI * sigma)) * half_sum)
        + gamma ** 0.5 * sigma ** 1.5 / (4 * PI) * eval_Y(1.5, sigma / gamma, policy)
    )
    rhs = (-8 * PI ** 3 / theta * dual_sum - face_sum + inner * (1 / theta)
           + eval_V1(1 / theta, 1 / sigma, 1 / gamma, policy) * (1 / (2 * PI)))
    return lhs, rhs


def _verify_three_partition(p: IdentityParams, policy):
    a, b, c, alpha = p.require(("a", "b", "c", "alpha"))
    lhs = _log_lattice(alpha, (a, b, c), -1.0, policy, "three_partition lhs")
    x = alpha / (2 * PI)
    y32 = lambda v: eval_Y(1.5, v, policy)  # noqa: E731
    bracket = (
        -eval_V1(c, b, x, policy)
        + (-ZETA2 / (4 * alpha) + PI * ZETA3 * b / (4 * alpha ** 2)
           - ZETA3 * alpha / (32 * PI ** 2 * b ** 2)
           + PI / alpha * eval_Y(1, 2 * PI * b / alpha, policy))
        + c * (PI * ZETA3 / (4 * alpha ** 2) - PI * ZETA4 * b / alpha ** 3
               + ZETA4 * alpha / (16 * PI ** 3 * b ** 3)
               - PI * math.sqrt(2 * PI / (b * alpha ** 3)) * y32(2 * PI * b / alpha))
        + alpha / (4 * PI * c ** 0.5 * b ** 1.5) * y32(c / b)
    )
    rhs = (
        eval_Z(3, a, b, c, x, policy=policy)
        - 0.5 * eval_Z(2, x, b, c, policy=policy)
        + a * bracket
        + alpha / (2 * PI) * eval_V1(a, b, c, policy)
        + eval_N_const(a, b, c, policy)
    )
    return lhs, rhs


def _verify_three_partition_plus(p: IdentityParams, policy):
    a, b, c, alpha = p.require(("a", "b", "c", "alpha"))
    lhs = _log_lattice(alpha, (a, b, c), +1.0, policy, "three_partition_plus lhs")
    x1, x2 = alpha / (2 * PI), alpha / PI
    y32 = lambda v: eval_Y(1.5, v, policy)  # noqa: E731
    rhs = (
        7 * PI * ZETA4 * a * b * c / (8 * alpha ** 3)
        + alpha * (ZETA4 * a * c / (16 * PI ** 3 * b ** 3)
                   + a / (4 * PI * b ** 1.5 * c ** 0.5) * y32(c / b)
                   + eval_V1(a, b, c, policy) * (1 / (2 * PI)))
        + eval_Z(3, a, b, c, x2, policy=policy) - eval_Z(3, a, b, c, x1, policy=policy)
        + a * eval_V1(c, b, x1, policy) - a * eval_V1(c, b, x2, policy)
        + a * c * PI * math.sqrt(2 * PI / (b * alpha ** 3)) * y32(2 * PI * b / alpha)
        - a * c * PI / 2 * math.sqrt(PI / (b * alpha ** 3)) * y32(PI * b / alpha)
        + ZETA2 * a / (8 * alpha)
        - 3 * PI * ZETA3 * a * b / (16 * alpha ** 2)
        - 3 * PI * ZETA3 * a * c / (16 * alpha ** 2)
        - ZETA3 * a * alpha / (32 * PI ** 2 * b ** 2)
        + 0.5 * eval_Z(2, x1, b, c, policy=policy) - 0.5 * eval_Z(2, x2, b, c, policy=policy)
        + a * PI / (2 * alpha) * eval_Y(1, PI * b / alpha, policy)
        - a * PI / alpha * eval_Y(1, 2 * PI * b / alpha, policy)
    )
    # the same sum written as a difference of two integer-lattice log sums
    alt = eval_Z(3, alpha / PI, a, b, c, policy=policy) - eval_Z(3, x1, a, b, c, policy=policy)
    return lhs, rhs, {"difference_form": alt.value}


_MULTI = {
    "two_sum": _verify_two_sum,
    "two_partition": _verify_two_partition,
    "three_sum": _verify_three_sum,
    "three_partition": _verify_three_partition,
    "three_partition_plus": _verify_three_partition_plus,
}


def verify_multi_series(which: str, params: IdentityParams,
                        policy: PrecisionPolicy | None = None) -> IdentityReport:
    """Verify one of the multi-series identities (``MULTI_SERIES``)."""
    if which == "one_partition":
        (alpha,) = params.require(("alpha",))
        return verify_one_partition(alpha, policy)
    if which not in _MULTI:
        raise DomainError(f"unknown multi-series identity {which!r}")
    out = _MULTI[which](params, _pol(policy))
    lhs, rhs = out[0], out[1]
    return _report(which, params, lhs, rhs, out[2] if len(out) > 2 else None)


def verify_identity(name: str, params: IdentityParams,
                    policy: PrecisionPolicy | None = None) -> IdentityReport:
    """Dispatch on the identity name."""
    if name not in REQUIRED:
        raise DomainError(f"unknown identity {name!r}; choose from {', '.join(IDENTITY_NAMES)}")
    values = params.require(REQUIRED[name])
    if name == "schlomilch":
        return verify_schlomilch(*values, policy=policy)
    if name == "one_sum":
        return verify_one_sum(*values, policy=policy)
    return verify_multi_series(name, params, policy)


def lhs_cost(name: str, params: IdentityParams, policy: PrecisionPolicy | None = None) -> float:
    """Estimated number of terms in the direct (left-hand) summation."""
    budget = _pol(policy).decay_budget
    p = params
    rates = {
        "schlomilch": lambda: [2 * min(p.alpha, p.beta)],
        "one_partition": lambda: [p.alpha],
        "one_sum": lambda: [p.alpha * p.theta],
        "two_sum": lambda: [p.theta, p.sigma],
        "three_sum": lambda: [p.theta, p.sigma, p.gamma],
        "two_partition": lambda: [p.alpha / p.a, p.alpha / p.b],
        "three_partition": lambda: [p.alpha / p.a, p.alpha / p.b, p.alpha / p.c],
        "three_partition_plus": lambda: [p.alpha / p.a, p.alpha / p.b, p.alpha / p.c],
    }[name]()
    return float(np.prod([budget / r + 2 for r in rates]))


__all__ = [
    "IDENTITY_NAMES", "IdentityParams", "IdentityReport", "digits_agreed",
    "verify_schlomilch", "verify_one_partition", "verify_one_sum",
    "verify_multi_series", "verify_identity", "one_partition_residual",
    "one_sum_integrals", "lhs_cost",
]
