"""Adaptive summation of exponentially convergent lattice series.

Two engines are provided:

``box_sum``
    An N-dimensional rectangular block of indices is evaluated in one
    vectorised call.  The truncation error along every axis is estimated
    from the geometric ratio of the last two hyperplane slices, and the
    block is doubled along the axes that have not yet converged.

``product_sum``
    Sums of the form ``sum_m sum_n w(m, n) K(beta * mu(m) * n)`` whose
    decay depends on the product of the two indices.  A full square block
    would waste almost all of its evaluations when ``beta`` is small, so
    the inner index is truncated row by row (a "hyperbolic" region) with
    the rigorous ratio bound ``|t(m, n+1)| <= exp(-beta mu(m)) |t(m, n)|``.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, SeriesNonConvergence

EPS = np.finfo(float).eps
ERROR_MODES = ("geometric_tail_bound", "first_omitted_term")
POLICY_ENV_VAR = "BOXCASIMIR_POLICY"

# elements per vectorised block before box_sum starts chunking along axis 0
_CHUNK_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class PrecisionPolicy:
    """Truncation policy shared by every series evaluation.

    Parameters
    ----------
    rel_tol : float
        Target relative truncation error, in ``(0, 1e-3]``.
    abs_floor : float
        Absolute error below which a sum counts as converged even if its
        value is zero or tiny.
    max_index : int
        Largest extent allowed along any single summation axis.
    error_mode : str
        ``"geometric_tail_bound"`` bounds the tail by ``t r / (1 - r)``;
        ``"first_omitted_term"`` reports only ``t r``.
    strict : bool
        Raise :class:`SeriesNonConvergence` when a sum is truncated.
    """

    rel_tol: float = 1e-10
    abs_floor: float = 1e-300
    max_index: int = 10_000
    error_mode: str = "geometric_tail_bound"
    strict: bool = True

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-3):
            raise DomainError(f"rel_tol must lie in (0, 1e-3], got {self.rel_tol}")
        if not self.abs_floor >= 0.0:
            raise DomainError(f"abs_floor must be non-negative, got {self.abs_floor}")
        if int(self.max_index) < 8:
            raise DomainError(f"max_index must be >= 8, got {self.max_index}")
        if self.error_mode not in ERROR_MODES:
            raise DomainError(f"unknown error_mode {self.error_mode!r}")

    @property
    def decay_budget(self) -> float:
        """Exponent range an exponentially decaying axis must cover."""
        return -math.log(self.rel_tol) + 6.0

    def with_overrides(self, **changes) -> "PrecisionPolicy":
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_file(cls, path) -> "PrecisionPolicy":
        with open(path) as fh:
            return cls(**json.load(fh))

    @classmethod
    def from_env(cls) -> "PrecisionPolicy":
        """Policy from the JSON file named by ``$BOXCASIMIR_POLICY``, if set."""
        path = os.environ.get(POLICY_ENV_VAR)
        return cls.from_file(path) if path else cls()


DEFAULT_POLICY = PrecisionPolicy()


@dataclass(frozen=True)
class SeriesValue:
    """A numerical value with an a posteriori error bound.

    Arithmetic between ``SeriesValue`` objects (and with plain numbers)
    propagates the bounds to first order, so composite formulas keep an
    honest error estimate.
    """

    value: float
    error_bound: float = 0.0
    terms_used: int = 0
    truncated: bool = False
    underflow: bool = False

    __array_ufunc__ = None  # make numpy scalars defer to the reflected operators

    def __float__(self):
        return float(self.value)

    def _combine(self, other, value, error):
        if isinstance(other, SeriesValue):
            return SeriesValue(
                float(value), float(error),
                self.terms_used + other.terms_used,
                self.truncated or other.truncated,
                self.underflow or other.underflow,
            )
        return SeriesValue(float(value), float(error), self.terms_used,
                           self.truncated, self.underflow)

    def __add__(self, other):
        if isinstance(other, SeriesValue):
            return self._combine(other, self.value + other.value,
                                 self.error_bound + other.error_bound)
        return self._combine(other, self.value + other, self.error_bound)

    __radd__ = __add__

    def __neg__(self):
        return replace(self, value=-self.value)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SeriesValue):
            return self._combine(
                other, self.value * other.value,
                abs(self.value) * other.error_bound
                + abs(other.value) * self.error_bound
                + self.error_bound * other.error_bound,
            )
        return self._combine(other, self.value * other, abs(other) * self.error_bound)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SeriesValue):
            raise TypeError("division by a SeriesValue is not supported")
        return self * (1.0 / other)

    @classmethod
    def exact(cls, value) -> "SeriesValue":
        return cls(float(value))


def _tail(last, prev, extent, mode):
    """Tail estimate along one axis from the last two slice magnitudes."""
    if last == 0.0:
        return 0.0
    if prev <= 0.0:
        return math.inf
    r = last / prev
    if r >= 1.0:
        return math.inf
    return last * r if mode == "first_omitted_term" else last * r / (1.0 - r)


def _finite_tail(tail, last, extent):
    # crude but finite fallback once an axis is capped in the pre-asymptotic regime
    return tail if math.isfinite(tail) else last * extent


def _initial_extent(rate, budget, max_index, minimum, even):
    if rate <= 0.0 or not math.isfinite(rate):
        n = max_index
    else:
        n = int(math.ceil(budget / rate)) + 2
    n = max(minimum, min(n, max_index))
    if even and n % 2:
        n = n + 1 if n < max_index else n - 1
    return n


def _grid(starts, extents, offset0=0, length0=None):
    ndim = len(starts)
    axes = []
    for i, (s, e) in enumerate(zip(starts, extents)):
        if i == 0:
            idx = np.arange(s + offset0, s + offset0 + (e if length0 is None else length0),
                            dtype=float)
        else:
            idx = np.arange(s, s + e, dtype=float)
        shape = [1] * ndim
        shape[i] = idx.size
        axes.append(idx.reshape(shape))
    return axes


def _pairs(terms, axis):
    """Group terms pairwise (odd + even index) along ``axis``."""
    moved = np.moveaxis(terms, axis, -1)
    paired = moved.reshape(moved.shape[:-1] + (moved.shape[-1] // 2, 2)).sum(axis=-1)
    return np.moveaxis(paired, -1, axis)


def _evaluate_block(kernel, starts, extents, alternating_axis):
    """Sum of the block plus the two trailing slice magnitudes per axis."""
    ndim = len(starts)
    per_row = int(np.prod(extents[1:])) if ndim > 1 else 1
    rows = max(2, _CHUNK_ELEMENTS // max(per_row, 1))
    rows += rows % 2  # keep pairs on an alternating axis 0 intact
    total = 0.0
    abs_total = 0.0
    last = [0.0] * ndim
    prev = [0.0] * ndim
    row_mags = []  # trailing axis-0 slices seen so far
    done = 0
    while done < extents[0]:
        length = min(rows, extents[0] - done)
        axes = _grid(starts, extents, offset0=done, length0=length)
        shape = (length,) + tuple(extents[1:])
        terms = np.broadcast_to(kernel(*axes), shape)
        if alternating_axis is not None:
            terms = _pairs(terms, alternating_axis)
        mags = np.abs(terms)
        total += float(terms.sum())
        abs_total += float(mags.sum())
        for i in range(1, ndim):
            sl = np.moveaxis(mags, i, 0)
            last[i] += float(sl[-1].sum())
            prev[i] += float(sl[-2].sum())
        flat0 = mags.reshape(mags.shape[0], -1).sum(axis=1)
        row_mags = (list(row_mags) + list(flat0[-2:]))[-2:]
        done += length
    last[0] = row_mags[-1]
    prev[0] = row_mags[-2] if len(row_mags) > 1 else 0.0
    return total, abs_total, last, prev


def box_sum(
    kernel: Callable[..., np.ndarray],
    starts: Sequence[float],
    rates: Sequence[float],
    policy: PrecisionPolicy = DEFAULT_POLICY,
    *,
    alternating_axis: int | None = None,
    name: str = "series",
) -> SeriesValue:
    """Adaptively sum ``kernel`` over a rectangular index block.

    Parameters
    ----------
    kernel : callable
        ``kernel(*axes)`` receives one broadcastable float index array per
        axis and returns the terms.
    starts : sequence of float
        First index along every axis (e.g. 1, or 0.5 for half-integer
        lattices written directly as ``m + 1/2``).
    rates : sequence of float
        Asymptotic exponential decay rate per unit index along each axis;
        only used to size the first block.
    alternating_axis : int, optional
        Axis carrying a ``(-1)**(n+1)`` factor.  Terms along it are summed
        in odd/even pairs before anything else.
    """
    ndim = len(starts)
    budget = policy.decay_budget
    extents = [
        _initial_extent(r, budget, policy.max_index, 4 if i == alternating_axis else 3,
                        i == alternating_axis)
        for i, r in enumerate(rates)
    ]
    while True:
        total, abs_total, last, prev = _evaluate_block(kernel, starts, extents,
                                                       alternating_axis)
        tails = []
        for i in range(ndim):
            # along the alternating axis each slice is a pair, so one more pair
            # stands for two terms and the ratio is per pair
            tails.append(_tail(last[i], prev[i], extents[i], policy.error_mode))
        target = max(policy.rel_tol * abs(total), policy.abs_floor)
        rounding = 4.0 * EPS * abs_total
        if sum(tails) <= target:
            return SeriesValue(total, sum(tails) + rounding, int(np.prod(extents)))
        grew = False
        for i in range(ndim):
            if tails[i] > target / ndim and extents[i] < policy.max_index:
                new = min(2 * extents[i], policy.max_index)
                if i == alternating_axis and new % 2:
                    new -= 1
                if new > extents[i]:
                    extents[i] = new
                    grew = True
        if not grew:
            err = sum(_finite_tail(t, l, e) for t, l, e in zip(tails, last, extents))
            return _truncated(name, total, err + rounding, int(np.prod(extents)), policy)


def _truncated(name, value, err, terms, policy):
    if policy.strict:
        raise SeriesNonConvergence(name, value, err, terms)
    return SeriesValue(value, err, terms, truncated=True)


def product_sum(
    weight: Callable[[np.ndarray, np.ndarray], np.ndarray],
    bessel: Callable[[np.ndarray], np.ndarray],
    beta: float,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    *,
    shift: float = 0.0,
    alternating: bool = False,
    name: str = "series",
) -> SeriesValue:
    """Sum ``weight(mu, n) * bessel(beta * mu * n)`` over ``m >= 0``, ``n >= 1``.

    Here ``mu = m + shift`` with ``m`` starting at 1 when ``shift == 0``
    and at 0 otherwise.  ``weight`` must be non-increasing in ``n`` (a
    non-positive power of ``n``) and ``bessel`` one of the ``K_nu``; then
    consecutive terms in a row shrink at least by ``exp(-beta * mu)``,
    which gives a rigorous bound on each row's tail.  With
    ``alternating=True`` a factor ``(-1)**(n+1)`` is applied and rows are
    summed in odd/even pairs.
    """
    budget = policy.decay_budget
    m0 = 1.0 if shift == 0.0 else shift
    n_rows = _initial_extent(beta, budget, policy.max_index, 3, False)
    inner_boost = 1.0
    while True:
        mu = m0 + np.arange(n_rows, dtype=float)
        rate = beta * mu
        counts = np.ceil(inner_boost * budget / rate).astype(np.int64) + 2
        counts = np.clip(counts, 2, policy.max_index)
        if alternating:
            counts += counts % 2
            counts = np.minimum(counts, policy.max_index - policy.max_index % 2)
        offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
        total_terms = int(counts.sum())
        mu_flat = np.repeat(mu, counts)
        n_flat = (np.arange(total_terms) - np.repeat(offsets, counts) + 1).astype(float)
        terms = weight(mu_flat, n_flat) * bessel(beta * mu_flat * n_flat)
        if alternating:
            terms = terms * np.where(n_flat % 2 == 1, 1.0, -1.0)
            paired = terms.reshape(-1, 2).sum(axis=1)
            rows = np.add.reduceat(paired, offsets // 2)
        else:
            rows = np.add.reduceat(terms, offsets)
        abs_rows = np.add.reduceat(np.abs(terms), offsets)
        total = float(rows.sum())
        abs_total = float(abs_rows.sum())

        # row tails: geometric bound from each row's final term
        last_idx = offsets + counts - 1
        r_in = np.exp(-rate)
        t_last = np.abs(terms[last_idx])
        if policy.error_mode == "first_omitted_term":
            inner_tail = float(np.sum(t_last * r_in))
        else:
            inner_tail = float(np.sum(t_last * r_in / -np.expm1(-rate)))

        outer_tail = _tail(float(abs_rows[-1]), float(abs_rows[-2]), n_rows, policy.error_mode)
        target = max(policy.rel_tol * abs(total), policy.abs_floor)
        rounding = 4.0 * EPS * abs_total
        if inner_tail + outer_tail <= target:
            return SeriesValue(total, inner_tail + outer_tail + rounding, total_terms)

        grew = False
        if outer_tail > target / 2 and n_rows < policy.max_index:
            n_rows = min(2 * n_rows, policy.max_index)
            grew = True
        if inner_tail > target / 2 and int(counts.max()) < policy.max_index:
            inner_boost *= 2.0
            grew = True
        if not grew:
            err = inner_tail + _finite_tail(outer_tail, float(abs_rows[-1]), n_rows)
            return _truncated(name, total, err + rounding, total_terms, policy)
