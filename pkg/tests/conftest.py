import numpy as np
import pytest

from boxcasimir.series import PrecisionPolicy

TIGHT = PrecisionPolicy(rel_tol=1e-13)


@pytest.fixture
def tight():
    return TIGHT


def richardson_derivative(f, x, h):
    """Central difference at steps h and h/2 combined to fourth order."""
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h / 2) - f(x - h / 2)) / h
    return d2 + (d2 - d1) / 3


def rel_err(value, ref):
    return abs(value - ref) / abs(ref)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
