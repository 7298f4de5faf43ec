import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxcasimir.errors import DomainError
from boxcasimir.identities import (
    IDENTITY_NAMES,
    MULTI_SERIES,
    REQUIRED,
    IdentityParams,
    digits_agreed,
    lhs_cost,
    one_partition_residual,
    one_sum_integrals,
    verify_identity,
    verify_multi_series,
    verify_one_partition,
    verify_one_sum,
    verify_schlomilch,
)
from boxcasimir.identity_grid import GRID, GRID_RANGE, MAX_LHS_TERMS, grid_params

PI = math.pi


class TestSchlomilch:
    def test_symmetric_point(self):
        rep = verify_schlomilch(PI)
        assert rep.abs_diff < 1e-12
        # each half is the classical sum 1/24 - 1/(8 pi), times pi
        k = np.arange(1, 60)
        direct = float(np.sum(k / np.expm1(2 * PI * k)))
        assert direct == pytest.approx(1 / 24 - 1 / (8 * PI), rel=1e-13)
        assert rep.components["alpha_sum"] == pytest.approx(PI * direct, rel=1e-13)
        assert rep.components["alpha_sum"] == rep.components["beta_sum"]

    def test_asymmetric_point(self):
        rep = verify_schlomilch(2 * PI ** 2)
        assert rep.params.beta == pytest.approx(0.5)
        assert rep.abs_diff < 1e-12

    def test_digits_example(self):
        assert verify_schlomilch(3.14159).digits_agreed >= 12

    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            verify_schlomilch(0.0)


class TestOneSum:
    @pytest.mark.parametrize("theta,m,alpha", [(1, 1, 3), (2, 0.5, 1)])
    def test_examples(self, theta, m, alpha):
        assert verify_one_sum(theta, m, alpha).abs_diff < 1e-9

    def test_massless_limit_reduces_to_classical_sum(self):
        rep = verify_one_sum(1.0, 0.0, 2 * PI)
        assert rep.lhs.value == pytest.approx(1 / 24 - 1 / (8 * PI), rel=1e-12)
        assert rep.abs_diff < 1e-12
        near = verify_one_sum(1.0, 1e-9, 2 * PI)
        assert near.rhs.value == pytest.approx(rep.rhs.value, abs=1e-8)

    def test_continuity_in_m(self):
        r0 = verify_one_sum(1.3, 0.0, 1.7)
        r1 = verify_one_sum(1.3, 1e-4, 1.7)
        res0 = r0.lhs.value - r0.rhs.value
        res1 = r1.lhs.value - r1.rhs.value
        assert abs(res1 - res0) < 1e-6
        assert abs(r1.rhs.value - r0.rhs.value) < 1e-6

    def test_integrals_massless_closed_form(self):
        i1, i2 = one_sum_integrals(1.5, 0.0, 2.0)
        j1, j2 = one_sum_integrals(1.5, 1e-7, 2.0)
        assert j1.value == pytest.approx(i1.value, rel=1e-6)
        assert j2.value == pytest.approx(i2.value, rel=1e-6)


class TestMultiSeries:
    def test_three_partition_plus_cube(self):
        p = IdentityParams(alpha=2 * PI, a=1, b=1, c=1)
        assert verify_multi_series("three_partition_plus", p).digits_agreed >= 8

    def test_two_sum_unit(self):
        assert verify_multi_series("two_sum", IdentityParams(theta=1, sigma=1)).digits_agreed >= 8

    def test_one_partition_self_dual(self):
        rep = verify_multi_series("one_partition", IdentityParams(alpha=2 * PI))
        assert rep.components["direct_sum"] == pytest.approx(rep.components["dual_sum"], rel=1e-14)
        assert rep.digits_agreed >= 12

    def test_unknown(self):
        with pytest.raises(DomainError):
            verify_multi_series("four_sum", IdentityParams(alpha=1.0))
        with pytest.raises(DomainError):
            verify_identity("nope", IdentityParams(alpha=1.0))

    def test_missing_parameters(self):
        with pytest.raises(DomainError):
            verify_identity("two_sum", IdentityParams(theta=1.0))


@settings(max_examples=40, deadline=None)
@given(alpha=st.floats(0.3, 30.0))
def test_one_partition_duality(alpha):
    dual = 4 * PI ** 2 / alpha
    assert abs(one_partition_residual(alpha)) < 1e-10
    assert abs(one_partition_residual(dual)) < 1e-10
    r, s = verify_one_partition(alpha), verify_one_partition(dual)
    assert r.components["dual_sum"] == pytest.approx(s.components["direct_sum"], rel=1e-12, abs=1e-300)


def test_digits_agreed_definition():
    assert digits_agreed(1.0, 1.0) == 16
    assert digits_agreed(1.0, 1.0 + 3e-8) == 7
    assert digits_agreed(-2.0, -2.0 - 2e-3) == 3


def test_report_serialises():
    d = verify_schlomilch(1.0).to_dict()
    assert d["identity"] == "schlomilch" and d["params"] == {"alpha": 1.0}
    assert set(d) >= {"lhs", "rhs", "abs_diff", "digits_agreed", "diagnostics"}


class TestFrozenGrid:
    def test_grid_shape(self):
        assert set(GRID) == set(IDENTITY_NAMES)
        for name, rows in GRID.items():
            assert len(rows) == 25
            for row in rows:
                assert len(row) == len(REQUIRED[name])
                assert all(GRID_RANGE[0] <= v <= GRID_RANGE[1] for v in row)

    def test_grid_respects_cost_filter(self):
        for name in IDENTITY_NAMES:
            for p in grid_params(name):
                assert lhs_cost(name, p) <= MAX_LHS_TERMS

    @pytest.mark.parametrize("name", IDENTITY_NAMES)
    def test_grid_agreement(self, name):
        for p in grid_params(name):
            rep = verify_identity(name, p)
            assert not rep.diagnostics, (name, p)
            assert rep.digits_agreed >= 7, (name, p, rep.digits_agreed)

    def test_three_sum_uses_order_zero_bessel_family(self):
        # the grid passing for three_sum is what pins the bracket's order-zero family
        worst = min(verify_identity("three_sum", p).digits_agreed for p in grid_params("three_sum"))
        assert worst >= 10


def test_multi_series_names():
    assert set(MULTI_SERIES) <= set(IDENTITY_NAMES)
