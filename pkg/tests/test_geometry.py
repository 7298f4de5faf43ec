import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boxcasimir.errors import DomainError
from boxcasimir.geometry import BoxGeometry, ThermalState

edge = st.floats(0.01, 100.0)


@given(edge, edge, edge)
def test_canonical_order(a, b, c):
    g = BoxGeometry(a, b, c).canonical()
    assert g.b <= g.c <= g.a
    assert sorted(g.edges) == sorted((a, b, c))


@given(edge, edge, edge, st.sampled_from("abc"))
def test_axis_first(a, b, c, axis):
    g = BoxGeometry(a, b, c)
    l, p, q = g.axis_first(axis)
    assert l == g.edge(axis) and p <= q
    assert sorted((l, p, q)) == sorted(g.edges)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan, "1", None, True])
def test_rejects_bad_edges(bad):
    with pytest.raises(DomainError):
        BoxGeometry(1.0, bad, 1.0)


def test_with_edge_and_volume():
    g = BoxGeometry(1, 2, 3).with_edge("b", 5)
    assert g.edges == (1.0, 5.0, 3.0) and g.volume() == 15.0
    with pytest.raises(DomainError):
        g.edge("d")


def test_thermal_state():
    assert ThermalState(0).is_zero
    with pytest.raises(DomainError):
        ThermalState(-1)
    g = BoxGeometry(1, 2, 3)
    assert ThermalState(0).regime(g) == "zero"
    assert ThermalState(0.01).regime(g) == "low"
    assert ThermalState(1).regime(g) == "finite"
    assert ThermalState(20).regime(g) == "high"
