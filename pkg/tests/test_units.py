from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nrbs.errors import DimensionMismatch, MalformedScale, UnknownUnit
from nrbs.units import Dimension, Quantity, Unit, normalize, to_decimal


def test_km2_to_hm2():
    assert normalize(Quantity.of(1, "km2"), Unit("hm2")).magnitude == 100


def test_scale_expansion():
    q = normalize(Quantity.of("39.92", "km2", 3), Unit("km2"))
    assert q.magnitude == Decimal("39920")


def test_zero_invariant_under_rescale():
    q = normalize(Quantity.of(0, "t", 7), Unit("t"))
    assert q.magnitude == 0 and q.unit == Unit("t")


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        normalize(Quantity.of(1, "t"), Unit("m3"))
    with pytest.raises(DimensionMismatch):
        Quantity.of(1, "t") + Quantity.of(1, "hm2")


@pytest.mark.parametrize("scale", [-1, 13, 1.5, True])
def test_scale_bounds(scale):
    with pytest.raises(MalformedScale):
        Unit("t", scale)


def test_unknown_symbol():
    with pytest.raises(UnknownUnit):
        Unit("furlong")


def test_aliases_and_tokens():
    assert Unit("km²", 3).symbol == "km2"
    assert Unit("ha") == Unit("hm2")
    assert Unit("km2", 3).token == "10^3 km2"
    assert Unit("t").token == "t"
    assert Unit("count").dimension is Dimension.COUNT


def test_addition_normalizes_to_left_unit():
    s = Quantity.of("1.5", "km2") + Quantity.of(50, "hm2")
    assert s.unit == Unit("km2") and s.magnitude == 2


def test_to_decimal_rejects_bool_and_text():
    with pytest.raises(TypeError):
        to_decimal(True)
    with pytest.raises(ValueError):
        to_decimal("abc")
    assert to_decimal(0.1) == Decimal("0.1")


magnitudes = st.decimals(min_value=0, max_value=10**9, places=4, allow_nan=False, allow_infinity=False)
scales = st.integers(0, 12)


@given(magnitudes, scales, scales)
def test_normalize_round_trip(m, a, b):
    q = Quantity(m, Unit("m3", a))
    there = normalize(q, Unit("m3", b))
    assert normalize(there, q.unit) == q
    assert there.base_magnitude() == q.base_magnitude()


@given(magnitudes, magnitudes)
def test_area_units_interconvert(km, hm):
    total = Quantity(km, Unit("km2")) + Quantity(hm, Unit("hm2"))
    assert total.to(Unit("hm2")).magnitude == km * 100 + hm
