from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nrbs.errors import CurrencyMismatch, IllegalCategory, InputError
from nrbs.model import (
    Category,
    LineItem,
    Money,
    Side,
    UnitPrice,
    ValuationMethod,
    money_add,
    money_sum,
)
from nrbs.units import Quantity, Unit


def test_money_add_land_items():
    s = money_add(Money.billion("1054.70"), Money.billion("2892.94"))
    assert s == Money.billion("3947.64")
    assert s.display() == "3947.64"


def test_money_add_identity():
    x = Money.billion("12.34")
    assert money_add(x, Money.zero()) == x


def test_currency_mismatch():
    with pytest.raises(CurrencyMismatch):
        money_add(Money(Decimal(1)), Money(Decimal(1), currency="usd"))


def test_asset_values_sum(sheet2013):
    assert money_sum(li.value for li in sheet2013.assets).display() == "18775.59"


@pytest.mark.parametrize(
    "yuan,shown",
    [("5000000", "0.01"), ("4999999", "0.00"), ("-5000000", "-0.01"), ("1234567890", "1.23")],
)
def test_display_half_up(yuan, shown):
    assert Money(Decimal(yuan)).display() == shown


def test_money_stores_decimal():
    m = Money(0.1)
    assert isinstance(m.yuan, Decimal) and m.yuan == Decimal("0.1")


def test_unit_price_conversion():
    p = UnitPrice.of("264200000", "km2")
    assert p.to(Unit("hm2")).amount == Decimal("2642000")
    assert p.to(Unit("km2", 3)).amount == Decimal("264200000000")


def test_unit_price_positive():
    with pytest.raises(InputError):
        UnitPrice.of(0, "t")


def test_line_item_category_legality():
    with pytest.raises(IllegalCategory):
        LineItem(Side.ASSET, Category.ENVIRONMENTAL_POLLUTION, "SO2", Money.zero(), ValuationMethod.ABATEMENT)
    with pytest.raises(IllegalCategory):
        LineItem(Side.LIABILITY, Category.LAND, "Woodland", Money.zero(), ValuationMethod.ICA)


def test_line_item_negative_quantity():
    with pytest.raises(InputError):
        LineItem(Side.ASSET, Category.ENERGY, "Coal", Money.zero(), ValuationMethod.MARKET,
                 Quantity.of(-1, "t"), UnitPrice.of("8.50", "t"))


def test_gap_row():
    gap = LineItem(Side.LIABILITY, Category.RESOURCE_OVEREXPLOITATION, "Biodiversity loss",
                   Money.zero(), ValuationMethod.REPLACEMENT)
    assert gap.is_gap
    aggregate = LineItem(Side.LIABILITY, Category.ECOLOGICAL_DEGRADATION, "Overfishing",
                         Money.billion("1.78"), ValuationMethod.AGGREGATE)
    assert not aggregate.is_gap


def test_category_sides():
    assert {c for c in Category if c.side is Side.LIABILITY} == {
        Category.RESOURCE_OVEREXPLOITATION,
        Category.ENVIRONMENTAL_POLLUTION,
        Category.ECOLOGICAL_DEGRADATION,
    }


amounts = st.decimals(min_value=-10**6, max_value=10**6, places=2, allow_nan=False, allow_infinity=False)


@given(amounts, amounts, amounts)
def test_money_add_associative_commutative(a, b, c):
    x, y, z = Money.billion(a), Money.billion(b), Money.billion(c)
    assert money_add(x, y) == money_add(y, x)
    assert money_add(money_add(x, y), z) == money_add(x, money_add(y, z))


@given(st.lists(amounts, max_size=40))
def test_money_sum_exact(values):
    total = money_sum(Money.billion(v) for v in values)
    assert total.billions == sum(values, Decimal(0))
