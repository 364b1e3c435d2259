import dataclasses
import datetime
from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nrbs.compiler import (
    category_subtotal,
    check_totals,
    compare_values,
    compile_sheet,
    validate_consistency,
)
from nrbs.errors import DuplicateItem, IllegalCategory, InvariantViolation
from nrbs.model import Category, LineItem, Money, Side, Totals, UnitPrice, ValuationMethod
from nrbs.units import Quantity
from nrbs.valuation import valued_item


def item(side, category, name, billions, method=ValuationMethod.MARKET, q=None, p=None):
    return LineItem(side, category, name, Money.billion(billions), method, q, p)


def test_empty_sheet():
    s = compile_sheet("X", None)
    assert s.totals == Totals(Money.zero(), Money.zero(), Money.zero())


def test_opening_totals(sheet2013):
    assert sheet2013.asset_total.display() == "18775.59"
    assert sheet2013.liability_total.display() == "233.60"
    assert sheet2013.net_worth.display() == "18541.99"
    assert len(sheet2013.assets) == 25


def test_closing_totals(sheet2018):
    assert (sheet2018.asset_total.display(), sheet2018.liability_total.display(),
            sheet2018.net_worth.display()) == ("19268.60", "265.01", "19003.59")


def test_subtotals(sheet2013):
    assert category_subtotal(sheet2013, Side.LIABILITY, Category.RESOURCE_OVEREXPLOITATION).display() == "212.82"
    assert category_subtotal(sheet2013, Side.ASSET, Category.FORESTS).display() == "5.80"


def test_subtotal_empty_category():
    s = compile_sheet("X", None, [item(Side.ASSET, Category.LAND, "Woodland", "1")])
    assert category_subtotal(s, Side.ASSET, Category.WATER) == Money.zero()


def test_subtotal_illegal_category(sheet2013):
    with pytest.raises(IllegalCategory):
        category_subtotal(sheet2013, Side.ASSET, Category.ENVIRONMENTAL_POLLUTION)


def test_subtotals_cover_side(sheet2018):
    for side in Side:
        total = Money.zero()
        for c in Category:
            if c.side is side:
                total = total + category_subtotal(sheet2018, side, c)
        assert total == (sheet2018.asset_total if side is Side.ASSET else sheet2018.liability_total)


def test_duplicate_item():
    li = item(Side.ASSET, Category.LAND, "Woodland", "1")
    with pytest.raises(DuplicateItem):
        compile_sheet("X", None, [li, li])


def test_item_on_wrong_side():
    li = item(Side.ASSET, Category.LAND, "Woodland", "1")
    with pytest.raises(IllegalCategory):
        compile_sheet("X", None, [], [li])


def test_check_totals_detects_tampering(sheet2013):
    check_totals(sheet2013)
    bad = dataclasses.replace(
        sheet2013, totals=dataclasses.replace(sheet2013.totals, net_worth=Money.billion("1"))
    )
    with pytest.raises(InvariantViolation):
        check_totals(bad)


def test_validator_flags_tampered_totals(sheet2013):
    bad = dataclasses.replace(
        sheet2013, totals=dataclasses.replace(sheet2013.totals, asset_total=Money.billion("1"))
    )
    kinds = {d.item: d.kind for d in validate_consistency(bad)}
    assert kinds["asset_total"] == "identity"


amounts = st.lists(st.decimals(min_value=0, max_value=10**5, places=2), max_size=15)


@given(amounts, amounts)
def test_net_worth_identity(a, b):
    assets = [item(Side.ASSET, Category.LAND, f"a{i}", v) for i, v in enumerate(a)]
    liabs = [item(Side.LIABILITY, Category.ECOLOGICAL_DEGRADATION, f"l{i}", v,
                  ValuationMethod.AGGREGATE) for i, v in enumerate(b)]
    s = compile_sheet("X", datetime.date(2020, 1, 1), assets, liabs)
    assert s.net_worth == s.asset_total - s.liability_total
    assert s.asset_total.billions == sum(a, Decimal(0))
    check_totals(s)


# -- validator ---------------------------------------------------------------

def test_exact_product_no_discrepancy():
    q, p = Quantity.of(100, "t"), UnitPrice.of("1.45", "t")
    li = item(Side.ASSET, Category.MINERALS, "Salt", "0.000000145", q=q, p=p)
    assert validate_consistency(compile_sheet("X", None, [li])) == []


def test_cement_limestone_decade(sheet2013):
    report = validate_consistency(sheet2013)
    assert report
    by_item = {d.item: d for d in report}
    d = by_item["Asset/Minerals/Cement limestone"]
    # 7.68 x 10^10 t at 1.00 yuan/t is 76.8 billion yuan; the sheet stores 7.68.
    assert d.computed == Decimal("7.68E10") * Decimal("1.00")
    assert d.ratio == 10
    assert d.decade == 1 and d.suggested_factor == 10


def test_valued_sheet_is_clean(sheet2013):
    rebuilt = {Side.ASSET: [], Side.LIABILITY: []}
    for li in sheet2013.items():
        if li.quantity is not None and li.price is not None:
            li = valued_item(li.side, li.category, li.item, li.quantity, li.price, li.method)
        rebuilt[li.side].append(li)
    s = compile_sheet("Shaanxi", sheet2013.date, rebuilt[Side.ASSET], rebuilt[Side.LIABILITY])
    assert validate_consistency(s) == []


def test_agricultural_rate_within_tolerance():
    assert compare_values("agri", Decimal("190.20"), Decimal("190.21"), rel_tol=0.001) is None
    assert compare_values("agri", Decimal("190.20"), Decimal("190.21"), rel_tol=1e-6) is not None


def test_compare_values_zero_stored():
    d = compare_values("x", Decimal(1), Decimal(0))
    assert d.ratio is None and d.decade is None
    assert compare_values("x", Decimal(0), Decimal(0)) is None


@pytest.mark.parametrize("k", [-3, -1, 1, 2, 3])
def test_decade_detection(k):
    d = compare_values("x", Decimal(1).scaleb(k) * Decimal("1.004"), Decimal(1))
    assert d.decade == k


def test_non_decade_ratio():
    assert compare_values("x", Decimal("5"), Decimal("1")).decade is None


def test_rel_tol_must_be_positive(sheet2013):
    with pytest.raises(ValueError):
        validate_consistency(sheet2013, 0)
