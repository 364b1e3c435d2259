"""Inter-period change analysis at constant and current prices.

Percentages are kept as exact ``Fraction`` objects (0.5398 means +53.98 %)
and only rounded when rendered. Levels are signed; arrows are a rendering
concern.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .errors import RegionMismatch
from .model import BalanceSheet, Category, LineItem, Money, Side, UnitPrice
from .units import Quantity, normalize
from .valuation import market_value

__all__ = [
    "Change",
    "ChangeRecord",
    "ChangeReport",
    "SheetChangeSummary",
    "constant_price_change",
    "current_price_change",
    "sheet_change",
    "item_change_report",
    "ratio",
    "format_pct",
]


@dataclass(frozen=True)
class Change:
    level: Money
    pct: Fraction | None  # None when the opening base is zero


def ratio(num: Decimal, den: Decimal) -> Fraction | None:
    if den == 0:
        return None
    return Fraction(num) / Fraction(den)


def format_pct(pct: Fraction | None, places: int = 2, signed: bool = True) -> str:
    """``Fraction(5398, 10000)`` -> ``"+53.98%"``; None -> ``"--"``."""
    if pct is None:
        return "--"
    scaled = Decimal(pct.numerator * 100) / Decimal(pct.denominator)
    text = f"{scaled.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP):f}"
    if signed and not text.startswith("-"):
        text = "+" + text
    return text + "%"


def constant_price_change(q_open: Quantity, q_close: Quantity, p_base: UnitPrice) -> Change:
    """Value of the quantity change at the base-period price.

    The percentage is the quantity change relative to the opening quantity
    and does not depend on the price.
    """
    level_q = normalize(q_close, q_open.unit) - q_open
    level = market_value(level_q, p_base)
    return Change(level, ratio(level_q.magnitude, q_open.magnitude))


def current_price_change(v_open: Money, v_close: Money) -> Change:
    level = v_close - v_open
    return Change(level, ratio(level.yuan, v_open.yuan))


@dataclass(frozen=True)
class ChangeRecord:
    side: Side
    category: Category
    item: str
    q_open: Quantity | None
    q_close: Quantity | None
    p_open: UnitPrice | None
    p_close: UnitPrice | None
    v_open: Money
    v_close: Money
    level_change: Quantity | None
    const_price_change: Money | None
    const_price_pct: Fraction | None
    curr_price_change: Money
    curr_price_pct: Fraction | None


def _record(a: LineItem, b: LineItem) -> ChangeRecord:
    level_q = const_level = const_pct = None
    if a.quantity is not None and b.quantity is not None:
        level_q = normalize(b.quantity, a.quantity.unit) - a.quantity
        const_pct = ratio(level_q.magnitude, a.quantity.magnitude)
        if a.price is not None:
            const_level = constant_price_change(a.quantity, b.quantity, a.price).level
    curr = current_price_change(a.value, b.value)
    return ChangeRecord(
        side=a.side,
        category=a.category,
        item=a.item,
        q_open=a.quantity,
        q_close=b.quantity,
        p_open=a.price,
        p_close=b.price,
        v_open=a.value,
        v_close=b.value,
        level_change=level_q,
        const_price_change=const_level,
        const_price_pct=const_pct,
        curr_price_change=curr.level,
        curr_price_pct=curr.pct,
    )


@dataclass(frozen=True)
class ChangeReport:
    records: tuple[ChangeRecord, ...]
    additions: tuple[LineItem, ...]  # present only in the closing sheet
    removals: tuple[LineItem, ...]  # present only in the opening sheet

    def find(self, side: Side, category: Category, item: str) -> ChangeRecord | None:
        for r in self.records:
            if (r.side, r.category, r.item) == (side, category, item):
                return r
        return None


def item_change_report(opening: BalanceSheet, closing: BalanceSheet) -> ChangeReport:
    """Pair items by side, category and name; unmatched ones are listed separately."""
    closing_by_key = {li.key: li for li in closing.items()}
    opening_keys = {li.key for li in opening.items()}
    records = []
    removals = []
    for li in opening.items():
        other = closing_by_key.get(li.key)
        if other is None:
            removals.append(li)
        else:
            records.append(_record(li, other))
    additions = [li for li in closing.items() if li.key not in opening_keys]
    return ChangeReport(tuple(records), tuple(additions), tuple(removals))


@dataclass(frozen=True)
class SheetChangeSummary:
    region: str
    opening_date: datetime.date
    closing_date: datetime.date
    asset_open: Money
    asset_close: Money
    liability_open: Money
    liability_close: Money
    net_worth_open: Money
    net_worth_close: Money
    asset_change: Change
    liability_change: Change
    net_worth_change: Change
    gdp_open: Money
    gdp_close: Money
    gdp_change: Change
    liability_to_gdp_open: Fraction | None
    liability_to_gdp_close: Fraction | None


def sheet_change(
    opening: BalanceSheet, closing: BalanceSheet, gdp_open: Money, gdp_close: Money
) -> SheetChangeSummary:
    if opening.region != closing.region:
        raise RegionMismatch(f"opening sheet is for {opening.region!r}, closing for {closing.region!r}")
    return SheetChangeSummary(
        region=opening.region,
        opening_date=opening.date,
        closing_date=closing.date,
        asset_open=opening.asset_total,
        asset_close=closing.asset_total,
        liability_open=opening.liability_total,
        liability_close=closing.liability_total,
        net_worth_open=opening.net_worth,
        net_worth_close=closing.net_worth,
        asset_change=current_price_change(opening.asset_total, closing.asset_total),
        liability_change=current_price_change(opening.liability_total, closing.liability_total),
        net_worth_change=current_price_change(opening.net_worth, closing.net_worth),
        gdp_open=gdp_open,
        gdp_close=gdp_close,
        gdp_change=current_price_change(gdp_open, gdp_close),
        liability_to_gdp_open=ratio(opening.liability_total.yuan, gdp_open.yuan),
        liability_to_gdp_close=ratio(closing.liability_total.yuan, gdp_close.yuan),
    )
