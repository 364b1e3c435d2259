"""Balance sheet assembly and the internal-consistency validator."""

from __future__ import annotations

import datetime
import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable

from .errors import DimensionMismatch, DuplicateItem, IllegalCategory, InvariantViolation
from .model import (
    CATEGORIES,
    BalanceSheet,
    Category,
    LineItem,
    Money,
    Side,
    Totals,
    money_sum,
)
from .valuation import market_value

__all__ = [
    "compile_sheet",
    "category_subtotal",
    "check_totals",
    "Discrepancy",
    "compare_values",
    "validate_consistency",
    "DEFAULT_REL_TOL",
]

DEFAULT_REL_TOL = 0.01


def compile_sheet(
    region: str,
    date: datetime.date | None,
    assets: Iterable[LineItem] = (),
    liabilities: Iterable[LineItem] = (),
) -> BalanceSheet:
    """Assemble a sheet, deriving totals from the stored item values.

    Item order is kept as given; it only affects rendering.
    """
    assets = tuple(assets)
    liabilities = tuple(liabilities)
    seen: set = set()
    for side, items in ((Side.ASSET, assets), (Side.LIABILITY, liabilities)):
        for li in items:
            if li.side is not side or li.category not in CATEGORIES[side]:
                raise IllegalCategory(
                    f"{li.item!r} ({li.side.value}/{li.category.value}) "
                    f"listed on the {side.value.lower()} side"
                )
            if li.key in seen:
                raise DuplicateItem(f"{side.value}/{li.category.value}/{li.item} appears twice")
            seen.add(li.key)

    asset_total = money_sum(li.value for li in assets)
    liability_total = money_sum(li.value for li in liabilities)
    totals = Totals(asset_total, liability_total, asset_total - liability_total)
    return BalanceSheet(region, date, assets, liabilities, totals)


def category_subtotal(sheet: BalanceSheet, side: Side, category: Category) -> Money:
    if category not in CATEGORIES[side]:
        raise IllegalCategory(f"{category.value} is not a {side.value.lower()} category")
    return money_sum(li.value for li in sheet.items(side) if li.category is category)


def check_totals(sheet: BalanceSheet) -> None:
    """Re-derive totals and the net-worth identity; raise InvariantViolation on mismatch."""
    t = sheet.totals
    problems = []
    if money_sum(li.value for li in sheet.assets) != t.asset_total:
        problems.append("asset total differs from the sum of asset items")
    if money_sum(li.value for li in sheet.liabilities) != t.liability_total:
        problems.append("liability total differs from the sum of liability items")
    if (t.asset_total - t.liability_total - t.net_worth).yuan != 0:
        problems.append("net worth != assets - liabilities")
    for side in Side:
        for li in sheet.items(side):
            if li.side is not side or li.category not in CATEGORIES[side]:
                problems.append(f"{li.item!r} has an illegal category for the {side.value} side")
    if problems:
        raise InvariantViolation("; ".join(problems))


@dataclass(frozen=True)
class Discrepancy:
    """A stored value that disagrees with its recomputation.

    ``ratio`` is computed / stored. ``decade`` is k when the ratio is within
    tolerance of 10**k (k != 0): the stored figure is probably off by that
    power of ten. ``kind`` is "product" for quantity x price checks, "rate" for
    free-standing comparisons, "identity" for broken sheet invariants.
    """

    item: str
    computed: Decimal
    stored: Decimal
    ratio: Decimal | None
    decade: int | None = None
    kind: str = "product"
    note: str = ""

    @property
    def suggested_factor(self) -> Decimal | None:
        return None if self.decade is None else Decimal(1).scaleb(self.decade)


def _decade(ratio: Decimal, rel_tol: float) -> int | None:
    if ratio <= 0:
        return None
    k = round(math.log10(ratio))
    if k == 0:
        return None
    target = Decimal(1).scaleb(k)
    if abs(ratio / target - 1) <= Decimal(repr(rel_tol)):
        return k
    return None


def compare_values(
    label: str,
    computed: Decimal,
    stored: Decimal,
    rel_tol: float = DEFAULT_REL_TOL,
    kind: str = "rate",
) -> Discrepancy | None:
    """None when ``computed`` is within ``rel_tol`` of ``stored``."""
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    tol = Decimal(repr(rel_tol))
    if stored == 0:
        if computed == 0:
            return None
        return Discrepancy(label, computed, stored, None, None, kind, "stored value is zero")
    ratio = computed / stored
    if abs(ratio - 1) <= tol:
        return None
    return Discrepancy(label, computed, stored, ratio, _decade(ratio, rel_tol), kind)


def validate_consistency(
    sheet: BalanceSheet, rel_tol: float = DEFAULT_REL_TOL
) -> list[Discrepancy]:
    """Report, never raise. Items lacking a quantity or a price are skipped."""
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    out: list[Discrepancy] = []
    for li in sheet.items():
        label = f"{li.side.value}/{li.category.value}/{li.item}"
        if li.side is not li.category.side:
            out.append(
                Discrepancy(label, Decimal(0), Decimal(0), None, kind="identity",
                            note="category illegal for side")
            )
        if li.quantity is None or li.price is None:
            continue
        try:
            computed = market_value(li.quantity, li.price)
        except DimensionMismatch as exc:
            out.append(
                Discrepancy(label, Decimal(0), li.value.yuan, None, kind="product", note=str(exc))
            )
            continue
        d = compare_values(label, computed.yuan, li.value.yuan, rel_tol, kind="product")
        if d is not None:
            out.append(d)

    t = sheet.totals
    for label, computed, stored in (
        ("asset_total", money_sum(li.value for li in sheet.assets), t.asset_total),
        ("liability_total", money_sum(li.value for li in sheet.liabilities), t.liability_total),
        ("net_worth", t.asset_total - t.liability_total, t.net_worth),
    ):
        if computed != stored:
            ratio = computed.yuan / stored.yuan if stored.yuan else None
            out.append(
                Discrepancy(label, computed.yuan, stored.yuan, ratio, kind="identity",
                            note="sheet identity broken")
            )
    return out
