"""Money, unit prices, line items and balance sheets."""

from __future__ import annotations

import datetime
import enum
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable

from .errors import CurrencyMismatch, DimensionMismatch, IllegalCategory, InputError
from .units import EXACT, Dimension, Quantity, Unit, to_decimal

__all__ = [
    "Money",
    "UnitPrice",
    "Side",
    "Category",
    "ValuationMethod",
    "LineItem",
    "Totals",
    "BalanceSheet",
    "money_add",
    "money_sum",
    "BILLION",
    "CATEGORIES",
]

CURRENCY = "yuan"
BILLION = 9


@dataclass(frozen=True, order=True)
class Money:
    """An exact amount of yuan.

    ``yuan`` is the full amount (not pre-scaled). Display code picks the
    scale; 10**9 ("billion yuan") is the convention of the balance sheets.
    """

    yuan: Decimal
    currency: str = CURRENCY

    def __post_init__(self):
        object.__setattr__(self, "yuan", to_decimal(self.yuan))
        if self.currency != CURRENCY:
            raise CurrencyMismatch(f"only {CURRENCY!r} is supported, got {self.currency!r}")

    @classmethod
    def billion(cls, amount) -> Money:
        return cls(to_decimal(amount).scaleb(BILLION))

    @classmethod
    def zero(cls) -> Money:
        return cls(Decimal(0))

    def at_scale(self, scale: int = BILLION) -> Decimal:
        return self.yuan.scaleb(-scale)

    @property
    def billions(self) -> Decimal:
        return self.at_scale(BILLION)

    def display(self, scale: int = BILLION, places: int = 2) -> str:
        """Half-up rounded string; the stored amount is never rounded."""
        q = Decimal(1).scaleb(-places)
        return f"{self.at_scale(scale).quantize(q, rounding=ROUND_HALF_UP):f}"

    def __add__(self, other: Money) -> Money:
        if not isinstance(other, Money):
            return NotImplemented
        return money_add(self, other)

    def __sub__(self, other: Money) -> Money:
        if not isinstance(other, Money):
            return NotImplemented
        if other.currency != self.currency:
            raise CurrencyMismatch(f"{self.currency} vs {other.currency}")
        return Money(EXACT.subtract(self.yuan, other.yuan), self.currency)

    def __neg__(self) -> Money:
        return Money(-self.yuan, self.currency)

    def __mul__(self, k) -> Money:
        if isinstance(k, Money):
            return NotImplemented
        return Money(EXACT.multiply(self.yuan, to_decimal(k)), self.currency)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.yuan)

    def __str__(self) -> str:
        return f"{self.display()} billion {self.currency}"


def money_add(a: Money, b: Money) -> Money:
    if a.currency != b.currency:
        raise CurrencyMismatch(f"{a.currency} vs {b.currency}")
    return Money(EXACT.add(a.yuan, b.yuan), a.currency)


def money_sum(values: Iterable[Money]) -> Money:
    total = Money.zero()
    for v in values:
        total = money_add(total, v)
    return total


@dataclass(frozen=True)
class UnitPrice:
    """Yuan per one ``per`` unit, e.g. 26.42e7 yuan per km²."""

    amount: Decimal
    per: Unit

    def __post_init__(self):
        object.__setattr__(self, "amount", to_decimal(self.amount))
        if self.amount <= 0:
            raise InputError(f"unit price must be positive, got {self.amount}")

    @classmethod
    def of(cls, amount, symbol: str, scale: int = 0) -> UnitPrice:
        return cls(to_decimal(amount), Unit(symbol, scale))

    @property
    def dimension(self) -> Dimension:
        return self.per.dimension

    def to(self, per: Unit) -> UnitPrice:
        """Same price quoted against another unit (yuan/hm² -> yuan/km² multiplies by 100)."""
        if per.dimension != self.per.dimension:
            raise DimensionMismatch(f"cannot quote {self} per {per.token}")
        return UnitPrice(EXACT.divide(EXACT.multiply(self.amount, per.factor), self.per.factor), per)

    def __str__(self) -> str:
        return f"{self.amount:f} yuan/{self.per.token}"


class Side(enum.Enum):
    ASSET = "Asset"
    LIABILITY = "Liability"


class Category(enum.Enum):
    LAND = "Land"
    ENERGY = "Energy"
    MINERALS = "Minerals"
    WATER = "Water"
    FORESTS = "Forests"
    RESOURCE_OVEREXPLOITATION = "ResourceOverexploitation"
    ENVIRONMENTAL_POLLUTION = "EnvironmentalPollution"
    ECOLOGICAL_DEGRADATION = "EcologicalDegradation"

    @property
    def side(self) -> Side:
        return Side.ASSET if self in CATEGORIES[Side.ASSET] else Side.LIABILITY


CATEGORIES: dict[Side, tuple[Category, ...]] = {
    Side.ASSET: (
        Category.LAND,
        Category.ENERGY,
        Category.MINERALS,
        Category.WATER,
        Category.FORESTS,
    ),
    Side.LIABILITY: (
        Category.RESOURCE_OVEREXPLOITATION,
        Category.ENVIRONMENTAL_POLLUTION,
        Category.ECOLOGICAL_DEGRADATION,
    ),
}


class ValuationMethod(enum.Enum):
    ICA = "ICA"
    MARKET = "MARKET"
    REPLACEMENT = "REPLACEMENT"
    ABATEMENT = "ABATEMENT"
    AGGREGATE = "AGGREGATE"


@dataclass(frozen=True)
class LineItem:
    side: Side
    category: Category
    item: str
    value: Money
    method: ValuationMethod
    quantity: Quantity | None = None
    price: UnitPrice | None = None

    def __post_init__(self):
        if self.category not in CATEGORIES[self.side]:
            raise IllegalCategory(
                f"{self.category.value} is not a {self.side.value.lower()} category"
            )
        if not self.item or not self.item.strip():
            raise InputError("item name must be non-empty")
        if self.quantity is not None and self.quantity.magnitude < 0:
            raise InputError(f"{self.item}: negative quantity {self.quantity}")
        if self.value.yuan < 0:
            raise InputError(f"{self.item}: negative value {self.value}")

    @property
    def key(self) -> tuple[Side, Category, str]:
        return (self.side, self.category, self.item)

    @property
    def is_gap(self) -> bool:
        """A "--" row: no quantity, no price, no value. Kept for table structure."""
        return self.quantity is None and self.price is None and not self.value


@dataclass(frozen=True)
class Totals:
    asset_total: Money
    liability_total: Money
    net_worth: Money


@dataclass(frozen=True)
class BalanceSheet:
    """Construct through ``compiler.compile_sheet`` so totals are derived."""

    region: str
    date: datetime.date | None
    assets: tuple[LineItem, ...] = ()
    liabilities: tuple[LineItem, ...] = ()
    totals: Totals = field(
        default_factory=lambda: Totals(Money.zero(), Money.zero(), Money.zero())
    )

    @property
    def asset_total(self) -> Money:
        return self.totals.asset_total

    @property
    def liability_total(self) -> Money:
        return self.totals.liability_total

    @property
    def net_worth(self) -> Money:
        return self.totals.net_worth

    def items(self, side: Side | None = None) -> tuple[LineItem, ...]:
        if side is Side.ASSET:
            return self.assets
        if side is Side.LIABILITY:
            return self.liabilities
        return self.assets + self.liabilities

    def find(self, side: Side, category: Category, item: str) -> LineItem | None:
        for li in self.items(side):
            if li.category is category and li.item == item:
                return li
        return None
