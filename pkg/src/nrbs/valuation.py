"""Monetary valuation methods and the water stock-flow account.

Market value, replacement cost and imputed abatement cost share one kernel
(quantity x unit price); they differ only in what the price means, which is
recorded as the ``ValuationMethod`` tag on the resulting line item.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Mapping

from .errors import (
    DimensionMismatch,
    InvalidParams,
    MissingComponent,
    NegativeClosingStock,
)
from .model import Category, LineItem, Money, Side, UnitPrice, ValuationMethod
from .units import EXACT, Dimension, Quantity, Unit, normalize, to_decimal

__all__ = [
    "IcaParams",
    "income_capitalization",
    "ica_unit_price",
    "market_value",
    "replacement_cost",
    "imputed_abatement_cost",
    "ExternalCostSchedule",
    "EXTERNAL_COST_COMPONENTS",
    "agricultural_external_cost_rate",
    "WaterFlows",
    "water_closing_stock",
    "valued_item",
    "DEFAULT_INTEREST_RATE",
    "DEFAULT_EARNING_PERIOD",
]

DEFAULT_INTEREST_RATE = Decimal("0.05")
DEFAULT_EARNING_PERIOD = 30

# Enough digits that 1 - (1+R)**-N keeps ~25 significant digits for R ~ 1e-12.
_ICA_CONTEXT = decimal.Context(prec=50, rounding=decimal.ROUND_HALF_EVEN)


@dataclass(frozen=True)
class IcaParams:
    """Annual rent per hm², interest rate per year, earning period in years."""

    rent: Decimal
    rate: Decimal = DEFAULT_INTEREST_RATE
    years: int = DEFAULT_EARNING_PERIOD

    def __post_init__(self):
        object.__setattr__(self, "rent", to_decimal(self.rent))
        object.__setattr__(self, "rate", to_decimal(self.rate))
        if isinstance(self.years, bool) or not isinstance(self.years, int):
            raise InvalidParams(f"earning period must be an integer, got {self.years!r}")
        if self.years < 1:
            raise InvalidParams(f"earning period must be >= 1, got {self.years}")
        if self.rate < 0:
            raise InvalidParams(f"interest rate must be >= 0, got {self.rate}")
        if self.rent < 0:
            raise InvalidParams(f"rent must be >= 0, got {self.rent}")


def income_capitalization(p: IcaParams) -> Decimal:
    """Present value of ``years`` annual rents discounted at ``rate``.

    Closed form ``P/R * (1 - (1+R)**-N)``; at R = 0 the limit ``P*N`` is
    returned. Result is yuan per hm² when the rent is quoted per hm².
    """
    if p.rate == 0:
        return EXACT.multiply(p.rent, Decimal(p.years))
    ctx = _ICA_CONTEXT
    growth = ctx.power(ctx.add(Decimal(1), p.rate), p.years)
    annuity = ctx.divide(ctx.subtract(Decimal(1), ctx.divide(Decimal(1), growth)), p.rate)
    return ctx.multiply(p.rent, annuity)


def ica_unit_price(p: IcaParams, per: Unit | None = None) -> UnitPrice:
    """ICA land value as a unit price, quoted per hm² unless ``per`` says otherwise."""
    price = UnitPrice(income_capitalization(p), Unit("hm2"))
    return price if per is None else price.to(per)


def _price_times_quantity(q: Quantity, price: UnitPrice) -> Money:
    if q.dimension != price.dimension:
        raise DimensionMismatch(
            f"quantity in {q.unit.token} cannot be priced per {price.per.token}"
        )
    amount = normalize(q, price.per).magnitude
    return Money(EXACT.multiply(amount, price.amount))


def market_value(q: Quantity, price: UnitPrice) -> Money:
    return _price_times_quantity(q, price)


def replacement_cost(q: Quantity, unit_cost: UnitPrice) -> Money:
    return _price_times_quantity(q, unit_cost)


def imputed_abatement_cost(emission: Quantity, unit_cost: UnitPrice) -> Money:
    return _price_times_quantity(emission, unit_cost)


_KERNELS = {
    ValuationMethod.ICA: market_value,
    ValuationMethod.MARKET: market_value,
    ValuationMethod.REPLACEMENT: replacement_cost,
    ValuationMethod.ABATEMENT: imputed_abatement_cost,
}


def valued_item(
    side: Side,
    category: Category,
    item: str,
    quantity: Quantity,
    price: UnitPrice,
    method: ValuationMethod,
) -> LineItem:
    """Build a line item whose value is computed here rather than ingested."""
    if method is ValuationMethod.AGGREGATE:
        raise InvalidParams("aggregate-expenditure items carry an ingested value, not a price")
    value = _KERNELS[method](quantity, price)
    return LineItem(side, category, item, value, method, quantity, price)


EXTERNAL_COST_COMPONENTS = ("water", "soil", "air", "biodiversity", "human_health")


@dataclass(frozen=True)
class ExternalCostSchedule:
    """Per-hm² annual external costs of crop production, by impact component."""

    components: Mapping[str, Decimal]

    def __post_init__(self):
        comps = {k: to_decimal(v) for k, v in self.components.items()}
        for k, v in comps.items():
            if v < 0:
                raise InvalidParams(f"external cost component {k!r} is negative")
        object.__setattr__(self, "components", comps)


def agricultural_external_cost_rate(s: ExternalCostSchedule) -> Decimal:
    """Sum of the five component rates, yuan per hm² per year."""
    missing = [k for k in EXTERNAL_COST_COMPONENTS if k not in s.components]
    if missing:
        raise MissingComponent(f"missing external cost components: {', '.join(missing)}")
    total = Decimal(0)
    for k in EXTERNAL_COST_COMPONENTS:
        total = EXACT.add(total, s.components[k])
    return total


WATER_INCREASES = ("rainfall", "inflows", "socio_economic_return", "other")
WATER_DECREASES = ("water_utility", "outflows", "other")


@dataclass(frozen=True)
class WaterFlows:
    opening: Quantity
    increases: Mapping[str, Quantity] = field(default_factory=dict)
    decreases: Mapping[str, Quantity] = field(default_factory=dict)

    def __post_init__(self):
        for name, allowed, flows in (
            ("increase", WATER_INCREASES, self.increases),
            ("decrease", WATER_DECREASES, self.decreases),
        ):
            unknown = set(flows) - set(allowed)
            if unknown:
                raise InvalidParams(f"unknown water {name} component(s): {sorted(unknown)}")
        for label, q in self._all():
            if q.dimension is not Dimension.VOLUME:
                raise DimensionMismatch(f"water {label} must be a volume, got {q.unit.token}")
            if q.magnitude < 0:
                raise InvalidParams(f"water {label} is negative")

    def _all(self):
        yield "opening", self.opening
        for k, q in self.increases.items():
            yield f"increase {k}", q
        for k, q in self.decreases.items():
            yield f"decrease {k}", q

    def total_increase(self) -> Quantity:
        total = Quantity(Decimal(0), self.opening.unit)
        for k in WATER_INCREASES:
            if k in self.increases:
                total = total + self.increases[k]
        return total

    def total_decrease(self) -> Quantity:
        total = Quantity(Decimal(0), self.opening.unit)
        for k in WATER_DECREASES:
            if k in self.decreases:
                total = total + self.decreases[k]
        return total


def water_closing_stock(w: WaterFlows) -> Quantity:
    """Closing = opening + increases - decreases, in the opening stock's unit."""
    closing = w.opening + w.total_increase() - w.total_decrease()
    if closing.magnitude < 0:
        raise NegativeClosingStock(
            f"closing water stock would be {closing}; flows are inconsistent with the opening stock"
        )
    return closing
