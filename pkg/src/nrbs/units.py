"""Dimensioned quantities with power-of-ten scaled units.

A magnitude of ``39.92`` in unit ``10^3 km2`` stands for 39 920 km². The scale
lives in the unit so printed magnitudes stay comparable to the source tables.
All arithmetic is exact: it runs in a high-precision decimal context that
traps on any rounding.
"""

from __future__ import annotations

import decimal
import enum
from dataclasses import dataclass
from decimal import Decimal

from .errors import DimensionMismatch, MalformedScale, UnknownUnit

__all__ = [
    "EXACT",
    "Dimension",
    "Unit",
    "Quantity",
    "normalize",
    "to_decimal",
    "SYMBOLS",
    "MIN_SCALE",
    "MAX_SCALE",
]

# Raises decimal.Inexact instead of silently rounding.
EXACT = decimal.Context(
    prec=80,
    rounding=decimal.ROUND_HALF_EVEN,
    traps=[decimal.Inexact, decimal.InvalidOperation, decimal.DivisionByZero, decimal.Overflow],
)

MIN_SCALE = 0
MAX_SCALE = 12


class Dimension(enum.Enum):
    MASS = "mass"
    VOLUME = "volume"
    AREA = "area"
    COUNT = "count"


# symbol -> (dimension, multiple of the dimension's base symbol)
SYMBOLS: dict[str, tuple[Dimension, Decimal]] = {
    "t": (Dimension.MASS, Decimal(1)),
    "m3": (Dimension.VOLUME, Decimal(1)),
    "hm2": (Dimension.AREA, Decimal(1)),
    "km2": (Dimension.AREA, Decimal(100)),
    "count": (Dimension.COUNT, Decimal(1)),
}

ALIASES = {"m³": "m3", "km²": "km2", "hm²": "hm2", "ha": "hm2"}


def to_decimal(value) -> Decimal:
    """Coerce ints, strings and Decimals; floats go through ``repr`` so 0.1 stays 0.1."""
    if isinstance(value, Decimal):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a numeric magnitude")
    if isinstance(value, int):
        return Decimal(value)
    if isinstance(value, float):
        return Decimal(repr(value))
    if isinstance(value, str):
        try:
            d = Decimal(value.strip())
        except decimal.InvalidOperation:
            raise ValueError(f"not a decimal number: {value!r}") from None
        if not d.is_finite():
            raise ValueError(f"not a finite decimal: {value!r}")
        return d
    raise TypeError(f"cannot convert {type(value).__name__} to Decimal")


@dataclass(frozen=True)
class Unit:
    symbol: str
    scale: int = 0

    def __post_init__(self):
        sym = ALIASES.get(self.symbol, self.symbol)
        if sym not in SYMBOLS:
            raise UnknownUnit(f"unknown unit symbol {self.symbol!r}")
        object.__setattr__(self, "symbol", sym)
        if isinstance(self.scale, bool) or not isinstance(self.scale, int):
            raise MalformedScale(f"scale must be an integer, got {self.scale!r}")
        if not MIN_SCALE <= self.scale <= MAX_SCALE:
            raise MalformedScale(f"scale {self.scale} outside [{MIN_SCALE}, {MAX_SCALE}]")

    @property
    def dimension(self) -> Dimension:
        return SYMBOLS[self.symbol][0]

    @property
    def factor(self) -> Decimal:
        """Size of one unit expressed in the dimension's base symbol."""
        return EXACT.multiply(SYMBOLS[self.symbol][1], Decimal(1).scaleb(self.scale))

    @property
    def token(self) -> str:
        return self.symbol if self.scale == 0 else f"10^{self.scale} {self.symbol}"

    def __str__(self) -> str:
        return self.token


@dataclass(frozen=True)
class Quantity:
    magnitude: Decimal
    unit: Unit

    def __post_init__(self):
        object.__setattr__(self, "magnitude", to_decimal(self.magnitude))

    @classmethod
    def of(cls, magnitude, symbol: str, scale: int = 0) -> Quantity:
        return cls(to_decimal(magnitude), Unit(symbol, scale))

    @property
    def dimension(self) -> Dimension:
        return self.unit.dimension

    def to(self, target: Unit) -> Quantity:
        return normalize(self, target)

    def base_magnitude(self) -> Decimal:
        """Magnitude in the dimension's base symbol at scale 0."""
        return EXACT.multiply(self.magnitude, self.unit.factor)

    def _coerce(self, other: Quantity) -> Decimal:
        if not isinstance(other, Quantity):
            return NotImplemented
        return normalize(other, self.unit).magnitude

    def __add__(self, other: Quantity) -> Quantity:
        m = self._coerce(other)
        if m is NotImplemented:
            return NotImplemented
        return Quantity(EXACT.add(self.magnitude, m), self.unit)

    def __sub__(self, other: Quantity) -> Quantity:
        m = self._coerce(other)
        if m is NotImplemented:
            return NotImplemented
        return Quantity(EXACT.subtract(self.magnitude, m), self.unit)

    def __neg__(self) -> Quantity:
        return Quantity(-self.magnitude, self.unit)

    def __mul__(self, k) -> Quantity:
        if isinstance(k, Quantity):
            return NotImplemented
        return Quantity(EXACT.multiply(self.magnitude, to_decimal(k)), self.unit)

    __rmul__ = __mul__

    def same_amount(self, other: Quantity) -> bool:
        """Equality after unit normalization (``==`` also requires the same unit)."""
        if self.dimension != other.dimension:
            return False
        return self.base_magnitude() == other.base_magnitude()

    def __str__(self) -> str:
        return f"{self.magnitude} {self.unit.token}"


def normalize(q: Quantity, target: Unit) -> Quantity:
    """Re-express ``q`` in ``target`` exactly.

    Raises DimensionMismatch if the units measure different things.
    """
    if q.unit.dimension != target.dimension:
        raise DimensionMismatch(
            f"cannot convert {q.unit.token} ({q.unit.dimension.value}) "
            f"to {target.token} ({target.dimension.value})"
        )
    if q.unit == target:
        return q
    # Divisions here are by a power of ten (times 1 or 100), never inexact
    # unless the precision would be exceeded, in which case EXACT traps.
    magnitude = EXACT.divide(EXACT.multiply(q.magnitude, q.unit.factor), target.factor)
    return Quantity(magnitude, target)
