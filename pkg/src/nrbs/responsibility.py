"""Property-rights regime and liability responsibility records.

A ``RightsMatrix`` says which actors hold which of the eight rights over each
liability category. Creditors are fixed by category (natural resources agency
for overexploitation, ecology and environment agency for pollution and
degradation); debtors default to a company.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import date
from typing import Iterable, Mapping

from .errors import IllegalCategory, MissingMonitoring
from .model import CATEGORIES, BalanceSheet, Category, Money, Side

__all__ = [
    "RightGroup",
    "RightKind",
    "ActorKind",
    "Actor",
    "MNR",
    "MEE",
    "DEFAULT_DEBTOR",
    "RightsMatrix",
    "LiabilityRecord",
    "assign_creditor",
    "build_records",
    "rights_report",
]


class RightGroup(enum.Enum):
    USE = "use"
    CONTROL = "control"
    AUTHORITATIVE = "authoritative"


class RightKind(enum.Enum):
    USE_DIRECT = "use_direct"
    USE_INDIRECT = "use_indirect"
    MANAGEMENT = "management"
    EXCLUSION = "exclusion"
    TRANSACTION = "transaction"
    MONITORING = "monitoring"
    DEFINITION = "definition"
    ALLOCATION = "allocation"

    @property
    def group(self) -> RightGroup:
        return _RIGHT_GROUPS[self]


_RIGHT_GROUPS = {
    RightKind.USE_DIRECT: RightGroup.USE,
    RightKind.USE_INDIRECT: RightGroup.USE,
    RightKind.MANAGEMENT: RightGroup.CONTROL,
    RightKind.EXCLUSION: RightGroup.CONTROL,
    RightKind.TRANSACTION: RightGroup.CONTROL,
    RightKind.MONITORING: RightGroup.CONTROL,
    RightKind.DEFINITION: RightGroup.AUTHORITATIVE,
    RightKind.ALLOCATION: RightGroup.AUTHORITATIVE,
}


class ActorKind(enum.Enum):
    AGENCY = "Agency"
    GOVERNMENT = "Government"
    COMPANY = "Company"
    INDIVIDUAL = "Individual"
    ORGANIZATION = "Organization"


AGENCY_NAMES = ("MNR", "MEE")


@dataclass(frozen=True)
class Actor:
    kind: ActorKind
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("actor name must be non-empty")
        if self.kind is ActorKind.AGENCY and self.name not in AGENCY_NAMES:
            raise ValueError(f"unknown agency {self.name!r}; expected one of {AGENCY_NAMES}")

    def __lt__(self, other: Actor) -> bool:
        return (self.kind.value, self.name) < (other.kind.value, other.name)

    def __str__(self) -> str:
        return self.name if self.kind is ActorKind.AGENCY else f"{self.kind.value}({self.name})"


MNR = Actor(ActorKind.AGENCY, "MNR")
MEE = Actor(ActorKind.AGENCY, "MEE")
DEFAULT_DEBTOR = Actor(ActorKind.COMPANY, "unspecified")

_CREDITORS = {
    Category.RESOURCE_OVEREXPLOITATION: MNR,
    Category.ENVIRONMENTAL_POLLUTION: MEE,
    Category.ECOLOGICAL_DEGRADATION: MEE,
}


def assign_creditor(category: Category) -> Actor:
    try:
        return _CREDITORS[category]
    except KeyError:
        raise IllegalCategory(f"{category} is not a liability category") from None


class RightsMatrix:
    """(liability category, right) -> frozenset of actors.

    Every category that appears must have at least one monitoring holder;
    construction raises MissingMonitoring otherwise.
    """

    def __init__(self, grid: Mapping[tuple[Category, RightKind], Iterable[Actor]]):
        cells: dict[tuple[Category, RightKind], frozenset[Actor]] = {}
        for (category, right), actors in grid.items():
            if category not in CATEGORIES[Side.LIABILITY]:
                raise IllegalCategory(f"{category.value} is not a liability category")
            cells[(category, RightKind(right))] = frozenset(actors)
        self._cells = cells
        self.categories = tuple(c for c in CATEGORIES[Side.LIABILITY] if any(k[0] is c for k in cells))
        missing = [c.value for c in self.categories if not cells.get((c, RightKind.MONITORING))]
        if missing:
            raise MissingMonitoring(f"no monitoring right assigned for: {', '.join(missing)}")

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[Category, RightKind, Actor | None]]) -> RightsMatrix:
        """Rows with actor None declare an (empty) cell."""
        grid: dict[tuple[Category, RightKind], set[Actor]] = {}
        for category, right, actor in rows:
            cell = grid.setdefault((category, right), set())
            if actor is not None:
                cell.add(actor)
        return cls(grid)

    def holders(self, category: Category, right: RightKind) -> frozenset[Actor]:
        return self._cells.get((category, right), frozenset())

    def rows(self) -> list[tuple[Category, RightKind, Actor]]:
        out = []
        for c in self.categories:
            for r in RightKind:
                for a in sorted(self.holders(c, r)):
                    out.append((c, r, a))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RightsMatrix):
            return NotImplemented
        return {k: v for k, v in self._cells.items() if v} == {
            k: v for k, v in other._cells.items() if v
        }

    __hash__ = None


@dataclass(frozen=True)
class LiabilityRecord:
    category: Category
    item: str
    debtor: Actor
    creditor: Actor
    expenditure: Money
    repayment_period: tuple[date, date] | None = None

    def __post_init__(self):
        if self.expenditure.yuan < 0:
            raise ValueError("expenditure must be non-negative")
        if self.creditor not in (MNR, MEE):
            raise ValueError(f"creditor must be MNR or MEE, got {self.creditor}")


def build_records(
    sheet: BalanceSheet,
    debtor_map: Mapping[tuple[Category, str], Actor] | None = None,
    default_debtor: Actor = DEFAULT_DEBTOR,
    repayment_periods: Mapping[tuple[Category, str], tuple[date, date]] | None = None,
) -> list[LiabilityRecord]:
    """One record per valued liability row.

    Coverage-gap rows (no quantity, no price, zero value) are not liabilities
    and produce no record; they contribute nothing to the total either.
    """
    debtor_map = debtor_map or {}
    repayment_periods = repayment_periods or {}
    out = []
    for li in sheet.liabilities:
        if li.is_gap:
            continue
        key = (li.category, li.item)
        out.append(
            LiabilityRecord(
                category=li.category,
                item=li.item,
                debtor=debtor_map.get(key, default_debtor),
                creditor=assign_creditor(li.category),
                expenditure=li.value,
                repayment_period=repayment_periods.get(key),
            )
        )
    return out


def rights_report(m: RightsMatrix) -> list[list[str]]:
    """Category x right table of actor names; header row first.

    Empty cells render as "-"; an empty monitoring cell cannot occur because
    the matrix refuses to build without one.
    """
    header = ["category"] + [r.value for r in RightKind]
    table = [header]
    for c in m.categories:
        row = [c.value]
        for r in RightKind:
            actors = sorted(m.holders(c, r))
            if r is RightKind.MONITORING and not actors:
                raise MissingMonitoring(f"no monitoring right assigned for {c.value}")
            row.append("; ".join(str(a) for a in actors) or "-")
        table.append(row)
    return table
