"""CSV ingestion and serialization: line-item sheets and rights-matrix configs.

Files are UTF-8 with ``\\n`` line endings, ``.`` as the decimal point and no
thousands separators. Lines starting with ``#`` are provenance comments and
are ignored by the readers. ``-`` marks an absent quantity or price.
"""

from __future__ import annotations

import csv
import datetime
import io
import re
from decimal import Decimal
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Iterator, Union

from .compiler import compile_sheet
from .errors import InputError, MalformedScale, MixedPeriod, ParseError, UnknownUnit
from .model import BalanceSheet, Category, LineItem, Money, Side, UnitPrice, ValuationMethod
from .responsibility import Actor, ActorKind, RightKind, RightsMatrix
from .units import Quantity, Unit, to_decimal

__all__ = [
    "SHEET_COLUMNS",
    "REGIME_COLUMNS",
    "parse_unit",
    "read_sheet",
    "load_sheet",
    "sheet_to_csv",
    "load_regime",
    "regime_to_csv",
    "fixture_path",
    "default_regime",
    "ABSENT",
    "fmt_billions",
]

SHEET_COLUMNS = (
    "region",
    "date",
    "side",
    "category",
    "item",
    "quantity",
    "quantity_unit",
    "unit_price_yuan",
    "price_per_unit",
    "valuation_method",
    "value_billion_yuan",
)
REGIME_COLUMNS = ("category", "right", "actor_kind", "actor_name")
ABSENT = "-"

Source = Union[str, Path, IO[str]]

_UNIT_RE = re.compile(r"^(?:10\^(?P<scale>\S*)\s+)?(?P<symbol>\S+)$")


def parse_unit(token: str) -> Unit:
    """``"10^3 km2"`` -> area unit at scale 3; ``"t"`` -> mass unit at scale 0."""
    m = _UNIT_RE.match(token.strip())
    if not m:
        raise UnknownUnit(f"cannot parse unit {token!r}")
    scale = 0
    if m.group("scale") is not None:
        text = m.group("scale")
        if not re.fullmatch(r"[+-]?\d+", text):
            raise MalformedScale(f"bad power-of-ten scale in {token!r}")
        scale = int(text)
    return Unit(m.group("symbol"), scale)


def fixture_path(name: str) -> Path:
    """Path of a data file shipped with the package (e.g. ``shaanxi_2013.csv``)."""
    return Path(str(resources.files("nrbs") / "data" / name))


def _open_text(src: Source) -> str:
    if hasattr(src, "read"):
        data = src.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    return Path(src).read_text(encoding="utf-8")


def _rows(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield (1-based line number, cells), skipping comments and blank lines."""
    numbered = [
        (n, line)
        for n, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    cells = csv.reader(line for _, line in numbered)
    for (n, _), row in zip(numbered, cells):
        yield n, row


def _enum(enum_cls, token: str, what: str, row: int):
    for member in enum_cls:
        if token == member.value or token.lower() == member.value.lower():
            return member
    allowed = ", ".join(m.value for m in enum_cls)
    raise ParseError(f"unknown {what} {token!r} (expected one of: {allowed})", row)


def _decimal(token: str, what: str, row: int) -> Decimal:
    try:
        return to_decimal(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not a decimal number", row) from None


def _item_from_row(rec: dict[str, str], row: int) -> LineItem:
    side = _enum(Side, rec["side"], "side", row)
    category = _enum(Category, rec["category"], "category", row)

    quantity = None
    if rec["quantity"] != ABSENT or rec["quantity_unit"] != ABSENT:
        if ABSENT in (rec["quantity"], rec["quantity_unit"]):
            raise ParseError("quantity and quantity_unit must both be present or both be '-'", row)
        try:
            quantity = Quantity(_decimal(rec["quantity"], "quantity", row), parse_unit(rec["quantity_unit"]))
        except (UnknownUnit, MalformedScale) as exc:
            raise ParseError(str(exc), row) from None

    price = None
    if rec["unit_price_yuan"] != ABSENT or rec["price_per_unit"] != ABSENT:
        if ABSENT in (rec["unit_price_yuan"], rec["price_per_unit"]):
            raise ParseError("unit_price_yuan and price_per_unit must both be present or both be '-'", row)
        try:
            price = UnitPrice(_decimal(rec["unit_price_yuan"], "unit price", row), parse_unit(rec["price_per_unit"]))
        except ParseError:
            raise
        except InputError as exc:
            raise ParseError(str(exc), row) from None

    method = _enum(ValuationMethod, rec["valuation_method"], "valuation method", row)
    value = Money.billion(_decimal(rec["value_billion_yuan"], "value", row))
    try:
        return LineItem(side, category, rec["item"].strip(), value, method, quantity, price)
    except InputError as exc:
        raise ParseError(str(exc), row) from None


def read_sheet(src: Source) -> tuple[str, datetime.date | None, list[LineItem], list[LineItem]]:
    """Parse rows without compiling; returns (region, date, assets, liabilities)."""
    text = _open_text(src)
    rows = _rows(text)
    try:
        header_row, header = next(rows)
    except StopIteration:
        return "", None, [], []
    header = [h.strip() for h in header]
    if tuple(header) != SHEET_COLUMNS:
        raise ParseError(f"expected header {','.join(SHEET_COLUMNS)}", header_row)

    region: str | None = None
    date: datetime.date | None = None
    assets: list[LineItem] = []
    liabilities: list[LineItem] = []
    for n, cells in rows:
        if len(cells) != len(SHEET_COLUMNS):
            raise ParseError(f"expected {len(SHEET_COLUMNS)} columns, got {len(cells)}", n)
        rec = {k: v.strip() for k, v in zip(SHEET_COLUMNS, cells)}
        try:
            row_date = datetime.date.fromisoformat(rec["date"])
        except ValueError:
            raise ParseError(f"date {rec['date']!r} is not YYYY-MM-DD", n) from None
        if region is None:
            region, date = rec["region"], row_date
        elif rec["region"] != region or row_date != date:
            raise MixedPeriod(
                f"row {n}: {rec['region']} {row_date} differs from {region} {date}; "
                "one region and date per file"
            )
        li = _item_from_row(rec, n)
        (assets if li.side is Side.ASSET else liabilities).append(li)
    return region or "", date, assets, liabilities


def load_sheet(src: Source) -> BalanceSheet:
    region, date, assets, liabilities = read_sheet(src)
    return compile_sheet(region, date, assets, liabilities)


def _fmt(d: Decimal) -> str:
    return f"{d:f}"


def fmt_billions(m: Money) -> str:
    """Exact billion-yuan amount with at least two decimals: 1054.70, 0.00, 76.8123."""
    d = m.billions.normalize()
    if d.as_tuple().exponent > -2:
        d = d.quantize(Decimal("0.01"))
    return f"{d:f}"


def sheet_rows(sheet: BalanceSheet) -> Iterable[list[str]]:
    date = sheet.date.isoformat() if sheet.date else ""
    for li in sheet.items():
        q, p = li.quantity, li.price
        yield [
            sheet.region,
            date,
            li.side.value,
            li.category.value,
            li.item,
            _fmt(q.magnitude) if q else ABSENT,
            q.unit.token if q else ABSENT,
            _fmt(p.amount) if p else ABSENT,
            p.per.token if p else ABSENT,
            li.method.value,
            fmt_billions(li.value),
        ]


def sheet_to_csv(sheet: BalanceSheet) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SHEET_COLUMNS)
    w.writerows(sheet_rows(sheet))
    return buf.getvalue()


def load_regime(src: Source) -> RightsMatrix:
    """Read a rights-matrix config (category,right,actor_kind,actor_name)."""
    text = _open_text(src)
    rows = _rows(text)
    try:
        header_row, header = next(rows)
    except StopIteration:
        raise ParseError("rights matrix file is empty") from None
    if tuple(h.strip() for h in header) != REGIME_COLUMNS:
        raise ParseError(f"expected header {','.join(REGIME_COLUMNS)}", header_row)
    entries = []
    for n, cells in rows:
        if len(cells) != len(REGIME_COLUMNS):
            raise ParseError(f"expected {len(REGIME_COLUMNS)} columns, got {len(cells)}", n)
        cat, right, kind, name = (c.strip() for c in cells)
        category = _enum(Category, cat, "category", n)
        if category.side is not Side.LIABILITY:
            raise ParseError(f"{category.value} is not a liability category", n)
        right_kind = _enum(RightKind, right, "right", n)
        actor = None
        if kind != ABSENT:
            try:
                actor = Actor(_enum(ActorKind, kind, "actor kind", n), name)
            except ValueError as exc:
                raise ParseError(str(exc), n) from None
        entries.append((category, right_kind, actor))
    return RightsMatrix.from_rows(entries)


def regime_to_csv(m: RightsMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REGIME_COLUMNS)
    for category, right, actor in m.rows():
        w.writerow([category.value, right.value, actor.kind.value, actor.name])
    return buf.getvalue()


def default_regime() -> RightsMatrix:
    return load_regime(fixture_path("rights_default.csv"))
