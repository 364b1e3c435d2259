"""Deterministic report rendering in text, CSV and JSON-lines.

Every renderer returns UTF-8 bytes with ``\\n`` line endings. Money is shown
in billion yuan: half-up to 2 decimals in text, unrounded in CSV/JSON so the
output can be parsed back losslessly. Signed levels are used everywhere except
the text change tables, which mirror the published layout (magnitude with an
arrow for the level, unsigned percentage).
"""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Sequence

from .changes import ChangeRecord, ChangeReport, SheetChangeSummary, format_pct
from .compiler import Discrepancy
from .errors import UnknownFormat
from .model import CATEGORIES, BalanceSheet, LineItem, Money, Side
from .responsibility import LiabilityRecord, RightsMatrix, rights_report
from .tables import SHEET_COLUMNS, fmt_billions, regime_to_csv, sheet_rows, sheet_to_csv

__all__ = ["FORMATS", "render", "text_table"]

FORMATS = ("text", "csv", "json-lines")


def render(obj, fmt: str = "text", kind: str | None = None) -> bytes:
    """Render a sheet or report.

    Lists are rendered according to their element type; pass ``kind``
    ("discrepancies" or "records") for a list that may be empty.
    """
    if fmt not in FORMATS:
        raise UnknownFormat(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if isinstance(obj, BalanceSheet):
        kind = "sheet"
    elif isinstance(obj, ChangeReport):
        kind = "changes"
    elif isinstance(obj, SheetChangeSummary):
        kind = "summary"
    elif isinstance(obj, RightsMatrix):
        kind = "rights"
    elif isinstance(obj, (list, tuple)):
        if obj and isinstance(obj[0], Discrepancy):
            kind = "discrepancies"
        elif obj and isinstance(obj[0], LiabilityRecord):
            kind = "records"
        elif kind not in ("discrepancies", "records"):
            raise TypeError("cannot infer report kind of an empty list; pass kind=")
    else:
        raise TypeError(f"don't know how to render {type(obj).__name__}")
    fn = _RENDERERS[(kind, fmt)]
    return fn(obj).encode("utf-8")


# -- helpers ---------------------------------------------------------------


def _f(d: Decimal) -> str:
    return f"{d:f}"


def _csv(rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _jsonl(records) -> str:
    return "".join(json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n" for r in records)


def _pct_str(p: Fraction | None, places: int = 2) -> str | None:
    return None if p is None else format_pct(p, places, signed=False)[:-1]


def text_table(rows: Sequence[Sequence[str]], right: Sequence[int] = ()) -> list[str]:
    """Pad cells to column width; column indexes in ``right`` are right-aligned."""
    if not rows:
        return []
    ncol = max(len(r) for r in rows)
    rows = [list(r) + [""] * (ncol - len(r)) for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(ncol)]
    out = []
    for r in rows:
        cells = [c.rjust(w) if i in right else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))]
        out.append("  ".join(cells).rstrip())
    return out


def _qty(li: LineItem) -> tuple[str, str]:
    if li.quantity is None:
        return "--", ""
    return _f(li.quantity.magnitude), li.quantity.unit.token


# -- balance sheet ---------------------------------------------------------


def _side_rows(sheet: BalanceSheet, side: Side) -> list[list[str]]:
    rows = [["Category", "Item", "Quantity", "Unit", "Value"]]
    for category in CATEGORIES[side]:
        items = [li for li in sheet.items(side) if li.category is category]
        for i, li in enumerate(items):
            q, u = _qty(li)
            rows.append([category.value if i == 0 else "", li.item, q, u,
                         "--" if li.is_gap else li.value.display()])
    return rows


def _sheet_text(sheet: BalanceSheet) -> str:
    date = sheet.date.isoformat() if sheet.date else "undated"
    region = sheet.region or "(no region)"
    left = text_table(_side_rows(sheet, Side.ASSET), right=(2, 4))
    right = text_table(_side_rows(sheet, Side.LIABILITY), right=(2, 4))
    lw = max([len(x) for x in left] + [len("ASSETS"), 40])
    rw = max([len(x) for x in right] + [len("LIABILITIES"), 40])
    n = max(len(left), len(right))
    left += [""] * (n - len(left))
    right += [""] * (n - len(right))

    lines = [
        f"Natural resource balance sheet: {region}, {date}",
        "Monetary values in billion yuan",
        "",
        f"{'ASSETS'.ljust(lw)} | LIABILITIES",
        f"{'-' * lw}-+-{'-' * rw}",
    ]
    lines += [f"{a.ljust(lw)} | {b}".rstrip() for a, b in zip(left, right)]
    lines.append(f"{'-' * lw}-+-{'-' * rw}")
    ta = f"Total Assets: {sheet.asset_total.display()}"
    tl = f"Total Liabilities: {sheet.liability_total.display()}"
    lines.append(f"{ta.ljust(lw)} | {tl}")
    lines.append(f"Net Worth: {sheet.net_worth.display()}")
    return "\n".join(lines) + "\n"


def _sheet_jsonl(sheet: BalanceSheet) -> str:
    recs = []
    for row in sheet_rows(sheet):
        rec = dict(zip(SHEET_COLUMNS, row))
        rec["record"] = "item"
        recs.append(rec)
    recs.append({
        "record": "totals",
        "region": sheet.region,
        "date": sheet.date.isoformat() if sheet.date else None,
        "asset_total_billion_yuan": fmt_billions(sheet.asset_total),
        "liability_total_billion_yuan": fmt_billions(sheet.liability_total),
        "net_worth_billion_yuan": fmt_billions(sheet.net_worth),
    })
    return _jsonl(recs)


# -- discrepancies ---------------------------------------------------------

_DISC_COLUMNS = ["item", "kind", "computed_billion_yuan", "stored_billion_yuan",
                 "ratio", "suggested_factor", "note"]


def _disc_fields(d: Discrepancy) -> list[str]:
    ratio = "" if d.ratio is None else f"{d.ratio.quantize(Decimal('0.0001'), ROUND_HALF_UP):f}"
    factor = "" if d.suggested_factor is None else f"1e{d.decade}"
    scale = 0 if d.kind == "rate" else 9
    return [d.item, d.kind, _f(d.computed.scaleb(-scale)), _f(d.stored.scaleb(-scale)),
            ratio, factor, d.note]


def _disc_csv(ds) -> str:
    return _csv([_DISC_COLUMNS] + [_disc_fields(d) for d in ds])


def _disc_jsonl(ds) -> str:
    return _jsonl(dict(zip(_DISC_COLUMNS, _disc_fields(d))) for d in ds)


def _disc_text(ds) -> str:
    if not ds:
        return "No discrepancies.\n"
    rows = [["Item", "Kind", "Computed", "Stored", "Ratio", "Off by"]]
    for d in ds:
        f = _disc_fields(d)
        comp = Decimal(f[2]).quantize(Decimal("0.01"), ROUND_HALF_UP)
        stored = Decimal(f[3]).quantize(Decimal("0.01"), ROUND_HALF_UP)
        rows.append([f[0], f[1], _f(comp), _f(stored), f[4] or "--",
                     "" if d.decade is None else f"10^{d.decade}"])
    n_decade = sum(1 for d in ds if d.decade is not None)
    lines = [f"{len(ds)} discrepancies ({n_decade} look like power-of-ten errors); "
             "money in billion yuan, ratio = computed / stored", ""]
    lines += text_table(rows, right=(2, 3, 4))
    return "\n".join(lines) + "\n"


# -- change reports --------------------------------------------------------

_CHANGE_COLUMNS = ["side", "category", "item", "status", "level_change", "level_unit",
                   "const_price_change_billion_yuan", "const_price_pct",
                   "curr_price_change_billion_yuan", "curr_price_pct",
                   "unit_price_yuan", "price_per_unit"]


def _change_fields(r: ChangeRecord) -> list[str]:
    return [
        r.side.value, r.category.value, r.item, "matched",
        "" if r.level_change is None else _f(r.level_change.magnitude),
        "" if r.level_change is None else r.level_change.unit.token,
        "" if r.const_price_change is None else fmt_billions(r.const_price_change),
        "" if r.const_price_pct is None else format_pct(r.const_price_pct)[:-1],
        fmt_billions(r.curr_price_change),
        "" if r.curr_price_pct is None else format_pct(r.curr_price_pct)[:-1],
        "" if r.p_open is None else _f(r.p_open.amount),
        "" if r.p_open is None else r.p_open.per.token,
    ]


def _unmatched_fields(li: LineItem, status: str) -> list[str]:
    level = li.value if status == "added" else -li.value
    return [li.side.value, li.category.value, li.item, status, "", "", "", "",
            fmt_billions(level), "", "", ""]


def _change_rows(rep: ChangeReport) -> list[list[str]]:
    rows = [_change_fields(r) for r in rep.records]
    rows += [_unmatched_fields(li, "added") for li in rep.additions]
    rows += [_unmatched_fields(li, "removed") for li in rep.removals]
    return rows


def _changes_csv(rep: ChangeReport) -> str:
    return _csv([_CHANGE_COLUMNS] + _change_rows(rep))


def _changes_jsonl(rep: ChangeReport) -> str:
    return _jsonl(dict(zip(_CHANGE_COLUMNS, row)) for row in _change_rows(rep))


def _arrow(d: Decimal, places: int = 2) -> str:
    q = d.quantize(Decimal(1).scaleb(-places), ROUND_HALF_UP)
    if q > 0:
        return f"{q:f}↑"
    if q < 0:
        return f"{q:f}↓"
    return f"{q:f}"


def _changes_text(rep: ChangeReport) -> str:
    lines = []
    for side, title in ((Side.ASSET, "assets"), (Side.LIABILITY, "liabilities")):
        recs = [r for r in rep.records if r.side is side]
        if not recs:
            continue
        rows = [["Category", "Item", "Level change", "Unit", "Const. price", "%",
                 "Current price", "%", "Base unit price"]]
        last = None
        for r in recs:
            cat = r.category.value if r.category is not last else ""
            last = r.category
            rows.append([
                cat, r.item,
                "--" if r.level_change is None else _arrow(r.level_change.magnitude),
                "" if r.level_change is None else r.level_change.unit.token,
                "--" if r.const_price_change is None else _arrow(r.const_price_change.billions),
                "--" if r.const_price_pct is None else _pct_str(abs(r.const_price_pct)) + "%",
                _arrow(r.curr_price_change.billions),
                "--" if r.curr_price_pct is None else _pct_str(abs(r.curr_price_pct)) + "%",
                "--" if r.p_open is None else str(r.p_open),
            ])
        lines.append(f"Physical and monetary changes in the {title} account "
                     "(billion yuan; constant price = opening unit price)")
        lines += text_table(rows, right=(2, 4, 5, 6, 7))
        lines.append("")
    for label, items in (("Added (closing sheet only)", rep.additions),
                         ("Removed (opening sheet only)", rep.removals)):
        if items:
            lines.append(f"{label}:")
            lines += [f"  {li.side.value}/{li.category.value}/{li.item}: {li.value.display()}"
                      for li in items]
            lines.append("")
    if not lines:
        return "No matched items.\n"
    return "\n".join(lines).rstrip("\n") + "\n"


def _summary_rows(s: SheetChangeSummary) -> list[list[str]]:
    return [
        [label, fmt_billions(a), fmt_billions(b), fmt_billions(c.level),
         "" if c.pct is None else format_pct(c.pct)[:-1]]
        for label, a, b, c in (
            ("Natural resource assets", s.asset_open, s.asset_close, s.asset_change),
            ("Natural resource liabilities", s.liability_open, s.liability_close, s.liability_change),
            ("Net worth", s.net_worth_open, s.net_worth_close, s.net_worth_change),
            ("GDP", s.gdp_open, s.gdp_close, s.gdp_change),
        )
    ]


def _summary_csv(s: SheetChangeSummary) -> str:
    rows = [["content", "opening_billion_yuan", "closing_billion_yuan", "level_change_billion_yuan",
             "pct_change"]]
    rows += _summary_rows(s)
    rows.append(["Liabilities / GDP (%)", _pct_str(s.liability_to_gdp_open) or "",
                 _pct_str(s.liability_to_gdp_close) or "", "", ""])
    return _csv(rows)


def _summary_jsonl(s: SheetChangeSummary) -> str:
    keys = ["content", "opening_billion_yuan", "closing_billion_yuan",
            "level_change_billion_yuan", "pct_change"]
    recs = [dict(zip(keys, r)) for r in _summary_rows(s)]
    recs.append({"content": "liability_to_gdp_pct",
                 "opening": _pct_str(s.liability_to_gdp_open),
                 "closing": _pct_str(s.liability_to_gdp_close)})
    return _jsonl(recs)


def _summary_text(s: SheetChangeSummary) -> str:
    o = s.opening_date.isoformat() if s.opening_date else "opening"
    c = s.closing_date.isoformat() if s.closing_date else "closing"
    rows = [["Content", o, c, "Level change", "Percent change"]]
    for label, a, b, lvl, pct in _summary_rows(s):
        rows.append([label, Money.billion(a).display(), Money.billion(b).display(),
                     Money.billion(lvl).display(), f"{pct}%" if pct else "--"])
    lines = [f"Changes in the balance sheet and GDP: {s.region} (billion yuan)", ""]
    lines += text_table(rows, right=(1, 2, 3, 4))
    lines.append("")
    lines.append(f"Liabilities / GDP: {_pct_str(s.liability_to_gdp_open) or '--'}% ({o}) -> "
                 f"{_pct_str(s.liability_to_gdp_close) or '--'}% ({c})")
    return "\n".join(lines) + "\n"


# -- responsibility --------------------------------------------------------

_RECORD_COLUMNS = ["category", "item", "debtor_kind", "debtor_name", "creditor",
                   "repayment_start", "repayment_end", "expenditure_billion_yuan"]


def _record_fields(r: LiabilityRecord) -> list[str]:
    start, end = r.repayment_period or (None, None)
    return [r.category.value, r.item, r.debtor.kind.value, r.debtor.name, r.creditor.name,
            start.isoformat() if start else "", end.isoformat() if end else "",
            fmt_billions(r.expenditure)]


def _records_csv(rs) -> str:
    return _csv([_RECORD_COLUMNS] + [_record_fields(r) for r in rs])


def _records_jsonl(rs) -> str:
    return _jsonl(dict(zip(_RECORD_COLUMNS, _record_fields(r))) for r in rs)


def _records_text(rs) -> str:
    rows = [["Category", "Item", "Debtor", "Creditor", "Repayment period", "Expenditure"]]
    total = Money.zero()
    for r in rs:
        period = "unassigned" if r.repayment_period is None else \
            f"{r.repayment_period[0].isoformat()}..{r.repayment_period[1].isoformat()}"
        rows.append([r.category.value, r.item, str(r.debtor), str(r.creditor), period,
                     r.expenditure.display()])
        total = total + r.expenditure
    lines = ["Liability responsibility records (billion yuan)", ""]
    lines += text_table(rows, right=(5,))
    lines.append("")
    lines.append(f"{len(rs)} records, total expenditure {total.display()}")
    return "\n".join(lines) + "\n"


def _rights_text(m: RightsMatrix) -> str:
    table = rights_report(m)
    lines = ["Property rights over natural resource liabilities", ""]
    for row in table[1:]:
        lines.append(row[0])
        for right, cell in zip(table[0][1:], row[1:]):
            lines.append(f"  {right:<13} {cell}")
    return "\n".join(lines) + "\n"


def _rights_jsonl(m: RightsMatrix) -> str:
    table = rights_report(m)
    return _jsonl(dict(zip(table[0], row)) for row in table[1:])


_RENDERERS = {
    ("sheet", "text"): _sheet_text,
    ("sheet", "csv"): sheet_to_csv,
    ("sheet", "json-lines"): _sheet_jsonl,
    ("discrepancies", "text"): _disc_text,
    ("discrepancies", "csv"): _disc_csv,
    ("discrepancies", "json-lines"): _disc_jsonl,
    ("changes", "text"): _changes_text,
    ("changes", "csv"): _changes_csv,
    ("changes", "json-lines"): _changes_jsonl,
    ("summary", "text"): _summary_text,
    ("summary", "csv"): _summary_csv,
    ("summary", "json-lines"): _summary_jsonl,
    ("records", "text"): _records_text,
    ("records", "csv"): _records_csv,
    ("records", "json-lines"): _records_jsonl,
    ("rights", "text"): _rights_text,
    ("rights", "csv"): regime_to_csv,
    ("rights", "json-lines"): _rights_jsonl,
}
