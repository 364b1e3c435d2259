"""Command-line pipeline: compile, validate, changes, assign, render.

Reports go to stdout (or to files under ``--out``); diagnostics go to stderr.
Exit status: 0 success, 1 bad input or usage, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .changes import item_change_report, sheet_change
from .compiler import DEFAULT_REL_TOL, check_totals, validate_consistency
from .errors import InputError, InvariantViolation
from .model import Money, Side
from .render import FORMATS, render
from .responsibility import ActorKind, RightKind, build_records
from .tables import default_regime, fixture_path, load_regime, load_sheet
from .units import to_decimal

log = logging.getLogger("nrbs")

EXT = {"text": "txt", "csv": "csv", "json-lines": "jsonl"}

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; 2 is reserved for invariant violations.
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _resolve(path: str) -> Path:
    """Existing path as given, else a fixture shipped with the package by that name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = fixture_path(p.name)
    if bundled.exists():
        log.info("using bundled fixture %s", bundled)
        return bundled
    raise UsageError(f"no such file: {path}")


def _load(path: str):
    sheet = load_sheet(_resolve(path))
    check_totals(sheet)
    return sheet


def _emit(args, outputs: list[tuple[str, bytes]]) -> None:
    """Write (stem, payload) pairs into --out, or concatenate them on stdout."""
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for stem, payload in outputs:
            target = out / stem
            target.write_bytes(payload)
            log.info("wrote %s", target)
        return
    stdout = sys.stdout.buffer
    for i, (_, payload) in enumerate(outputs):
        if i and args.format == "text":
            stdout.write(b"\n")
        stdout.write(payload)
    stdout.flush()


def cmd_compile(args) -> int:
    sheet = _load(args.input)
    ext = EXT[args.format]
    totals = {
        "region": sheet.region,
        "date": sheet.date.isoformat() if sheet.date else None,
        "asset_total_billion_yuan": sheet.asset_total.display(),
        "liability_total_billion_yuan": sheet.liability_total.display(),
        "net_worth_billion_yuan": sheet.net_worth.display(),
    }
    outputs = [(f"sheet.{ext}", render(sheet, args.format))]
    if args.out:
        outputs.append(("totals.json", (json.dumps(totals, indent=2) + "\n").encode("utf-8")))
    _emit(args, outputs)
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.rel_tol <= 0:
        raise UsageError("--rel-tol must be positive")
    sheet = _load(args.input)
    report = validate_consistency(sheet, args.rel_tol)
    log.info("%d discrepancies at rel_tol=%s", len(report), args.rel_tol)
    _emit(args, [(f"discrepancies.{EXT[args.format]}", render(report, args.format, kind="discrepancies"))])
    return EXIT_OK


def cmd_changes(args) -> int:
    opening = _load(args.opening)
    closing = _load(args.closing)
    try:
        gdp_open = Money.billion(to_decimal(args.gdp_open))
        gdp_close = Money.billion(to_decimal(args.gdp_close))
    except ValueError as exc:
        raise UsageError(f"bad GDP value: {exc}") from None
    items = item_change_report(opening, closing)
    summary = sheet_change(opening, closing, gdp_open, gdp_close)
    ext = EXT[args.format]
    _emit(args, [
        (f"item_changes.{ext}", render(items, args.format)),
        (f"summary.{ext}", render(summary, args.format)),
    ])
    return EXIT_OK


def cmd_assign(args) -> int:
    sheet = _load(args.input)
    regime = load_regime(_resolve(args.regime)) if args.regime else default_regime()
    # Debtor for a category: the company holding direct use rights over it, if the regime names one.
    debtors = {}
    for category in regime.categories:
        companies = sorted(a for a in regime.holders(category, RightKind.USE_DIRECT)
                           if a.kind is ActorKind.COMPANY)
        if companies:
            for li in sheet.items(Side.LIABILITY):
                if li.category is category:
                    debtors[(category, li.item)] = companies[0]
    records = build_records(sheet, debtors)
    total = Money.zero()
    for r in records:
        total = total + r.expenditure
    if total != sheet.liability_total:
        raise InvariantViolation(
            f"record expenditures {total} differ from liability total {sheet.liability_total}"
        )
    ext = EXT[args.format]
    _emit(args, [
        (f"liability_records.{ext}", render(records, args.format, kind="records")),
        (f"rights_matrix.{ext}", render(regime, args.format)),
    ])
    return EXIT_OK


def cmd_render(args) -> int:
    sheet = _load(args.input)
    _emit(args, [(f"sheet.{EXT[args.format]}", render(sheet, args.format))])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nrbs", description="Natural resource balance sheet compiler.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, out_help="write report files into this directory instead of stdout"):
        sp.add_argument("--format", choices=FORMATS, default="text")
        sp.add_argument("--out", metavar="DIR", help=out_help)

    sp = sub.add_parser("compile", help="compile a sheet and report totals")
    sp.add_argument("--input", required=True, help="line-item CSV")
    common(sp, "write sheet.<ext> and totals.json into this directory")
    sp.set_defaults(func=cmd_compile)

    sp = sub.add_parser("validate", help="check quantity x price against stored values")
    sp.add_argument("--input", required=True)
    sp.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL)
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("changes", help="inter-period change tables and GDP summary")
    sp.add_argument("--opening", required=True)
    sp.add_argument("--closing", required=True)
    sp.add_argument("--gdp-open", required=True, help="opening GDP, billion yuan")
    sp.add_argument("--gdp-close", required=True, help="closing GDP, billion yuan")
    common(sp)
    sp.set_defaults(func=cmd_changes)

    sp = sub.add_parser("assign", help="liability responsibility records")
    sp.add_argument("--input", required=True)
    sp.add_argument("--regime", help="rights-matrix CSV (default: bundled reconstruction)")
    common(sp)
    sp.set_defaults(func=cmd_assign)

    sp = sub.add_parser("render", help="render a sheet in another format")
    sp.add_argument("--input", required=True)
    common(sp)
    sp.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
