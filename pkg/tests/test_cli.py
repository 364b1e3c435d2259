import json

import pytest

from nrbs.cli import main
from nrbs.tables import SHEET_COLUMNS

GDP = ["--gdp-open", "1620.55", "--gdp-close", "2394.19"]


def run(capsysbinary, *argv):
    code = main(list(argv))
    out, err = capsysbinary.readouterr()
    return code, out.decode(), err.decode()


def test_changes_summary(capsysbinary):
    code, out, _ = run(capsysbinary, "changes", "--opening", "shaanxi_2013.csv",
                       "--closing", "shaanxi_2018.csv", *GDP)
    assert code == 0
    assert "461.60" in out and "+2.49%" in out


def test_compile_empty(tmp_path, capsysbinary):
    empty = tmp_path / "empty.csv"
    empty.write_text(",".join(SHEET_COLUMNS) + "\n", encoding="utf-8")
    code, out, _ = run(capsysbinary, "compile", "--input", str(empty), "--out", str(tmp_path / "o"))
    assert code == 0
    totals = json.loads((tmp_path / "o" / "totals.json").read_text())
    assert (totals["asset_total_billion_yuan"], totals["liability_total_billion_yuan"],
            totals["net_worth_billion_yuan"]) == ("0.00", "0.00", "0.00")


def test_validate_nonempty(capsysbinary):
    code, out, _ = run(capsysbinary, "validate", "--input", "shaanxi_2013.csv", "--format", "csv")
    assert code == 0
    rows = out.splitlines()
    assert len(rows) > 1
    limestone = next(r for r in rows if "Cement limestone" in r)
    assert ",1e1," in limestone


def test_compile_outputs_files(tmp_path, capsysbinary):
    code, _, _ = run(capsysbinary, "compile", "--input", "shaanxi_2018.csv", "--format",
                     "json-lines", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "sheet.jsonl").exists()
    assert json.loads((tmp_path / "totals.json").read_text())["net_worth_billion_yuan"] == "19003.59"


def test_assign(tmp_path, capsysbinary):
    code, _, _ = run(capsysbinary, "assign", "--input", "shaanxi_2018.csv", "--format", "csv",
                     "--out", str(tmp_path))
    assert code == 0
    records = (tmp_path / "liability_records.csv").read_text().splitlines()
    assert len(records) == 1 + 21
    assert (tmp_path / "rights_matrix.csv").exists()


def test_render_text(capsysbinary):
    code, out, _ = run(capsysbinary, "render", "--input", "shaanxi_2013.csv")
    assert code == 0 and "Net Worth: 18541.99" in out


def test_repeated_runs_identical(tmp_path, capsysbinary):
    outs = []
    for i in range(2):
        d = tmp_path / str(i)
        run(capsysbinary, "changes", "--opening", "shaanxi_2013.csv", "--closing",
            "shaanxi_2018.csv", *GDP, "--format", "json-lines", "--out", str(d))
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1] and len(outs[0]) == 2


@pytest.mark.parametrize("argv", [
    [],
    ["compile"],
    ["compile", "--input", "no_such_file.csv"],
    ["compile", "--input", "shaanxi_2013.csv", "--format", "xlsx"],
    ["validate", "--input", "shaanxi_2013.csv", "--rel-tol", "0"],
    ["changes", "--opening", "shaanxi_2013.csv", "--closing", "shaanxi_2018.csv",
     "--gdp-open", "abc", "--gdp-close", "1"],
    ["bogus"],
])
def test_usage_errors_exit_1(argv, capsysbinary):
    code, _, err = run(capsysbinary, *argv)
    assert code == 1 and err


def test_parse_error_exit_1(tmp_path, capsysbinary):
    bad = tmp_path / "bad.csv"
    bad.write_text(",".join(SHEET_COLUMNS) + "\nX,2013-12-31,Asset,Fish,Carp,-,-,-,-,AGGREGATE,1\n")
    code, _, err = run(capsysbinary, "compile", "--input", str(bad))
    assert code == 1 and "row 2" in err


def test_region_mismatch_exit_1(tmp_path, capsysbinary):
    other = tmp_path / "other.csv"
    other.write_text(",".join(SHEET_COLUMNS) + "\nGansu,2018-12-31,Asset,Land,Woodland,-,-,-,-,AGGREGATE,1\n")
    code, _, _ = run(capsysbinary, "changes", "--opening", "shaanxi_2013.csv",
                     "--closing", str(other), *GDP)
    assert code == 1


def test_invariant_violation_exit_2(monkeypatch, capsysbinary):
    import nrbs.cli as cli
    from nrbs.errors import InvariantViolation

    def broken(sheet):
        raise InvariantViolation("totals drifted")

    monkeypatch.setattr(cli, "check_totals", broken)
    code, _, err = run(capsysbinary, "compile", "--input", "shaanxi_2013.csv")
    assert code == 2 and "totals drifted" in err


def test_version(capsysbinary):
    code, _, _ = run(capsysbinary, "--version")
    assert code == 0
