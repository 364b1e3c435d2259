import pytest

from nrbs import fixture_path, load_sheet


@pytest.fixture(scope="session")
def sheet2013():
    return load_sheet(fixture_path("shaanxi_2013.csv"))


@pytest.fixture(scope="session")
def sheet2018():
    return load_sheet(fixture_path("shaanxi_2018.csv"))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
