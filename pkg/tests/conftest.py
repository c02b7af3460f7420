import pytest

from gdp.surface_model import build_model, builtin_covers, builtin_fixtures, s_a4


@pytest.fixture
def sa4():
    return s_a4()


@pytest.fixture
def a1_toy():
    """One (-1)-curve C meeting one (-2)-curve E once."""
    return build_model("toy(A1)", 7, [(0, -1, "C"), (1, -2, "E")], [(0, 1, 1)], [("A1", (1,))])


@pytest.fixture(scope="session")
def catalog():
    return builtin_fixtures()


@pytest.fixture(scope="session")
def covers():
    return builtin_covers()


@pytest.fixture(scope="session")
def supported(catalog, covers):
    return [m for m in [*catalog, *covers] if not m.unsupported_for_positivity]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
