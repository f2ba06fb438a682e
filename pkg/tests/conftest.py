import pytest

from phoeg.graph import Graph


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, line = RESULTS[k]
        terminalreporter.write_line(line)


@pytest.fixture
def p4():
    return Graph.path(4)
