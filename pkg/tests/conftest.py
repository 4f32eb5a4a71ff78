import pytest

from polargraph.polarity import er_graph, unitary_graph

ER_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13]
U_ORDERS = [4, 9, 16]

_criteria: list[tuple[str, bool, str]] = []


@pytest.fixture
def er():
    return er_graph


@pytest.fixture
def unitary():
    return unitary_graph


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""
    def record(name: str, passed: bool, detail: str = "") -> None:
        _criteria.append((name, passed, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _criteria:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
