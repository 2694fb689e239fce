import pytest
from hypothesis import strategies as st

from signrank import BoolMatrix

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@st.composite
def bool_matrices(draw, max_m=5, max_n=5, min_m=1, min_n=1):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=m, max_size=m))
    return BoolMatrix(rows)


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary prints them all at the end."""

    def record(name: str, ok: bool, detail: str = ""):
        ACCEPTANCE_RESULTS.append((name, ok, detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
