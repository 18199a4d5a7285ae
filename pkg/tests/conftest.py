import pytest
from hypothesis import strategies as st

from cantorkit.core_bits import EPReal
from cantorkit.perm_recovery import FinSupPermutation

ACCEPTANCE_LINES: list[str] = []


def reals(max_head=6, max_period=4):
    """Eventually periodic reals with short heads and periods."""
    bits = st.integers(0, 1)
    return st.builds(
        EPReal,
        st.lists(bits, max_size=max_head).map(tuple),
        st.lists(bits, min_size=1, max_size=max_period).map(tuple),
    )


def perms(size=8):
    """Permutations with support inside [0, size)."""
    return st.permutations(list(range(size))).map(FinSupPermutation.from_images)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
