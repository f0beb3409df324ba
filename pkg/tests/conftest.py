import pytest
from hypothesis import strategies as st

from starmonoids.ptransform import from_images


@st.composite
def maps(draw, n=None, max_n=6):
    """Arbitrary partial transformation, optionally on a fixed vertex count."""
    if n is None:
        n = draw(st.integers(1, max_n))
    img = draw(st.lists(st.one_of(st.none(), st.integers(0, n - 1)), min_size=n, max_size=n))
    return from_images(img)


@st.composite
def map_pairs(draw, max_n=6, count=2):
    n = draw(st.integers(1, max_n))
    return tuple(draw(maps(n=n)) for _ in range(count))


@pytest.fixture
def parse():
    from starmonoids.ptransform import parse_map
    return parse_map


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
