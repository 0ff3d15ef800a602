import pytest

from hyperpyramid.pyramid import PyramidGraph


@pytest.fixture(scope="session")
def graph8():
    """The pyramid built to level 8, shared across the session (treat as read-only)."""
    return PyramidGraph(cap=8).build_to(8)
