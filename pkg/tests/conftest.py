import pytest

from icss.fixtures import FIXTURES, random_fixture

NAMED = ["identity", "fold", "double_cover", "figure_eight", "disc_to_rp2"]


@pytest.fixture(scope="session")
def maps():
    """The five named maps, built once per session."""
    return {name: FIXTURES[name]() for name in NAMED}


@pytest.fixture(scope="session")
def fold(maps):
    return maps["fold"]


@pytest.fixture(scope="session")
def double_cover(maps):
    return maps["double_cover"]


@pytest.fixture(scope="session")
def figure_eight(maps):
    return maps["figure_eight"]


@pytest.fixture(scope="session")
def disc_to_rp2(maps):
    return maps["disc_to_rp2"]


@pytest.fixture(scope="session")
def identity_map(maps):
    return maps["identity"]


@pytest.fixture(scope="session")
def deep_map():
    """A random map whose fibres have at least three lifts somewhere, so the
    multiplicity-3 spaces are nonempty."""
    for seed in range(40):
        f = random_fixture(seed)
        from icss.multiplicity import Tower

        if Tower(f).k_max() >= 3:
            return f
    raise RuntimeError("no random seed below 40 produced a triple point")
