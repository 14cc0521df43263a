import pytest

from colorcut.graph import ColoredGraph
from colorcut.instances import GeneratorParams, generate_instance


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale sweeps over many generated instances")


@pytest.fixture
def triangle():
    return ColoredGraph(3, ((0, 1, 0), (1, 2, 1), (0, 2, 2)), 3)


@pytest.fixture
def path4():
    # a - b - c - d with edge colors 0, 1, 0
    return ColoredGraph(4, ((0, 1, 0), (1, 2, 1), (2, 3, 0)), 2)


@pytest.fixture
def star():
    # K_{1,3}, center 0, one color per leaf edge
    return ColoredGraph(4, ((0, 1, 0), (0, 2, 1), (0, 3, 2)), 3)


@pytest.fixture
def single_edge():
    return ColoredGraph(2, ((0, 1, 0),), 1)


@pytest.fixture
def two_candidates():
    """With nothing kept, adding color 0 leaves 4 components and color 1 leaves 3."""
    return ColoredGraph(5, ((0, 1, 0), (2, 3, 1), (3, 4, 1), (1, 2, 2)), 3)


@pytest.fixture
def three_candidates():
    """With nothing kept, colors 0, 1, 2 leave 5, 4 and 3 components; color 3 joins the rest."""
    edges = (
        (0, 1, 0),
        (2, 3, 1),
        (4, 5, 1),
        (0, 1, 2),
        (1, 2, 2),
        (2, 3, 2),
        (3, 4, 3),
        (4, 5, 3),
    )
    return ColoredGraph(6, edges, 4)


@pytest.fixture
def small_instance():
    return generate_instance(GeneratorParams(8, 6, 0.5, seed=11))

