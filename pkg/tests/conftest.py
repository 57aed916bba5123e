import pytest

from forest_trees import ForestInstance


@pytest.fixture
def k22_one_edge():
    return ForestInstance((2, 2), (((0, 0), (1, 0)),))
