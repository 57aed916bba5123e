import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forest_trees import (
    ForestInstance,
    WeightedCompleteGraph,
    contract_forest,
    count_forced_trees,
    det_bareiss,
    enumerate_forests,
    enumerate_tau,
    laplacian_minor,
    tau_kirchhoff,
)
from forest_trees.errors import IndexOutOfRange, NonIntegerWeights, TooLarge

from oracles import brute_force_forced_trees, cofactor_det

UNIT_K3 = WeightedCompleteGraph.from_upper(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
TRIANGLE_123 = WeightedCompleteGraph.from_upper(3, {(0, 1): 1, (0, 2): 2, (1, 2): 3})


def unit_complete(k):
    return WeightedCompleteGraph.from_upper(k, {(i, j): 1 for i in range(k) for j in range(i + 1, k)})


def random_graph(rng, k, hi=3):
    return WeightedCompleteGraph.from_upper(
        k, {(i, j): rng.randint(0, hi) for i in range(k) for j in range(i + 1, k)}
    )


def test_laplacian_minor_examples():
    assert laplacian_minor(UNIT_K3, 0) == [[2, -1], [-1, 2]]
    assert laplacian_minor(WeightedCompleteGraph(((0,),)), 0) == []
    assert laplacian_minor(TRIANGLE_123, 2) == [[3, -1], [-1, 4]]


def test_laplacian_minor_errors():
    with pytest.raises(IndexOutOfRange):
        laplacian_minor(UNIT_K3, 3)
    half = WeightedCompleteGraph.from_upper(2, {(0, 1): Fraction(1, 2)})
    with pytest.raises(NonIntegerWeights):
        laplacian_minor(half, 0)


def test_integral_fractions_are_accepted():
    g = WeightedCompleteGraph.from_upper(2, {(0, 1): Fraction(6, 2)})
    assert tau_kirchhoff(g) == 3


def test_det_examples():
    assert det_bareiss([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det_bareiss([[2, 1], [1, 2]]) == 3
    assert det_bareiss([]) == 1
    assert det_bareiss([[0, 1], [1, 0]]) == -1
    assert det_bareiss([[0, 0], [1, 2]]) == 0
    assert det_bareiss([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 0


def test_det_does_not_mutate_input():
    a = [[0, 2], [3, 4]]
    det_bareiss(a)
    assert a == [[0, 2], [3, 4]]


def test_det_matches_cofactor_expansion():
    rng = random.Random(2024)
    for _ in range(500):
        d = rng.randint(0, 5)
        a = [[rng.randint(-9, 9) for _ in range(d)] for _ in range(d)]
        if rng.random() < 0.3 and d:
            # force zero pivots to exercise row swaps
            a[0][0] = 0
        assert det_bareiss(a) == cofactor_det(a), a


def test_tau_kirchhoff_examples(k22_one_edge):
    assert tau_kirchhoff(UNIT_K3) == 3
    assert tau_kirchhoff(TRIANGLE_123) == 11
    assert tau_kirchhoff(contract_forest(k22_one_edge)) == 3


def test_enumerate_tau_examples():
    assert enumerate_tau(unit_complete(4)) == 16
    assert enumerate_tau(WeightedCompleteGraph.from_upper(2, {(0, 1): 7})) == 7
    k22 = WeightedCompleteGraph.from_upper(4, {(0, 2): 1, (0, 3): 1, (1, 2): 1, (1, 3): 1})
    assert enumerate_tau(k22) == 4
    with pytest.raises(TooLarge):
        enumerate_tau(unit_complete(10))


def test_matrix_tree_equals_enumeration():
    rng = random.Random(7)
    for _ in range(500):
        g = random_graph(rng, rng.randint(1, 6))
        assert tau_kirchhoff(g) == enumerate_tau(g)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**32))
def test_minor_independence(k, seed):
    g = random_graph(random.Random(seed), k, hi=5)
    values = {det_bareiss(laplacian_minor(g, d)) for d in range(k)}
    assert len(values) == 1


def test_count_forced_trees_examples(k22_one_edge):
    assert count_forced_trees(k22_one_edge) == 3
    tree = ForestInstance((2, 2), (((0, 0), (1, 0)), ((0, 0), (1, 1)), ((0, 1), (1, 1))))
    assert count_forced_trees(tree) == 1
    assert count_forced_trees(ForestInstance((1, 1, 1), (((0, 0), (1, 0)),))) == 2
    with pytest.raises(TooLarge):
        count_forced_trees(ForestInstance((5, 5)))


@pytest.mark.parametrize("parts", [(2, 2), (1, 3), (2, 3), (1, 1, 1), (1, 1, 2)])
def test_count_forced_trees_matches_brute_force(parts):
    for forest in enumerate_forests(parts):
        assert count_forced_trees(forest) == brute_force_forced_trees(parts, forest.edges)


@pytest.mark.parametrize(
    "parts", [(1, 1), (1, 4), (2, 2), (2, 3), (3, 3), (1, 5), (2, 4), (1, 1, 1), (1, 2, 2), (2, 2, 2)]
)
def test_contraction_matches_forced_enumeration(parts):
    for forest in enumerate_forests(parts):
        assert tau_kirchhoff(contract_forest(forest)) == count_forced_trees(forest)
