import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forest_trees import ForestInstance, enumerate_forests, random_forest, validate
from forest_trees.errors import (
    CycleDetected,
    DuplicateEdge,
    EdgeOutOfRange,
    HostTooLarge,
    InfeasibleTarget,
    InvalidHost,
    SamePartEdge,
    ValidationError,
)

from oracles import brute_force_forests

X0, X1, Y0, Y1 = (0, 0), (0, 1), (1, 0), (1, 1)


def test_empty_forest_is_all_singletons():
    p = validate(ForestInstance((2, 2)))
    assert p.components == ((1, 0), (1, 0), (0, 1), (0, 1))
    assert p.k == 4


def test_one_edge_merges_two_singletons(k22_one_edge):
    p = validate(k22_one_edge)
    assert p.components == ((1, 1), (1, 0), (0, 1))
    assert p.k == 3


def test_four_cycle_rejected():
    edges = ((X0, Y0), (X0, Y1), (X1, Y0), (X1, Y1))
    with pytest.raises(CycleDetected) as info:
        validate(ForestInstance((2, 2), edges))
    assert info.value.edge == (X1, Y1)


@pytest.mark.parametrize(
    "edges, exc",
    [
        (((0, 0), (1, 2)), EdgeOutOfRange),
        (((0, 0), (3, 0)), EdgeOutOfRange),
        (((0, 0), (0, 1)), SamePartEdge),
    ],
)
def test_bad_edges_name_the_offender(edges, exc):
    with pytest.raises(exc) as info:
        validate(ForestInstance((2, 2), (edges,)))
    assert info.value.edge == edges
    assert str(edges) in str(info.value)


def test_duplicate_edge_either_orientation():
    with pytest.raises(DuplicateEdge):
        validate(ForestInstance((2, 2), ((X0, Y0), (Y0, X0))))


@pytest.mark.parametrize("parts", [(3,), (2, 0), ()])
def test_invalid_hosts(parts):
    with pytest.raises(InvalidHost):
        validate(ForestInstance(parts))


def test_profile_is_sorted_descending_and_sums_match():
    f = ForestInstance((3, 2, 2), (((0, 0), (1, 0)), ((1, 0), (2, 1)), ((0, 2), (2, 0))))
    p = validate(f)
    assert list(p.components) == sorted(p.components, reverse=True)
    assert p.part_sizes() == (3, 2, 2)
    assert p.components == ((1, 1, 1), (1, 0, 1), (1, 0, 0), (0, 1, 0))


@pytest.mark.parametrize("parts, expected", [((1, 1), 2), ((2, 1), 4), ((2, 2), 15)])
def test_enumeration_counts(parts, expected):
    assert sum(1 for _ in enumerate_forests(parts)) == expected


@pytest.mark.parametrize(
    "parts", [(1, 1), (1, 2), (2, 2), (1, 4), (2, 3), (3, 3), (1, 5), (2, 4), (1, 1, 1), (1, 1, 2)]
)
def test_enumeration_matches_subset_filtering(parts):
    ours = [frozenset(frozenset(e) for e in f.edges) for f in enumerate_forests(parts)]
    assert len(ours) == len(set(ours))
    assert set(ours) == set(brute_force_forests(parts))


def test_enumeration_order_is_deterministic_and_starts_empty():
    a = list(enumerate_forests((2, 2)))
    b = list(enumerate_forests((2, 2)))
    assert a == b
    assert a[0].edges == ()


def test_enumeration_cap():
    assert len(list(enumerate_forests((3, 3), cap=10))) == 10
    assert list(enumerate_forests((3, 3), cap=0)) == []
    with pytest.raises(HostTooLarge):
        next(enumerate_forests((7, 6)))


def test_every_enumerated_forest_validates():
    for f in enumerate_forests((2, 3)):
        assert validate(f).part_sizes() == (2, 3)


def test_random_forest_examples():
    assert random_forest((3, 3), 6, seed=11).edges == ()
    tree = random_forest((2, 2), 1, seed=7)
    assert validate(tree).k == 1
    assert random_forest((1, 1), 1, seed=3).edges == (((0, 0), (1, 0)),)


@pytest.mark.parametrize("target", [0, 7])
def test_random_forest_infeasible(target):
    with pytest.raises(InfeasibleTarget):
        random_forest((3, 3), target, seed=0)


@settings(max_examples=60, deadline=None)
@given(
    parts=st.lists(st.integers(1, 5), min_size=2, max_size=3),
    data=st.data(),
    seed=st.integers(0, 2**32),
)
def test_random_forest_hits_target_and_is_reproducible(parts, data, seed):
    target = data.draw(st.integers(1, sum(parts)))
    f = random_forest(parts, target, seed)
    assert f == random_forest(parts, target, seed)
    p = validate(f)
    assert p.k == target
    assert p.part_sizes() == tuple(parts)


def test_json_round_trip():
    f = ForestInstance((2, 3), ((X0, (1, 2)), (X1, (1, 2))))
    assert ForestInstance.from_json(f.to_json()) == f
    text = '{"edges": [[[0, 1], [1, 0]]], "parts": [2, 2]}'
    assert ForestInstance.from_json(text).edges == ((X1, Y0),)


@pytest.mark.parametrize("text", ["{", "[]", '{"parts": [2, 2], "edges": [[0, 1]]}', '{"edges": []}'])
def test_malformed_json(text):
    with pytest.raises(ValidationError):
        ForestInstance.from_json(text)
