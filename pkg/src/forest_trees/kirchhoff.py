"""Ground-truth spanning-tree counts.

Two routes that share nothing with the closed forms: the weighted
Matrix-Tree theorem evaluated with fraction-free (Bareiss) elimination, and
literal backtracking enumeration of spanning trees for tiny inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import IndexOutOfRange, NonIntegerWeights, TooLarge
from .forest import ForestInstance, validate
from .weighted import WeightedCompleteGraph

IntegerMatrix = list[list[int]]

ENUMERATE_CAP = 9


def _int_weight(w) -> int:
    if isinstance(w, int):
        return w
    if isinstance(w, Fraction) and w.denominator == 1:
        return w.numerator
    raise NonIntegerWeights(f"weight {w} is not an integer")


def laplacian_minor(g: WeightedCompleteGraph, drop: int) -> IntegerMatrix:
    """Weighted Laplacian ``D - W`` with row and column ``drop`` removed."""
    if not 0 <= drop < g.k:
        raise IndexOutOfRange(f"drop={drop} outside [0, {g.k})")
    w = [[_int_weight(x) for x in row] for row in g.w]
    keep = [i for i in range(g.k) if i != drop]
    return [[sum(w[i]) if i == j else -w[i][j] for j in keep] for i in keep]


def det_bareiss(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by one-step fraction-free elimination with row pivoting."""
    n = len(a)
    m = [list(row) for row in a]
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        tail_k = row_k[k + 1 :]
        for i in range(k + 1, n):
            row_i = m[i]
            f = row_i[k]
            row_i[k + 1 :] = [(pivot * x - f * y) // prev for x, y in zip(row_i[k + 1 :], tail_k)]
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def tau_kirchhoff(g: WeightedCompleteGraph) -> int:
    return det_bareiss(laplacian_minor(g, 0))


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        x = parent[x]
    return x


def _tree_sum(n_vertices: int, parent: list[int], candidates: list, need: int) -> int:
    """Sum of weight products over ``need``-subsets of candidates that stay acyclic.

    ``parent`` encodes components already merged; candidates are ``(u, v, w)``.
    """
    total = 0

    def rec(start, parent, need, acc):
        nonlocal total
        if need == 0:
            total += acc
            return
        for idx in range(start, len(candidates) - need + 1):
            u, v, w = candidates[idx]
            ru, rv = _find(parent, u), _find(parent, v)
            if ru == rv:
                continue
            child = parent[:]
            child[ru] = rv
            rec(idx + 1, child, need - 1, acc * w)

    rec(0, parent, need, 1)
    return total


def enumerate_tau(g: WeightedCompleteGraph) -> int:
    """Sum over spanning trees of the product of edge weights, by enumeration."""
    if g.k > ENUMERATE_CAP:
        raise TooLarge(f"k={g.k} exceeds the enumeration cap {ENUMERATE_CAP}")
    w = [[_int_weight(x) for x in row] for row in g.w]
    candidates = [
        (i, j, w[i][j]) for i in range(g.k) for j in range(i + 1, g.k) if w[i][j] != 0
    ]
    return _tree_sum(g.k, list(range(g.k)), candidates, g.k - 1)


def count_forced_trees(instance: ForestInstance) -> int:
    """Number of host spanning trees whose edge set contains the forest.

    Every such tree is the forest plus an acyclic set of further host edges
    that joins its components, so those completions are enumerated directly.
    """
    profile = validate(instance)
    n = instance.n_vertices
    if n > ENUMERATE_CAP:
        raise TooLarge(f"{n} vertices exceeds the enumeration cap {ENUMERATE_CAP}")
    parent = list(range(n))
    forced = set()
    for u, v in instance.edges:
        a, b = instance.index(u), instance.index(v)
        parent[_find(parent, a)] = _find(parent, b)
        forced.add((min(a, b), max(a, b)))
    candidates = []
    for u, v in instance.host_edges():
        a, b = instance.index(u), instance.index(v)
        if (a, b) not in forced:
            candidates.append((a, b, 1))
    return _tree_sum(n, parent, candidates, profile.k - 1)
