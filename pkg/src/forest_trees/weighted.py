"""Weighted spanning-tree sums of complete graphs.

A weighted ``K_k`` with integer weights stands for the multigraph carrying
``w[i][j]`` parallel edges between i and j.  Contracting a forest of a
complete multipartite host yields such a graph, and for a bipartite host the
weights factor as ``x_i*y_j + x_j*y_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from operator import mul
from typing import Sequence

from .closed_form import PairVector, phi_eval
from .errors import TooLarge, ValidationError
from .forest import ForestInstance, component_members

RECURSION_CAP = 12


@dataclass(frozen=True)
class WeightedCompleteGraph:
    w: tuple[tuple, ...]

    def __post_init__(self):
        w = tuple(tuple(row) for row in self.w)
        k = len(w)
        if k < 1:
            raise ValidationError("a weighted complete graph needs k >= 1")
        for i, row in enumerate(w):
            if len(row) != k:
                raise ValidationError(f"row {i} has length {len(row)}, expected {k}")
            if row[i] != 0:
                raise ValidationError(f"diagonal entry {i} is {row[i]}, expected 0")
            for j in range(i):
                if row[j] != w[j][i]:
                    raise ValidationError(f"weights not symmetric at ({i}, {j})")
        object.__setattr__(self, "w", w)

    @property
    def k(self) -> int:
        return len(self.w)

    @classmethod
    def from_upper(cls, k: int, weights: dict) -> "WeightedCompleteGraph":
        """Build from ``{(i, j): w}`` with i < j; missing pairs get weight 0."""
        w = [[0] * k for _ in range(k)]
        for (i, j), value in weights.items():
            w[i][j] = w[j][i] = value
        return cls(tuple(map(tuple, w)))


@dataclass(frozen=True)
class FactoredWeights:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.x) != len(self.y) or not self.x:
            raise ValidationError("x and y must be non-empty and of equal length")
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        object.__setattr__(self, "y", tuple(Fraction(v) for v in self.y))

    @property
    def k(self) -> int:
        return len(self.x)

    def graph(self) -> WeightedCompleteGraph:
        """The induced weights ``x_i*y_j + x_j*y_i``, as integers when integral."""
        x, y = self.x, self.y

        def weight(i, j):
            if i == j:
                return 0
            v = x[i] * y[j] + x[j] * y[i]
            return v.numerator if v.denominator == 1 else v

        return WeightedCompleteGraph(
            tuple(tuple(weight(i, j) for j in range(self.k)) for i in range(self.k))
        )


def contract_forest(instance: ForestInstance) -> WeightedCompleteGraph:
    """Contract every forest component to one vertex (canonical profile order).

    Host edges join distinct parts only, so the number between components i
    and j is ``|C_i| * |C_j|`` minus the same-part pairs; on a bipartite host
    this is ``m_i*n_j + m_j*n_i``.
    """
    vecs = [vec for vec, _ in component_members(instance)]
    k = len(vecs)
    sizes = [sum(v) for v in vecs]

    rows = []
    for i in range(k):
        si, vi = sizes[i], vecs[i]
        row = [si * sj - sum(map(mul, vi, vj)) for sj, vj in zip(sizes, vecs)]
        row[i] = 0
        rows.append(tuple(row))
    return WeightedCompleteGraph(tuple(rows))


def tau_factored(fw: FactoredWeights) -> Fraction:
    """Weighted tree sum of ``K_k`` under factored weights, via phi."""
    return phi_eval(PairVector(tuple(zip(fw.x, fw.y))))


def _merge(g: Sequence[Sequence], merged: set, rest: list[int]) -> list[list]:
    """Weights of the graph where ``merged`` becomes vertex 0, followed by ``rest``."""
    head = [sum(g[r][j] for r in merged) for j in rest]
    size = len(rest) + 1
    w = [[0] * size for _ in range(size)]
    for a, j in enumerate(rest, start=1):
        w[0][a] = w[a][0] = head[a - 1]
        for b in range(a + 1, size):
            w[a][b] = w[b][a] = g[j][rest[b - 1]]
    return w


def _recurse(w: list[list], signed: bool):
    k = len(w)
    if k == 1:
        return 1
    others = range(1, k)
    total = 0
    for size in range(1, k):
        for subset in combinations(others, size):
            factor = prod(w[0][i] for i in subset)
            if factor == 0:
                continue
            rest = [j for j in others if j not in subset]
            merged = {0, *subset} if signed else set(subset)
            sub = _merge(w, merged, rest)
            term = factor * _recurse(sub, signed)
            total += -term if signed and size % 2 == 0 else term
    return total


def _checked(g: WeightedCompleteGraph) -> list[list]:
    if g.k > RECURSION_CAP:
        raise TooLarge(f"k={g.k} exceeds the recursion cap {RECURSION_CAP}")
    return [list(row) for row in g.w]


def tau_inclusion_exclusion(g: WeightedCompleteGraph):
    """Weighted tree sum by inclusion-exclusion over the neighbours of vertex 0.

    Each subset I of the other vertices contributes
    ``(-1)^(|I|-1) * prod_{i in I} w[0][i] * tau(G_I)`` where G_I merges
    ``I + {0}`` into one vertex.
    """
    return _recurse(_checked(g), signed=True)


def tau_alt_recursion(g: WeightedCompleteGraph):
    """Weighted tree sum by the exact neighbour set I of vertex 0 (no signs).

    Here G_I drops vertex 0 and merges I alone, so the merged vertex reaches j
    with ``sum_{r in I} w[r][j]``.
    """
    return _recurse(_checked(g), signed=False)
