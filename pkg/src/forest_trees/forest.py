"""Forests inside complete multipartite host graphs.

A vertex is addressed as ``(part, offset)``.  Part 0 is X and part 1 is Y
for a bipartite host ``K_{m,n}``; a tripartite host adds part 2.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import (
    CycleDetected,
    DuplicateEdge,
    EdgeOutOfRange,
    HostTooLarge,
    InfeasibleTarget,
    InvalidHost,
    SamePartEdge,
    ValidationError,
)

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]

ENUMERATION_CAP = 12


class UnionFind:
    """Disjoint sets over ``range(size)`` with path compression and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size
        self.components = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


@dataclass(frozen=True)
class ForestInstance:
    parts: tuple[int, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(
            self, "edges", tuple((tuple(u), tuple(v)) for u, v in self.edges)
        )

    @property
    def n_vertices(self) -> int:
        return sum(self.parts)

    def index(self, vertex: Vertex) -> int:
        """Global index of a ``(part, offset)`` vertex."""
        part, offset = vertex
        return sum(self.parts[:part]) + offset

    def vertices(self) -> list[Vertex]:
        return [(p, i) for p, size in enumerate(self.parts) for i in range(size)]

    def host_edges(self) -> list[Edge]:
        """All host edges in lexicographic order of their endpoints."""
        return [
            (u, v) for u, v in combinations(self.vertices(), 2) if u[0] != v[0]
        ]

    def to_dict(self) -> dict:
        return {
            "parts": list(self.parts),
            "edges": [[list(u), list(v)] for u, v in self.edges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ForestInstance":
        try:
            parts = [int(p) for p in data["parts"]]
            edges = []
            for e in data.get("edges", []):
                (pu, iu), (pv, iv) = e
                edges.append(((int(pu), int(iu)), (int(pv), int(iv))))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed instance: {exc}") from exc
        return cls(tuple(parts), tuple(edges))

    @classmethod
    def from_json(cls, text: str) -> "ForestInstance":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValidationError("instance must be a JSON object")
        return cls.from_dict(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass(frozen=True)
class ComponentProfile:
    """Per-component part-intersection counts, in canonical (descending) order."""

    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(int(c) for c in vec) for vec in self.components)
        if not comps:
            raise ValidationError("a profile needs at least one component")
        width = len(comps[0])
        for vec in comps:
            if len(vec) != width:
                raise ValidationError(f"ragged component vector {vec}")
            if min(vec) < 0 or sum(vec) < 1:
                raise ValidationError(f"component {vec} must be non-empty and nonnegative")
        object.__setattr__(self, "components", comps)

    @property
    def k(self) -> int:
        return len(self.components)

    def part_sizes(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.components))

    def canonical(self) -> "ComponentProfile":
        return ComponentProfile(tuple(sorted(self.components, reverse=True)))


def _check_host(parts: Sequence[int]) -> None:
    if len(parts) < 2:
        raise InvalidHost(f"host needs at least two parts, got {list(parts)}")
    if any(p < 1 for p in parts):
        raise InvalidHost(f"part sizes must be positive, got {list(parts)}")


def _check_edges(instance: ForestInstance) -> list[tuple[int, int]]:
    """Range, part and duplicate checks; returns the edges as global index pairs."""
    parts = instance.parts
    seen = set()
    out = []
    for edge in instance.edges:
        for part, offset in edge:
            if not (0 <= part < len(parts) and 0 <= offset < parts[part]):
                raise EdgeOutOfRange(f"edge {edge} leaves the host {list(parts)}", edge)
        u, v = edge
        if u[0] == v[0]:
            raise SamePartEdge(f"edge {edge} joins two vertices of part {u[0]}", edge)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge {edge} appears more than once", edge)
        seen.add(key)
        out.append((instance.index(u), instance.index(v)))
    return out


def component_members(instance: ForestInstance) -> list[tuple[tuple[int, ...], list[Vertex]]]:
    """Validate and return ``(count_vector, members)`` per component, canonically ordered.

    Ties between equal count vectors are broken by the smallest member vertex.
    """
    _check_host(instance.parts)
    pairs = _check_edges(instance)
    uf = UnionFind(instance.n_vertices)
    for edge, (a, b) in zip(instance.edges, pairs):
        if not uf.union(a, b):
            raise CycleDetected(f"edge {edge} closes a cycle", edge)
    groups: dict[int, list[Vertex]] = {}
    for v in instance.vertices():
        groups.setdefault(uf.find(instance.index(v)), []).append(v)
    comps = []
    for members in groups.values():
        counts = [0] * len(instance.parts)
        for part, _ in members:
            counts[part] += 1
        comps.append((tuple(counts), members))
    comps.sort(key=lambda c: (tuple(-x for x in c[0]), c[1][0]))
    return comps


def validate(instance: ForestInstance) -> ComponentProfile:
    return ComponentProfile(tuple(vec for vec, _ in component_members(instance)))


def enumerate_forests(parts: Sequence[int], cap: int | None = None) -> Iterator[ForestInstance]:
    """Yield every forest of the complete multipartite host exactly once.

    Edge sets are grown in increasing host-edge order, so the empty forest
    comes first and any cyclic partial set is pruned with all its supersets.
    At most ``cap`` forests are produced when cap is given.
    """
    parts = tuple(parts)
    _check_host(parts)
    if sum(parts) > ENUMERATION_CAP:
        raise HostTooLarge(f"{sum(parts)} vertices exceeds the enumeration cap {ENUMERATION_CAP}")
    if cap is not None and cap <= 0:
        return
    host = ForestInstance(parts)
    edges = host.host_edges()
    idx = [(host.index(u), host.index(v)) for u, v in edges]
    emitted = 0

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def grow(start, parent, chosen):
        nonlocal emitted
        yield ForestInstance(parts, tuple(edges[i] for i in chosen))
        emitted += 1
        for j in range(start, len(edges)):
            if cap is not None and emitted >= cap:
                return
            ra, rb = find(parent, idx[j][0]), find(parent, idx[j][1])
            if ra == rb:
                continue
            child = parent[:]
            child[ra] = rb
            chosen.append(j)
            yield from grow(j + 1, child, chosen)
            chosen.pop()

    yield from grow(0, list(range(host.n_vertices)), [])


def random_forest(parts: Sequence[int], target_components: int, seed: int) -> ForestInstance:
    """Random forest with exactly ``target_components`` components.

    Host edges are shuffled with ``random.Random(seed)`` and inserted in that
    order, skipping any that would close a cycle.
    """
    parts = tuple(parts)
    _check_host(parts)
    total = sum(parts)
    if not 1 <= target_components <= total:
        raise InfeasibleTarget(
            f"target_components={target_components} outside [1, {total}]"
        )
    host = ForestInstance(parts)
    edges = host.host_edges()
    rng = random.Random(seed)
    rng.shuffle(edges)
    uf = UnionFind(total)
    chosen = []
    for u, v in edges:
        if uf.components == target_components:
            break
        if uf.union(host.index(u), host.index(v)):
            chosen.append((u, v))
    chosen.sort()
    return ForestInstance(parts, tuple(chosen))
