"""Empirical probe of the conjectured lower bound for complete tripartite hosts.

For a forest of ``K_{n1,n2,n3}`` with component triples ``(n_1i, n_2i, n_3i)``
and ``D_i = (n-n1)*n_1i + (n-n2)*n_2i + (n-n3)*n_3i``, the bound is

    prod(D_i) * (1 - sum_i e_i / D_i) / (n1*n2 + n1*n3 + n2*n3)

where ``e_i`` counts the same-component cross-part pairs.  The exact count
comes from the Matrix-Tree theorem on the contracted multigraph.  A
violation is reported, never raised.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable

from .errors import DegenerateDenominator, TooLarge, ValidationError
from .forest import ForestInstance, random_forest, validate
from .identities import derive_seed
from .kirchhoff import tau_kirchhoff
from .weighted import contract_forest

KIRCHHOFF_CAP = 64
SCAN_CAP = 12


@dataclass(frozen=True)
class TripartiteProfile:
    n1: int
    n2: int
    n3: int
    components: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        comps = tuple(tuple(int(c) for c in t) for t in self.components)
        if not comps:
            raise ValidationError("a profile needs at least one component")
        for t in comps:
            if len(t) != 3 or min(t) < 0 or sum(t) < 1:
                raise ValidationError(f"bad tripartite component {t}")
        sums = tuple(sum(col) for col in zip(*comps))
        if sums != (self.n1, self.n2, self.n3):
            raise ValidationError(f"component sums {sums} != parts {(self.n1, self.n2, self.n3)}")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return self.n1 + self.n2 + self.n3

    @property
    def k(self) -> int:
        return len(self.components)

    @classmethod
    def of(cls, instance: ForestInstance) -> "TripartiteProfile":
        if len(instance.parts) != 3:
            raise ValidationError(f"expected a tripartite host, got parts {list(instance.parts)}")
        return cls(*instance.parts, validate(instance).components)


def conjecture_rhs(p: TripartiteProfile) -> Fraction:
    n = p.n
    parts = (p.n1, p.n2, p.n3)
    denom = p.n1 * p.n2 + p.n1 * p.n3 + p.n2 * p.n3
    ds = []
    for t in p.components:
        d = sum((n - ns) * c for ns, c in zip(parts, t))
        if d <= 0:
            raise DegenerateDenominator(f"component {t} has denominator {d}")
        ds.append(d)
    if denom == 0:
        raise DegenerateDenominator("n1*n2 + n1*n3 + n2*n3 is zero")
    bracket = 1 - sum(
        Fraction(a * b + a * c + b * c, d) for (a, b, c), d in zip(p.components, ds)
    )
    return prod(ds) * bracket / denom


def tau_forest_tripartite(instance: ForestInstance) -> int:
    if len(instance.parts) != 3:
        raise ValidationError(f"expected a tripartite host, got parts {list(instance.parts)}")
    g = contract_forest(instance)
    if g.k > KIRCHHOFF_CAP:
        raise TooLarge(f"k={g.k} exceeds {KIRCHHOFF_CAP}")
    return tau_kirchhoff(g)


def _rational(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


@dataclass(frozen=True)
class ConjectureReport:
    instance: ForestInstance
    k: int
    lhs: int
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            "instance": self.instance.to_dict(),
            "k": str(self.k),
            "lhs": _rational(Fraction(self.lhs)),
            "rhs": _rational(self.rhs),
            "holds": self.holds,
            "equality": self.equality,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def check_conjecture(instance: ForestInstance) -> ConjectureReport:
    profile = TripartiteProfile.of(instance)
    return ConjectureReport(
        instance, profile.k, tau_forest_tripartite(instance), conjecture_rhs(profile)
    )


def shapes(max_n: int) -> list[tuple[int, int, int]]:
    """Sorted part sizes ``n1 <= n2 <= n3`` with total at most max_n."""
    return [
        (a, b, c)
        for a in range(1, max_n + 1)
        for b in range(a, max_n + 1)
        for c in range(b, max_n + 1)
        if a + b + c <= max_n
    ]


def _scan_shape(args) -> list[ConjectureReport]:
    shape, trials, seed = args
    reports = []
    for trial in range(trials):
        rng = random.Random(derive_seed(seed, "shape", *shape, trial))
        target = rng.randint(1, sum(shape))
        forest = random_forest(shape, target, rng.getrandbits(64))
        reports.append(check_conjecture(forest))
    return reports


def worker_count() -> int:
    """CPU count, capped by ``FOREST_TREES_THREADS`` when that is set."""
    cpus = os.cpu_count() or 1
    try:
        cap = int(os.environ.get("FOREST_TREES_THREADS", cpus))
    except ValueError:
        cap = cpus
    return max(1, min(cpus, cap))


def scan_conjecture(
    max_n: int, trials_per_shape: int, seed: int, out=None, workers: int | None = None
) -> list[ConjectureReport]:
    """Random forests on every tripartite shape up to ``max_n`` vertices.

    Reports come back in shape order regardless of worker count.  When
    ``out`` is a writable text stream, one JSON line per report is written.
    """
    if not 3 <= max_n <= SCAN_CAP:
        raise ValidationError(f"max_n must lie in [3, {SCAN_CAP}], got {max_n}")
    if trials_per_shape < 0:
        raise ValidationError("trials_per_shape must be nonnegative")
    jobs = [(shape, trials_per_shape, seed) for shape in shapes(max_n)]
    workers = workers or worker_count()
    if workers > 1 and trials_per_shape:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_scan_shape, jobs))
    else:
        batches = [_scan_shape(job) for job in jobs]
    reports = [r for batch in batches for r in batch]
    if out is not None:
        for r in reports:
            out.write(r.to_json() + "\n")
    return reports


def summarize(reports: Iterable[ConjectureReport]) -> dict:
    reports = list(reports)
    small = [r for r in reports if r.k <= 2]
    violations = [r for r in reports if not r.holds]
    return {
        "instances": str(len(reports)),
        "holds": str(len(reports) - len(violations)),
        "violations": str(len(violations)),
        "k_le_2_instances": str(len(small)),
        "k_le_2_equalities": str(sum(r.equality for r in small)),
        "equalities_k_ge_3": str(sum(r.equality for r in reports if r.k >= 3)),
        "counterexamples": [r.to_dict() for r in violations],
    }
