"""Exact checks of the algebraic identities behind the closed form.

Every identity is evaluated on both sides literally, at random rational
points, by iterating over all non-empty index subsets where a sum over
subsets appears.  Sides are compared exactly; nothing is simplified.

Identity tags and the quantities they compare (``S`` is the index set,
``A = sum a``, ``B = sum b``, ``W_i = a_i*B + b_i*A``):

    L21       (1 - sum a_i b_i / W_i)^2  vs  (sum a_i^2 / W_i)(sum b_i^2 / W_i)
    L22       sum_I prod_I a prod_{S-I} b  vs  prod(a+b) - prod b
    L23       sum_I (sum_I c) prod_I a prod_{S-I} b  vs  prod(a+b) sum c_i a_i/(a_i+b_i)
    L23X      L23 with an extra scalar c added to the inner sum
    L24       sum_I (sum_{S-I} d) prod_I a prod_{S-I} b
    L25       sum over proper I of (sum_I c)(sum_{S-I} d) prod_I a prod_{S-I} b
    L25X      L25 over all non-empty I with an extra scalar c
    T31       phi(x, y) vs the signed recursion merging vertex 1 with I
    R63       phi(x, y) vs the unsigned recursion merging I alone
    XYCANCEL  the monomials of the phi numerator not divisible by XY, vs 0
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import GuardViolated, SamplingExhausted, ValidationError

IDS = ("L21", "L22", "L23", "L23X", "L24", "L25", "L25X", "T31", "R63", "XYCANCEL")

_VECTORS = {
    "L21": "ab",
    "L22": "ab",
    "L23": "abc",
    "L23X": "abc",
    "L24": "abd",
    "L25": "abcd",
    "L25X": "abcd",
    "T31": "xy",
    "R63": "xy",
    "XYCANCEL": "xy",
}
_HAS_SCALAR = {"L23X", "L25X"}
_MIN_SIZE = {"T31": 2, "R63": 2}
SIZE_CAP = 10
MAX_REJECTIONS = 10_000


@dataclass(frozen=True)
class IdentityPoint:
    id: str
    vectors: dict
    c: Fraction | None = None

    @property
    def size(self) -> int:
        return len(next(iter(self.vectors.values())))

    def to_dict(self) -> dict:
        out = {"id": self.id}
        out.update({name: [str(v) for v in vec] for name, vec in self.vectors.items()})
        if self.c is not None:
            out["c"] = str(self.c)
        return out


def make_point(id: str, scalar=None, **vectors) -> IdentityPoint:
    """Convenience constructor: ``make_point("L23X", scalar=2, a=[1], b=[1], c=[3])``."""
    _check_id(id)
    names = _VECTORS[id]
    if set(vectors) != set(names):
        raise ValidationError(f"{id} needs vectors {sorted(names)}, got {sorted(vectors)}")
    vecs = {name: tuple(Fraction(v) for v in vectors[name]) for name in names}
    if len({len(v) for v in vecs.values()}) != 1:
        raise ValidationError("vector lengths disagree")
    if (id in _HAS_SCALAR) != (scalar is not None):
        raise ValidationError(f"{id} {'needs' if id in _HAS_SCALAR else 'takes no'} scalar")
    return IdentityPoint(id, vecs, None if scalar is None else Fraction(scalar))


def _check_id(id: str) -> None:
    if id not in IDS:
        raise ValidationError(f"unknown identity {id!r}; expected one of {', '.join(IDS)}")


def _nonempty_subsets(indices: Sequence[int], proper: bool = False) -> Iterator[tuple]:
    top = len(indices) - 1 if proper else len(indices)
    for r in range(1, top + 1):
        yield from combinations(indices, r)


def _literal_phi(pairs: Sequence[tuple]) -> Fraction:
    X = sum(x for x, _ in pairs)
    Y = sum(y for _, y in pairs)
    ws = [x * Y + y * X for x, y in pairs]
    bracket = 1 - sum(Fraction(x * y) / w for (x, y), w in zip(pairs, ws))
    return Fraction(prod(ws)) * bracket / (X * Y)


# guards ----------------------------------------------------------------------


def _nonzero(value, guard: str) -> None:
    if value == 0:
        raise GuardViolated(f"guard {guard} is zero", guard=guard)


def check_guards(p: IdentityPoint) -> None:
    """Raise GuardViolated naming the first denominator that vanishes."""
    v = p.vectors
    n = p.size
    if n > SIZE_CAP:
        raise ValidationError(f"size {n} exceeds cap {SIZE_CAP}")
    if n < _MIN_SIZE.get(p.id, 1):
        raise GuardViolated(f"{p.id} needs size >= {_MIN_SIZE[p.id]}", guard="k")
    if p.id == "L21":
        A, B = sum(v["a"]), sum(v["b"])
        for i in range(n):
            _nonzero(v["a"][i] * B + v["b"][i] * A, f"a_{i + 1}B+b_{i + 1}A")
    elif p.id.startswith("L") and p.id != "L22":
        for i in range(n):
            _nonzero(v["a"][i] + v["b"][i], f"a_{i + 1}+b_{i + 1}")
    elif p.id in ("T31", "R63"):
        x, y = v["x"], v["y"]
        X, Y = sum(x), sum(y)
        Xp, Yp = X - x[0], Y - y[0]
        _nonzero(X, "X")
        _nonzero(Y, "Y")
        _nonzero(Xp, "X'")
        _nonzero(Yp, "Y'")
        for i in range(n):
            _nonzero(x[i] * Y + y[i] * X, f"W_{i + 1}")
        for I in _nonempty_subsets(range(1, n)):
            xs = sum(x[i] for i in I)
            ys = sum(y[i] for i in I)
            if p.id == "T31":
                _nonzero((x[0] + xs) * Y + (y[0] + ys) * X, f"W_I{_label(I)}")
            else:
                _nonzero(xs * Yp + ys * Xp, f"W'_I{_label(I)}")
        if p.id == "R63":
            for i in range(1, n):
                _nonzero(x[i] * Yp + y[i] * Xp, f"W'_{i + 1}")


def _label(I: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in I) + "}"


# evaluation ------------------------------------------------------------------


def _subset_terms(a, b, S, I):
    rest = [r for r in S if r not in I]
    return prod(a[j] for j in I) * prod(b[r] for r in rest), rest


def _eval_l21(v, c):
    a, b = v["a"], v["b"]
    A, B = sum(a), sum(b)
    W = [ai * B + bi * A for ai, bi in zip(a, b)]
    lhs = (1 - sum(Fraction(ai * bi) / w for ai, bi, w in zip(a, b, W))) ** 2
    rhs = sum(Fraction(ai * ai) / w for ai, w in zip(a, W)) * sum(
        Fraction(bi * bi) / w for bi, w in zip(b, W)
    )
    return lhs, rhs


def _eval_l22(v, c):
    a, b = v["a"], v["b"]
    S = range(len(a))
    lhs = sum(_subset_terms(a, b, S, I)[0] for I in _nonempty_subsets(S))
    rhs = prod(ai + bi for ai, bi in zip(a, b)) - prod(b)
    return lhs, rhs


def _eval_l23(v, c):
    a, b, cc = v["a"], v["b"], v["c"]
    S = range(len(a))
    scalar = c if c is not None else 0
    lhs = 0
    for I in _nonempty_subsets(S):
        term, _ = _subset_terms(a, b, S, I)
        lhs += (scalar + sum(cc[i] for i in I)) * term
    P = prod(ai + bi for ai, bi in zip(a, b))
    inner = sum(Fraction(ci * ai) / (ai + bi) for ai, bi, ci in zip(a, b, cc))
    rhs = P * (scalar + inner) - scalar * prod(b)
    return lhs, rhs


def _eval_l24(v, c):
    a, b, d = v["a"], v["b"], v["d"]
    S = range(len(a))
    lhs = 0
    for I in _nonempty_subsets(S):
        term, rest = _subset_terms(a, b, S, I)
        lhs += sum(d[i] for i in rest) * term
    P = prod(ai + bi for ai, bi in zip(a, b))
    rhs = P * sum(Fraction(di * bi) / (ai + bi) for ai, bi, di in zip(a, b, d)) - prod(b) * sum(d)
    return lhs, rhs


def _eval_l25(v, c):
    a, b, cc, d = v["a"], v["b"], v["c"], v["d"]
    S = range(len(a))
    extended = c is not None
    lhs = 0
    for I in _nonempty_subsets(S, proper=not extended):
        term, rest = _subset_terms(a, b, S, I)
        left = sum(cc[i] for i in I) + (c if extended else 0)
        lhs += left * sum(d[q] for q in rest) * term
    P = prod(ai + bi for ai, bi in zip(a, b))
    cross = sum(
        Fraction(cc[i] * a[i] * d[j] * b[j]) / ((a[i] + b[i]) * (a[j] + b[j]))
        for i in S
        for j in S
        if i != j
    )
    if not extended:
        return lhs, P * cross
    db = sum(Fraction(d[i] * b[i]) / (a[i] + b[i]) for i in S)
    rhs = P * (cross + c * db) - c * prod(b) * sum(d)
    return lhs, rhs


def _phi_recursion(x, y, signed: bool) -> Fraction:
    k = len(x)
    total = Fraction(0)
    for I in _nonempty_subsets(range(1, k)):
        factor = prod(x[0] * y[j] + x[j] * y[0] for j in I)
        if signed:
            head = (x[0] + sum(x[i] for i in I), y[0] + sum(y[i] for i in I))
        else:
            head = (sum(x[i] for i in I), sum(y[i] for i in I))
        rest = [(x[s], y[s]) for s in range(1, k) if s not in I]
        term = factor * _literal_phi([head, *rest])
        total += -term if signed and len(I) % 2 == 0 else term
    return total


def _eval_t31(v, c):
    x, y = v["x"], v["y"]
    return _literal_phi(list(zip(x, y))), _phi_recursion(x, y, signed=True)


def _eval_r63(v, c):
    x, y = v["x"], v["y"]
    return _literal_phi(list(zip(x, y))), _phi_recursion(x, y, signed=False)


def _eval_xycancel(v, c):
    x, y = v["x"], v["y"]
    k = len(x)
    X, Y = sum(x), sum(y)
    px, py = prod(x), prod(y)
    lhs = (
        Y**k * px
        + X**k * py
        - sum(yi * Y ** (k - 1) * px for yi in y)
        - sum(xi * X ** (k - 1) * py for xi in x)
    )
    return Fraction(lhs), Fraction(0)


_EVALUATORS = {
    "L21": _eval_l21,
    "L22": _eval_l22,
    "L23": _eval_l23,
    "L23X": _eval_l23,
    "L24": _eval_l24,
    "L25": _eval_l25,
    "L25X": _eval_l25,
    "T31": _eval_t31,
    "R63": _eval_r63,
    "XYCANCEL": _eval_xycancel,
}


def evaluate_identity(id: str, p: IdentityPoint) -> tuple[Fraction, Fraction]:
    """Both sides of identity ``id`` at ``p``; equality is left to the caller."""
    _check_id(id)
    if p.id != id:
        raise ValidationError(f"point was built for {p.id}, not {id}")
    check_guards(p)
    lhs, rhs = _EVALUATORS[id](p.vectors, p.c)
    return Fraction(lhs), Fraction(rhs)


# sampling --------------------------------------------------------------------


def _rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-20, 20), rng.randint(1, 10))


def sample_point(id: str, size: int, seed: int) -> IdentityPoint:
    """Random guarded point; numerators in [-20, 20], denominators in [1, 10]."""
    _check_id(id)
    if not _MIN_SIZE.get(id, 1) <= size <= SIZE_CAP:
        raise ValidationError(f"size {size} out of range for {id}")
    rng = random.Random(seed)
    for _ in range(MAX_REJECTIONS):
        vecs = {name: tuple(_rational(rng) for _ in range(size)) for name in _VECTORS[id]}
        c = _rational(rng) if id in _HAS_SCALAR else None
        point = IdentityPoint(id, vecs, c)
        try:
            check_guards(point)
        except GuardViolated:
            continue
        return point
    raise SamplingExhausted(f"no guarded point for {id} size {size} after {MAX_REJECTIONS} draws")


def sample_degenerate_l21(zero_side: str, size: int, seed: int) -> IdentityPoint:
    """L21 point whose ``a`` sum (zero_side="A") or ``b`` sum ("B") is exactly 0."""
    if zero_side not in ("A", "B"):
        raise ValidationError("zero_side must be 'A' or 'B'")
    if size < 2:
        raise ValidationError("a zero sum with nonzero guards needs size >= 2")
    rng = random.Random(seed)
    for _ in range(MAX_REJECTIONS):
        zero = [_rational(rng) for _ in range(size - 1)]
        zero.append(-sum(zero))
        other = [_rational(rng) for _ in range(size)]
        a, b = (zero, other) if zero_side == "A" else (other, zero)
        point = IdentityPoint("L21", {"a": tuple(a), "b": tuple(b)})
        try:
            check_guards(point)
        except GuardViolated:
            continue
        return point
    raise SamplingExhausted(f"no degenerate L21 point with {zero_side}=0")


def derive_seed(seed: int, *parts) -> int:
    digest = hashlib.sha256(":".join(map(str, (seed, *parts))).encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class SuiteReport:
    id: str
    passed: int = 0
    failed: int = 0
    counterexamples: list = field(default_factory=list)
    skipped_sizes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "pass": self.passed,
            "fail": self.failed,
            "counterexamples": self.counterexamples,
        }
        if self.skipped_sizes:
            out["skipped_sizes"] = self.skipped_sizes
        return out


def run_suite(id: str, sizes: Iterable[int], trials: int, seed: int) -> SuiteReport:
    """Sample ``trials`` points per size and record exact lhs == rhs.

    Sizes below an identity's minimum (k >= 2 for T31 and R63) are skipped
    and listed in the report.
    """
    _check_id(id)
    sizes = list(sizes)
    for size in sizes:
        if size > SIZE_CAP:
            raise ValidationError(f"size {size} exceeds cap {SIZE_CAP}")
    report = SuiteReport(id)
    for size in sizes:
        if size < _MIN_SIZE.get(id, 1):
            report.skipped_sizes.append(size)
            continue
        for trial in range(trials):
            point = sample_point(id, size, derive_seed(seed, id, size, trial))
            lhs, rhs = evaluate_identity(id, point)
            if lhs == rhs:
                report.passed += 1
            else:
                report.failed += 1
                report.counterexamples.append(
                    {"point": point.to_dict(), "lhs": str(lhs), "rhs": str(rhs)}
                )
    return report
