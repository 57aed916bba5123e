"""Closed-form spanning-tree counts and the phi polynomial.

``tau_forest`` is the bipartite analogue of Moon's formula: for a spanning
forest of ``K_{m,n}`` whose components meet X in ``m_i`` and Y in ``n_i``
vertices, with ``W_i = m_i*n + n_i*m``,

    tau = (prod W_i - sum_i m_i*n_i * prod_{j != i} W_j) / (m*n)

and the division is always exact.  ``phi_eval`` is the same expression on
arbitrary rational pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

from .errors import (
    DivisibilityViolation,
    MatchingTooLarge,
    OrderSumMismatch,
    ProfileSumMismatch,
    ShapeOutOfRange,
    SingularPoint,
    ValidationError,
)
from .forest import ComponentProfile


@dataclass(frozen=True)
class PairVector:
    pairs: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pairs = tuple((Fraction(x), Fraction(y)) for x, y in self.pairs)
        if not pairs:
            raise ValidationError("phi needs at least one pair")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_flat(cls, values: Sequence) -> "PairVector":
        """Build from ``x1, y1, x2, y2, ...``."""
        if len(values) % 2:
            raise ValidationError(f"expected an even number of values, got {len(values)}")
        return cls(tuple(zip(values[0::2], values[1::2])))

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def X(self) -> Fraction:
        return sum((x for x, _ in self.pairs), Fraction(0))

    @property
    def Y(self) -> Fraction:
        return sum((y for _, y in self.pairs), Fraction(0))


def _products_except_each(values: list) -> list:
    """``out[i] = prod(values[j] for j != i)`` without division."""
    n = len(values)
    prefix = [1] * (n + 1)
    for i, v in enumerate(values):
        prefix[i + 1] = prefix[i] * v
    out = [1] * n
    suffix = 1
    for i in range(n - 1, -1, -1):
        out[i] = prefix[i] * suffix
        suffix *= values[i]
    return out


def _numerator(xs: list, ys: list, X, Y):
    """``prod W_i - sum x_i y_i prod_{j != i} W_j`` with ``W_i = x_i Y + y_i X``."""
    ws = [x * Y + y * X for x, y in zip(xs, ys)]
    rest = _products_except_each(ws)
    return prod(ws) - sum(x * y * r for x, y, r in zip(xs, ys, rest))


def _pairs_of(profile) -> list[tuple[int, int]]:
    comps = profile.components if isinstance(profile, ComponentProfile) else profile
    pairs = [tuple(int(c) for c in vec) for vec in comps]
    if not pairs:
        raise ProfileSumMismatch("empty profile")
    for vec in pairs:
        if len(vec) != 2 or min(vec) < 0 or sum(vec) < 1:
            raise ProfileSumMismatch(f"bad bipartite component {vec}")
    return pairs


def forest_numerator(m: int, n: int, profile) -> tuple[int, int]:
    """Return ``(N, m*n)`` where ``tau_forest = N / (m*n)``."""
    if m < 1 or n < 1:
        raise ProfileSumMismatch(f"part sizes must be positive, got m={m}, n={n}")
    pairs = _pairs_of(profile)
    sm = sum(a for a, _ in pairs)
    sn = sum(b for _, b in pairs)
    if (sm, sn) != (m, n):
        raise ProfileSumMismatch(f"profile sums ({sm}, {sn}) != ({m}, {n})")
    xs = [a for a, _ in pairs]
    ys = [b for _, b in pairs]
    return _numerator(xs, ys, m, n), m * n


def tau_forest(m: int, n: int, profile) -> int:
    """Spanning trees of ``K_{m,n}`` containing a forest with the given profile."""
    num, den = forest_numerator(m, n, profile)
    q, r = divmod(num, den)
    if r:
        raise DivisibilityViolation(f"{num} is not divisible by m*n={den}")
    return q


def phi_eval(v) -> Fraction:
    """Exact value of phi at the pairs ``(x_i, y_i)``.

    Accepts a PairVector or any sequence of pairs.  Raises SingularPoint when
    X, Y or some ``x_i*Y + y_i*X`` vanishes.
    """
    if not isinstance(v, PairVector):
        v = PairVector(tuple(v))
    X, Y = v.X, v.Y
    if X == 0:
        raise SingularPoint("X = sum x_i is zero", guard="X")
    if Y == 0:
        raise SingularPoint("Y = sum y_i is zero", guard="Y")
    xs = [x for x, _ in v.pairs]
    ys = [y for _, y in v.pairs]
    for i, (x, y) in enumerate(v.pairs):
        if x * Y + y * X == 0:
            raise SingularPoint(f"x_{i + 1}*Y + y_{i + 1}*X is zero", guard=f"W{i + 1}")
    return Fraction(_numerator(xs, ys, X, Y)) / (X * Y)


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise DivisibilityViolation(f"{what} evaluated to non-integer {value}")
    return value.numerator


def tau_moon(n: int, orders: Iterable[int]) -> int:
    """Moon's count ``n^(c-2) * prod(orders)`` for spanning forests of ``K_n``."""
    orders = [int(o) for o in orders]
    if not orders or min(orders) < 1 or sum(orders) != n:
        raise OrderSumMismatch(f"orders {orders} must be positive and sum to n={n}")
    return _as_int(Fraction(n) ** (len(orders) - 2) * prod(orders), "tau_moon")


def tau_matching(m: int, n: int, k: int) -> int:
    """Spanning trees of ``K_{m,n}`` through a fixed matching of size k."""
    if m < 1 or n < 1 or not 0 <= k <= min(m, n):
        raise MatchingTooLarge(f"matching size {k} invalid for K_{{{m},{n}}}")
    value = (
        Fraction(m + n) ** (k - 1)
        * (m + n - k)
        * Fraction(m) ** (n - k - 1)
        * Fraction(n) ** (m - k - 1)
    )
    return _as_int(value, "tau_matching")


def tau_tree(m: int, n: int, s: int, t: int) -> int:
    """Spanning trees of ``K_{m,n}`` through a fixed tree meeting X in s and Y in t vertices."""
    if m < 1 or n < 1 or not (1 <= s <= m and 1 <= t <= n):
        raise ShapeOutOfRange(f"tree shape (s={s}, t={t}) invalid for K_{{{m},{n}}}")
    value = (s * n + t * m - s * t) * Fraction(m) ** (n - t - 1) * Fraction(n) ** (m - s - 1)
    return _as_int(value, "tau_tree")
