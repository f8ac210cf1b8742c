"""Linear 2-trees, Sierpinski triangles, and their closed forms.

Fibonacci numbers use ``F(0) = 0, F(1) = 1`` extended to negative indices by
the recurrence (``F(-1) = 1, F(-2) = -1``); Lucas numbers use
``L(0) = 2, L(1) = 1``.  Labels: the straight 2-tree ``H_n`` has edges
``{i, i+1}`` and ``{i, i+2}``; the bent tree moves ``{k+1, k+3}`` to
``{k, k+3}``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .forests import ConsistencyError
from .graph import GraphError, MultiGraph, build


class FibCache:
    """Append-only memo of Fibonacci and Lucas numbers."""

    def __init__(self) -> None:
        self._fib = [0, 1]
        self._lock = threading.Lock()

    def _grow(self, p: int) -> None:
        with self._lock:
            fib = self._fib
            while len(fib) <= p:
                fib.append(fib[-1] + fib[-2])

    def fib(self, p: int) -> int:
        if p < 0:
            q = -p
            return self.fib(q) if q % 2 else -self.fib(q)
        if p >= len(self._fib):
            self._grow(p)
        return self._fib[p]

    def lucas(self, q: int) -> int:
        return self.fib(q - 1) + self.fib(q + 1)


_cache = FibCache()
fib = _cache.fib
lucas = _cache.lucas


# -- generators -----------------------------------------------------------------


def gen_straight(n: int) -> MultiGraph:
    if n < 3:
        raise GraphError(f"straight 2-tree needs n >= 3, got {n}")
    edges = [(i, i + 1) for i in range(1, n)] + [(i, i + 2) for i in range(1, n - 1)]
    return build(n, edges)


def bent_k_range(n: int) -> range:
    """Bends where both ``{k, k+3}`` and ``{k+1, k+3}`` exist."""
    return range(1, n - 2)


def golden_k_range(n: int) -> range:
    """Bends covered by the Fibonacci closed forms without negative indices."""
    return range(3, n - 2)


def gen_bent(n: int, k: int) -> MultiGraph:
    if n < 4:
        raise GraphError(f"bent 2-tree needs n >= 4, got {n}")
    if k not in bent_k_range(n):
        raise GraphError(f"bend k={k} out of range 1..{n - 3} for n={n}")
    h = gen_straight(n)
    edges = dict(h.edges)
    del edges[(k + 1, k + 3)]
    edges[(k, k + 3)] = edges.get((k, k + 3), 0) + 1
    return MultiGraph(n, edges)


def sierpinski_order(n: int) -> int:
    return 3 * (3**n + 1) // 2


def gen_sierpinski(n: int) -> MultiGraph:
    """Stage-``n`` Sierpinski triangle; corners ``a, b, c`` are labels 1, 2, 3.

    Remaining vertices are numbered level by level: at each subdivision
    depth the sub-triangles are visited in (top, bottom-left,
    bottom-right) order, each contributing its unseen corners in
    (a, b, c) order.
    """
    if n < 0:
        raise GraphError(f"stage must be >= 0, got {n}")
    side = 2**n
    # skew lattice coordinates: a=(0,0), b=(side,0), c=(0,side)
    labels: dict[tuple[int, int], int] = {}

    def name(p: tuple[int, int]) -> None:
        if p not in labels:
            labels[p] = len(labels) + 1

    level = [((0, 0), side)]  # (bottom-left corner, side length)
    for p in ((0, 0), (side, 0), (0, side)):
        name(p)
    edges = []
    for depth in range(n + 1):
        nxt = []
        for (x, y), s in level:
            corners = ((x, y), (x + s, y), (x, y + s))
            for p in corners:
                name(p)
            if depth == n:
                a, b, c = (labels[p] for p in corners)
                edges += [(a, b), (b, c), (a, c)]
            else:
                h = s // 2
                nxt += [((x, y + h), h), ((x, y), h), ((x + h, y), h)]
        level = nxt
    return build(len(labels), edges)


SIERPINSKI_CORNERS = (1, 2, 3)


# -- closed forms: straight 2-tree ------------------------------------------------------


def straight_trees(n: int) -> int:
    return fib(2 * n - 2)


def straight_resistance_closed(j: int, k: int, n: int) -> Fraction:
    """``r(j, j + k)`` in ``H_n`` from the Fibonacci/Lucas closed form."""
    if not (1 <= j and k >= 1 and j + k <= n):
        raise GraphError(f"need 1 <= j < j+k <= n, got j={j}, k={k}, n={n}")
    F, L = fib, lucas
    m = n - 2
    first = F(m + 1) ** 2 + F(k) ** 2 * F(m - 2 * j - k + 3) ** 2
    bracket = F(m - k) * (k * L(k) - F(k)) + F(m - k + 1) * ((k - 5) * F(k + 1) + (2 * k + 2) * F(k))
    return (first + Fraction(F(m + 1), 5) * bracket) / F(2 * m + 2)


def _order(u: int, v: int, n: int) -> tuple[int, int]:
    if u > v:
        u, v = v, u
    if not (1 <= u < v <= n):
        raise GraphError(f"need distinct vertices in 1..{n}, got {u}, {v}")
    return u, v


def straight_forest_closed(u: int, v: int, n: int) -> int:
    F, L = fib, lucas
    u, v = _order(u, v, n)
    d = v - u
    value = F(n - 1) ** 2 + F(d) ** 2 * F(n - u - v + 1) ** 2 + Fraction(F(n - 1), 5) * (
        F(n + u - v - 2) * (d * L(d) - F(d))
        + F(n + u - v - 1) * ((d - 5) * F(d + 1) + 2 * (d + 1) * F(d))
    )
    if value.denominator != 1:
        raise ConsistencyError(f"closed-form 2-forest count for ({u},{v}) in H_{n} is {value}")
    return int(value)


def straight_forest_sum(u: int, v: int, n: int) -> int:
    F = fib
    u, v = _order(u, v, n)
    return sum(
        (F(i) * F(i + 2 * u - 2) - F(i - 1) * F(i + 2 * u - 3)) * F(2 * n - 2 * i - 2 * u + 1)
        for i in range(1, v - u + 1)
    )


# -- closed forms: bent 2-tree ----------------------------------------------------------


def _sign(p: int) -> int:
    # (-1)**p stays an integer for negative p
    return -1 if p % 2 else 1


def bend_deficit(u: int, v: int, n: int, k: int) -> int:
    """How many fewer separating 2-forests the bend leaves for a cross-bend pair."""
    F = fib
    left = F(k - 2) * F(k + 1) + 2 * _sign(k - u) * F(u - 1) ** 2
    right = F(n - k - 2) * F(n - k + 1) + 2 * _sign(v - k - 1) * F(n - v) ** 2
    return left * right


def is_cross_bend(u: int, v: int, k: int) -> bool:
    u, v = min(u, v), max(u, v)
    return u <= k + 1 < v


def bent_forest(u: int, v: int, n: int, k: int) -> int:
    """``F(u, v)`` in the bent 2-tree; pairs on one side of the bend match ``H_n``."""
    u, v = _order(u, v, n)
    if k not in bent_k_range(n):
        raise GraphError(f"bend k={k} out of range 1..{n - 3} for n={n}")
    base = straight_forest_closed(u, v, n)
    if not is_cross_bend(u, v, k):
        return base
    return base - bend_deficit(u, v, n, k)


def bent_resistance(u: int, v: int, n: int, k: int) -> Fraction:
    return Fraction(bent_forest(u, v, n, k), straight_trees(n))


def bent_end_resistance(n: int, k: int) -> Fraction:
    """``r(1, n)`` in the bent 2-tree, via the straight end-to-end value."""
    if n < 4 or k not in bent_k_range(n):
        raise GraphError(f"bend k={k} out of range for n={n}")
    F, L = fib, lucas
    return (
        Fraction(n - 1, 5)
        + Fraction(4 * F(n - 1), 5 * L(n - 1))
        - Fraction(F(k - 2) * F(k + 1) * F(n - k - 2) * F(n - k + 1), F(2 * n - 2))
    )


# -- closed forms: Sierpinski ----------------------------------------------------------------


def _prime_power_product(e2: int, e3: int, e5: int) -> int:
    return 2**e2 * 3**e3 * 5**e5


def sierpinski_trees(n: int) -> int:
    if n < 0:
        raise GraphError("stage must be >= 0")
    p = 3**n
    return _prime_power_product((p - 1) // 2, (3 * p + 2 * n + 1) // 4, (p - 2 * n - 1) // 4)


def sierpinski_corner_forests(n: int) -> int:
    if n < 0:
        raise GraphError("stage must be >= 0")
    p = 3**n
    return _prime_power_product((p + 1) // 2, (3 * p - 2 * n - 3) // 4, (p + 2 * n - 1) // 4)


def sierpinski_corner_resistance(n: int) -> Fraction:
    if n < 0:
        raise GraphError("stage must be >= 0")
    return Fraction(2, 3) * Fraction(5, 3) ** n


# -- declarative instances -----------------------------------------------------------------------


FAMILIES = ("straight", "bent", "sierpinski")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    k: int | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise GraphError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family == "bent" and self.k is None:
            raise GraphError("bent family needs k")

    def graph(self) -> MultiGraph:
        if self.family == "straight":
            return gen_straight(self.n)
        if self.family == "bent":
            return gen_bent(self.n, self.k)
        return gen_sierpinski(self.n)

    def describe(self) -> str:
        if self.family == "bent":
            return f"bent(n={self.n},k={self.k})"
        return f"{self.family}(n={self.n})"
