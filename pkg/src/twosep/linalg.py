"""Exact integer determinants and rational helpers."""

from __future__ import annotations

import contextlib
import contextvars
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

IntMatrix = list[list[int]]
Ratio = Fraction


class MulCounter:
    """Tally of big-integer multiplications, for benchmarking."""

    def __init__(self) -> None:
        self.det = 0
        self.combine = 0

    @property
    def total(self) -> int:
        return self.det + self.combine


_counter: contextvars.ContextVar[MulCounter | None] = contextvars.ContextVar(
    "twosep_mul_counter", default=None
)


@contextlib.contextmanager
def counting_multiplications() -> Iterator[MulCounter]:
    c = MulCounter()
    token = _counter.set(c)
    try:
        yield c
    finally:
        _counter.reset(token)


def note_multiplications(k: int) -> None:
    """Record ``k`` multiplications done outside determinants."""
    c = _counter.get()
    if c is not None:
        c.combine += k


def det_exact(M: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination.

    Every division is exact, so intermediate entries stay integers bounded
    by minors of ``M``.  ``det([]) == 1``.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    muls = 0
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            if aik == 0:
                if akk != prev:
                    for j in range(k + 1, n):
                        rowi[j] = rowi[j] * akk // prev
                    muls += n - k - 1
            else:
                for j in range(k + 1, n):
                    rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
                muls += 2 * (n - k - 1)
            rowi[k] = 0
        prev = akk
    c = _counter.get()
    if c is not None:
        c.det += muls
    return sign * a[n - 1][n - 1]


def minor(M: Sequence[Sequence[int]], rows: Iterable[int], cols: Iterable[int]) -> IntMatrix:
    """Delete the given 1-indexed rows and columns."""
    n = len(M)
    drop_r, drop_c = set(rows), set(cols)
    for x in drop_r | drop_c:
        if not 1 <= x <= n:
            raise IndexError(f"index {x} out of range 1..{n}")
    keep_c = [c for c in range(n) if c + 1 not in drop_c]
    return [[M[r][c] for c in keep_c] for r in range(n) if r + 1 not in drop_r]


def ratio(num: int, den: int = 1) -> Ratio:
    """Reduced rational with the sign on the numerator."""
    if den == 0:
        raise ZeroDivisionError("ratio with zero denominator")
    return Fraction(num, den)


def decimal_string(x: Fraction | int, digits: int = 12) -> str:
    """Round half-even to ``digits`` fractional digits; trailing zeros trimmed."""
    x = Fraction(x)
    scaled = round(x * 10**digits)  # Fraction.__round__ is half-even
    neg = scaled < 0
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    text = str(whole)
    if digits:
        tail = str(frac).rjust(digits, "0").rstrip("0")
        if tail:
            text += "." + tail
    return ("-" if neg and scaled else "") + text
