from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import k3
from twosep.forests import enumerate_trees
from twosep.graph import laplacian
from twosep.linalg import counting_multiplications, decimal_string, det_exact, minor, ratio


def cofactor_det(M):
    n = len(M)
    if n == 0:
        return 1
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = -1 if inversions % 2 else 1
        for r, c in enumerate(perm):
            term *= M[r][c]
        total += term
    return total


square = st.integers(0, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n
    )
)


def test_det_examples():
    assert det_exact([[2, -1], [-1, 2]]) == 3
    assert det_exact(minor(laplacian(k3()), [1], [1])) == enumerate_trees(k3()) == 3
    assert det_exact([]) == 1


def test_det_needs_pivoting():
    assert det_exact([[0, 1], [1, 0]]) == -1
    assert det_exact([[0, 0], [1, 0]]) == 0


def test_det_rejects_ragged():
    with pytest.raises(ValueError):
        det_exact([[1, 2], [3]])


@given(square)
def test_det_matches_cofactor_expansion(M):
    assert det_exact(M) == cofactor_det(M)


def test_minor_examples():
    M = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
    assert minor(M, [1], [1]) == [[5, 6], [8, 9]]
    assert minor(laplacian(k3()), [1, 2], [1, 2]) == [[2]]
    assert minor(M, [], []) == M
    with pytest.raises(IndexError):
        minor(M, [4], [4])


def test_ratio_examples():
    assert ratio(2, 3) + ratio(1, 3) == ratio(1, 1)
    r = ratio(4, -6)
    assert (r.numerator, r.denominator) == (-2, 3)
    assert ratio(14, 9) * ratio(144) == 224
    with pytest.raises(ZeroDivisionError):
        ratio(1, 0)
    with pytest.raises(ZeroDivisionError):
        ratio(1, 2) / ratio(0, 5)


fractions = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**6))


@given(fractions, fractions, fractions)
def test_ratio_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize(
    "x, digits, text",
    [
        (Fraction(81, 144), 12, "0.5625"),
        (Fraction(2, 3), 12, "0.666666666667"),
        (Fraction(1, 8), 2, "0.12"),  # half-even
        (Fraction(3, 8), 2, "0.38"),
        (Fraction(-10, 9), 3, "-1.111"),
        (Fraction(7), 12, "7"),
    ],
)
def test_decimal_string(x, digits, text):
    assert decimal_string(x, digits) == text


def test_multiplication_counter():
    with counting_multiplications() as c:
        det_exact([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert c.det > 0 and c.combine == 0
