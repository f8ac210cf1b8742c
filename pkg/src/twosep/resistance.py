"""Resistance distance with unit resistors.

The exact route is ``r(u, v) = F(u, v) / T``; the separator formulas below
work from side resistances only and must reproduce it exactly.  The
pseudoinverse value is a floating diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .forests import count_2forests_det, count_trees_det
from .graph import GraphError, MultiGraph, TwoSeparation, connected, identify, laplacian
from .linalg import decimal_string
from .separation import CutSplit


@dataclass(frozen=True)
class ResistanceResult:
    value: Fraction
    method: str
    digits: int = 12

    @property
    def float_value(self) -> str:
        return decimal_string(self.value, self.digits)


def resistance(g: MultiGraph, u: int, v: int) -> Fraction:
    if not connected(g):
        raise GraphError("resistance is undefined on a disconnected graph")
    if u == v:
        raise GraphError("u and v must differ")
    return Fraction(count_2forests_det(g, u, v), count_trees_det(g))


def _r(g: MultiGraph, u: int, v: int) -> Fraction:
    return Fraction(0) if u == v else resistance(g, u, v)


def resistance_cut_vertex(cs: CutSplit, u: int, v: int) -> Fraction:
    """Resistance through cut vertex ``w``: sides add in series.

    Pairs on one side only see that side.
    """
    m1, m2, w = cs.map1, cs.map2, cs.w
    if u in m1 and v in m1:
        return _r(cs.g1, m1[u], m1[v])
    if u in m2 and v in m2:
        return _r(cs.g2, m2[u], m2[v])
    if u in m2:
        u, v = v, u
    return _r(cs.g1, m1[u], m1[w]) + _r(cs.g2, m2[v], m2[w])


def resistance_identified(g: MultiGraph, i: int, j: int, u: int, v: int) -> Fraction:
    """``r`` in ``G/ij`` between the images of ``u`` and ``v``, from resistances in ``G``.

    Coincident labels contribute ``r(x, x) = 0``.
    """
    if i == j:
        raise GraphError("cannot identify a vertex with itself")
    r = lambda a, b: _r(g, a, b)  # noqa: E731
    rij = r(i, j)
    assert rij > 0
    cross = r(u, i) + r(v, j) - r(u, j) - r(v, i)
    return r(u, v) - cross * cross / (4 * rij)


def resistance_identified_direct(g: MultiGraph, i: int, j: int, u: int, v: int) -> Fraction:
    """Same quantity computed on the merged graph itself."""
    merged, vmap = identify(g, i, j)
    return _r(merged, vmap[u], vmap[v])


def resistance_same_side(sep: TwoSeparation, u: int, v: int) -> Fraction:
    if u in sep.map1 and v in sep.map1:
        side, other = 1, 2
    elif u in sep.map2 and v in sep.map2:
        side, other = 2, 1
    else:
        raise GraphError(f"vertices {u} and {v} are not on a common side of {{{sep.i}, {sep.j}}}")
    smap, omap = sep.side_map(side), sep.side_map(other)
    gs, go = sep.side_graph(side), sep.side_graph(other)
    i, j = sep.i, sep.j
    r = lambda a, b: _r(gs, smap[a], smap[b])  # noqa: E731
    denom = 4 * (r(i, j) + _r(go, omap[i], omap[j]))
    cross = r(u, i) + r(v, j) - r(u, j) - r(v, i)
    return r(u, v) - cross * cross / denom


def resistance_cross(sep: TwoSeparation, u: int, v: int) -> Fraction:
    if sep.side(u) == 2 and sep.side(v) == 1:
        u, v = v, u
    if sep.side(u) != 1 or sep.side(v) != 2:
        raise GraphError(
            f"cross-side query needs u, v off the separator on opposite sides; got {u}, {v}"
        )
    i, j = sep.i, sep.j
    m1, m2 = sep.map1, sep.map2
    g1ij, v1 = identify(sep.g1, m1[i], m1[j])
    g2ij, v2 = identify(sep.g2, m2[i], m2[j])
    r1 = lambda a, b: _r(sep.g1, m1[a], m1[b])  # noqa: E731
    r2 = lambda a, b: _r(sep.g2, m2[a], m2[b])  # noqa: E731
    r1ij, r2ij = r1(i, j), r2(i, j)
    half = Fraction(1, 2)
    num = (
        _r(g1ij, v1[m1[u]], v1[m1[i]]) * r1ij
        + _r(g2ij, v2[m2[v]], v2[m2[i]]) * r2ij
        + half * r1(u, i) * r2(v, j)
        + half * r1(u, j) * r2(v, i)
        - half * r1(u, i) * r2(v, i)
        - half * r1(u, j) * r2(v, j)
        + half * (r1(u, i) + r1(u, j)) * r2ij
        + half * r1ij * (r2(v, i) + r2(v, j))
        - half * r1ij * r2ij
    )
    return num / (r1ij + r2ij)


def resistance_pinv(g: MultiGraph, u: int, v: int) -> float:
    """``(e_u - e_v)^T L^+ (e_u - e_v)`` in floating point."""
    if not connected(g):
        raise GraphError("resistance is undefined on a disconnected graph")
    L = np.array(laplacian(g), dtype=float)
    Lp = np.linalg.pinv(L, hermitian=True)
    a, b = u - 1, v - 1
    return float(Lp[a, a] + Lp[b, b] - 2 * Lp[a, b])
