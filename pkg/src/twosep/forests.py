"""Spanning-tree and spanning 2-forest counts.

Determinant route: ``T(G) = det L(j)`` and ``F(u, v) = det L(u, v)``.
Enumeration route: literal subset enumeration over edge instances, kept as
an independent oracle for the determinant code.
"""

from __future__ import annotations

from .graph import GraphError, MultiGraph, laplacian
from .linalg import det_exact, minor

DEFAULT_ENUMERATION_CAP = 24


class ConsistencyError(ArithmeticError):
    """An identity that must hold exactly did not; signals a counting bug."""


class EnumerationCapError(ValueError):
    pass


def _check_vertex(g: MultiGraph, *vs: int) -> None:
    for x in vs:
        if not 1 <= x <= g.n:
            raise GraphError(f"vertex {x} out of range 1..{g.n}")


def count_trees_det(g: MultiGraph) -> int:
    if g.n == 0:
        return 0
    return det_exact(minor(laplacian(g), [g.n], [g.n]))


def count_2forests_det(g: MultiGraph, u: int, v: int) -> int:
    """Spanning 2-forests with ``u`` and ``v`` in different components."""
    _check_vertex(g, u, v)
    if u == v:
        raise GraphError("a 2-forest cannot separate a vertex from itself")
    return det_exact(minor(laplacian(g), [u, v], [u, v]))


def pair_from_forests(f_vu: int, f_wu: int, f_vw: int) -> int:
    """2-forests with ``v, w`` together and ``u`` apart, from plain counts."""
    num = f_vu + f_wu - f_vw
    if num % 2:
        raise ConsistencyError(
            f"F(v,u) + F(w,u) - F(v,w) = {num} is odd; 2-forest counts are inconsistent"
        )
    return num // 2


def count_2forests_pair(g: MultiGraph, u: int, v: int, w: int) -> int:
    """2-forests separating ``u`` from the pair ``{v, w}``."""
    if len({u, v, w}) != 3:
        raise GraphError("u, v, w must be pairwise distinct")
    return pair_from_forests(
        count_2forests_det(g, v, u), count_2forests_det(g, w, u), count_2forests_det(g, v, w)
    )


# -- enumeration oracle -------------------------------------------------------


class _UnionFind:
    """Union-find with undo; no path compression so unions can be rolled back."""

    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)
        self.history: list[int] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        self.history.append(b)
        return True

    def undo(self) -> None:
        b = self.history.pop()
        a = self.parent[b]
        self.size[a] -= self.size[b]
        self.parent[b] = b


def _acyclic_subsets(g: MultiGraph, size: int, cap: int, forbid: tuple[int, int] | None = None):
    """Yield a union-find state for each acyclic ``size``-subset of edge instances.

    When ``forbid`` is given, subsets joining those two vertices are pruned.
    """
    edges = g.edge_instances()
    if len(edges) > cap:
        raise EnumerationCapError(
            f"graph has {len(edges)} edge instances, enumeration cap is {cap}"
        )
    uf = _UnionFind(g.n)
    m = len(edges)

    def rec(start: int, need: int):
        if need == 0:
            yield uf
            return
        for idx in range(start, m - need + 1):
            a, b = edges[idx]
            if not uf.union(a, b):
                continue
            if forbid is not None and uf.find(forbid[0]) == uf.find(forbid[1]):
                uf.undo()
                continue
            yield from rec(idx + 1, need - 1)
            uf.undo()

    if size < 0:
        return
    yield from rec(0, size)


def enumerate_trees(g: MultiGraph, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Count acyclic (n-1)-subsets of edge instances; each is a spanning tree."""
    if g.n == 0:
        return 0
    return sum(1 for _ in _acyclic_subsets(g, g.n - 1, cap))


def enumerate_2forests(
    g: MultiGraph, u: int, v: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> int:
    """Count acyclic (n-2)-subsets that leave ``u`` and ``v`` apart."""
    _check_vertex(g, u, v)
    if u == v:
        raise GraphError("a 2-forest cannot separate a vertex from itself")
    return sum(1 for _ in _acyclic_subsets(g, g.n - 2, cap, forbid=(u, v)))


def enumerate_2forest_table(
    g: MultiGraph, cap: int = DEFAULT_ENUMERATION_CAP
) -> dict[tuple[int, int], int]:
    """``F(u, v)`` for every pair ``u < v`` from one pass over all 2-forests."""
    table = {(u, v): 0 for u in g.vertices() for v in g.vertices() if u < v}
    for uf in _acyclic_subsets(g, g.n - 2, cap):
        roots = [uf.find(x) for x in range(1, g.n + 1)]
        for u in range(1, g.n + 1):
            ru = roots[u - 1]
            for v in range(u + 1, g.n + 1):
                if roots[v - 1] != ru:
                    table[(u, v)] += 1
    return table
