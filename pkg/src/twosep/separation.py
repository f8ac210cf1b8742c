"""Cut vertices, 2-separators and the divide-and-conquer counter.

The counting rules used by :class:`Solver`:

* cut vertex ``w`` with sides ``G1, G2``::

      T(G) = T(G1) T(G2)
      F_G(u, v) = F_G1(u, v) T(G2)                        (u, v in G1)
      F_G(u, v) = F_G1(u, w) T(G2) + T(G1) F_G2(w, v)     (u in G1, v in G2)

* 2-separator ``{i, j}``::

      T(G) = T(G1) F_G2(i, j) + T(G2) F_G1(i, j)
      F_G(u, v) = F_G1(u, v) F_G2(i, j) + F_G1/ij(u, v) T(G2)      (same side)
      F_G(u, v) = F_G1/ij(u, ij) T(G2) + F_G2/ij(v, ij) T(G1)
                  + F_G1(u, i) F_G2(v, j) + F_G1(u, j) F_G2(v, i)
                  - 2 F_G1(u, {i, j}) F_G2(v, {i, j})                 (cross)

Anything without a usable separator falls back to the determinant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .forests import ConsistencyError, count_2forests_det, count_trees_det, pair_from_forests
from .graph import (
    GraphError,
    MultiGraph,
    TwoSeparation,
    components,
    connected,
    identify,
    induced,
    natural_split,
)
from .linalg import note_multiplications

TreeCounter = Callable[[MultiGraph], int]
ForestCounter = Callable[[MultiGraph, int, int], int]


# -- structure search ----------------------------------------------------------


def articulation_points(g: MultiGraph, removed: Iterable[int] = ()) -> set[int]:
    """Cut vertices of ``g - removed`` (iterative Hopcroft-Tarjan)."""
    gone = set(removed)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cut: set[int] = set()
    clock = 0
    for root in g.vertices():
        if root in gone or root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, 0, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if w in gone or w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    break
                low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if p == root:
                        root_children += 1
                    elif low[v] >= disc[p]:
                        cut.add(p)
        if root_children >= 2:
            cut.add(root)
    return cut


def find_cut_vertices(g: MultiGraph) -> set[int]:
    return articulation_points(g)


def find_2separators(g: MultiGraph) -> list[tuple[int, int]]:
    """All pairs ``(i, j)``, ``i < j``, whose deletion disconnects ``g``.

    For 2-connected graphs ``{i, j}`` separates exactly when ``j`` is a cut
    vertex of ``g - i``, which keeps the search at one articulation pass per
    vertex.  Graphs with a cut vertex get the plain pair-deletion test.
    """
    if g.n < 4:
        return []
    if not connected(g) or articulation_points(g):
        return [
            (i, j)
            for i in g.vertices()
            for j in range(i + 1, g.n + 1)
            if len(components(g, removed=(i, j))) > 1
        ]
    pairs = set()
    for i in g.vertices():
        for j in articulation_points(g, removed=(i,)):
            pairs.add((min(i, j), max(i, j)))
    return sorted(pairs)


def _balanced_groups(comps: list[list[int]]) -> tuple[list[int], int]:
    """Split components into two groups, largest first onto the lighter group.

    Returns the vertices of group 1 and the larger group's vertex count.
    """
    order = sorted(range(len(comps)), key=lambda c: (-len(comps[c]), comps[c][0]))
    groups: tuple[list[int], list[int]] = ([], [])
    sizes = [0, 0]
    for c in order:
        k = 0 if sizes[0] <= sizes[1] else 1
        groups[k].extend(comps[c])
        sizes[k] += len(comps[c])
    return sorted(groups[0]), max(sizes)


# -- cut-vertex rules -----------------------------------------------------------


@dataclass(frozen=True)
class CutSplit:
    """``graph`` split at cut vertex ``w`` into connected sides sharing only ``w``."""

    graph: MultiGraph
    w: int
    g1: MultiGraph
    g2: MultiGraph
    map1: Mapping[int, int]
    map2: Mapping[int, int]


def split_at_cut_vertex(g: MultiGraph, w: int, side1: Iterable[int] | None = None) -> CutSplit:
    comps = components(g, removed=(w,))
    if len(comps) < 2:
        raise GraphError(f"vertex {w} is not a cut vertex")
    if side1 is None:
        group, _ = _balanced_groups(comps)
    else:
        wanted = set(side1)
        group = [x for comp in comps if wanted & set(comp) for x in comp]
        if not group or len(group) == g.n - 1:
            raise GraphError("side 1 must take some but not all components")
    rest = [x for x in g.vertices() if x != w and x not in set(group)]
    g1, m1 = induced(g, [w, *group])
    g2, m2 = induced(g, [w, *rest])
    return CutSplit(g, w, g1, g2, MappingProxyType(m1), MappingProxyType(m2))


def cut_vertex_trees(cs: CutSplit, trees: TreeCounter = count_trees_det) -> int:
    note_multiplications(1)
    return trees(cs.g1) * trees(cs.g2)


def cut_vertex_forests(
    cs: CutSplit,
    u: int,
    v: int,
    trees: TreeCounter = count_trees_det,
    forests: ForestCounter = count_2forests_det,
) -> int:
    if u == v:
        raise GraphError("u and v must differ")
    m1, m2 = cs.map1, cs.map2
    if u in m1 and v in m1:
        note_multiplications(1)
        return forests(cs.g1, m1[u], m1[v]) * trees(cs.g2)
    if u in m2 and v in m2:
        note_multiplications(1)
        return forests(cs.g2, m2[u], m2[v]) * trees(cs.g1)
    if u in m2:
        u, v = v, u
    w = cs.w
    note_multiplications(2)
    return forests(cs.g1, m1[u], m1[w]) * trees(cs.g2) + trees(cs.g1) * forests(
        cs.g2, m2[w], m2[v]
    )


# -- 2-separation rules -----------------------------------------------------------


def _identified(sep: TwoSeparation, side: int) -> tuple[MultiGraph, dict[int, int]]:
    """Side graph with ``i`` and ``j`` merged, and original label -> new label."""
    smap = sep.side_map(side)
    merged, vmap = identify(sep.side_graph(side), smap[sep.i], smap[sep.j])
    return merged, {x: vmap[s] for x, s in smap.items()}


def trees_via_separation(
    sep: TwoSeparation,
    trees: TreeCounter = count_trees_det,
    forests: ForestCounter = count_2forests_det,
) -> int:
    m1, m2 = sep.map1, sep.map2
    f1 = forests(sep.g1, m1[sep.i], m1[sep.j])
    f2 = forests(sep.g2, m2[sep.i], m2[sep.j])
    note_multiplications(2)
    return trees(sep.g1) * f2 + trees(sep.g2) * f1


def forests_same_side(
    sep: TwoSeparation,
    u: int,
    v: int,
    trees: TreeCounter = count_trees_det,
    forests: ForestCounter = count_2forests_det,
) -> int:
    """``F_G(u, v)`` for ``u, v`` on one side (separator vertices sit on both)."""
    if u == v:
        raise GraphError("u and v must differ")
    if u in sep.map1 and v in sep.map1:
        side, other = 1, 2
    elif u in sep.map2 and v in sep.map2:
        side, other = 2, 1
    else:
        raise GraphError(f"vertices {u} and {v} are not on a common side of {{{sep.i}, {sep.j}}}")
    smap, omap = sep.side_map(side), sep.side_map(other)
    gs, go = sep.side_graph(side), sep.side_graph(other)
    merged, mmap = _identified(sep, side)
    same = forests(gs, smap[u], smap[v]) * forests(go, omap[sep.i], omap[sep.j])
    if mmap[u] == mmap[v]:
        # {u, v} = {i, j}: nothing separates the merged vertex from itself
        note_multiplications(1)
        return same
    note_multiplications(2)
    return same + forests(merged, mmap[u], mmap[v]) * trees(go)


@dataclass(frozen=True)
class CrossTerms:
    """Ingredients shared by both cross-side forms."""

    a: int  # F_G1/ij(u, ij)
    b: int  # F_G2/ij(v, ij)
    t1: int
    t2: int
    ui: int  # F_G1(u, i)
    uj: int
    vi: int  # F_G2(v, i)
    vj: int
    f1: int  # F_G1(i, j)
    f2: int

    def theorem_form(self) -> int:
        pair1 = pair_from_forests(self.ui, self.uj, self.f1)
        pair2 = pair_from_forests(self.vi, self.vj, self.f2)
        return (
            self.a * self.t2
            + self.b * self.t1
            + self.ui * self.vj
            + self.uj * self.vi
            - 2 * pair1 * pair2
        )

    def halves_form_doubled(self) -> int:
        """Twice the nine-term variant that avoids vertex-vs-pair counts."""
        return (
            2 * self.a * self.t2
            + 2 * self.b * self.t1
            + self.ui * self.vj
            + self.uj * self.vi
            - self.ui * self.vi
            - self.uj * self.vj
            + (self.ui + self.uj) * self.f2
            + self.f1 * (self.vi + self.vj)
            - self.f1 * self.f2
        )


def cross_terms(
    sep: TwoSeparation,
    u: int,
    v: int,
    trees: TreeCounter = count_trees_det,
    forests: ForestCounter = count_2forests_det,
) -> CrossTerms:
    if sep.side(u) == 2 and sep.side(v) == 1:
        u, v = v, u
    if sep.side(u) != 1 or sep.side(v) != 2:
        raise GraphError(
            f"cross-side query needs u, v off the separator on opposite sides; "
            f"got {u}, {v} with separator {{{sep.i}, {sep.j}}}"
        )
    m1, m2, i, j = sep.map1, sep.map2, sep.i, sep.j
    g1ij, mm1 = _identified(sep, 1)
    g2ij, mm2 = _identified(sep, 2)
    return CrossTerms(
        a=forests(g1ij, mm1[u], mm1[i]),
        b=forests(g2ij, mm2[v], mm2[i]),
        t1=trees(sep.g1),
        t2=trees(sep.g2),
        ui=forests(sep.g1, m1[u], m1[i]),
        uj=forests(sep.g1, m1[u], m1[j]),
        vi=forests(sep.g2, m2[v], m2[i]),
        vj=forests(sep.g2, m2[v], m2[j]),
        f1=forests(sep.g1, m1[i], m1[j]),
        f2=forests(sep.g2, m2[i], m2[j]),
    )


def forests_cross(
    sep: TwoSeparation,
    u: int,
    v: int,
    trees: TreeCounter = count_trees_det,
    forests: ForestCounter = count_2forests_det,
) -> int:
    """``F_G(u, v)`` for ``u`` and ``v`` strictly on opposite sides.

    Both the five-term form (with vertex-vs-pair counts) and the nine-term
    half-integer form are evaluated; they must agree.
    """
    terms = cross_terms(sep, u, v, trees, forests)
    value = terms.theorem_form()
    doubled = terms.halves_form_doubled()
    note_multiplications(7)
    if doubled != 2 * value:
        raise ConsistencyError(
            f"cross-side forms disagree at {{{sep.i}, {sep.j}}}: {value} vs {doubled}/2"
        )
    return value


# -- recursive driver ---------------------------------------------------------------


Query = tuple  # ("trees",) or ("forests", u, v) with u < v


def _query_text(q: Query) -> str:
    return "T" if q[0] == "trees" else f"F({q[1]},{q[2]})"


@dataclass
class TraceNode:
    """One step of a reduction; leaves are determinants or memo hits."""

    rule: str
    query: str
    n: int
    value: int
    separator: tuple[int, ...] | None = None
    sizes: tuple[int, ...] | None = None
    children: list[TraceNode] = field(default_factory=list)

    def to_dict(self) -> dict:
        d: dict = {"rule": self.rule, "query": self.query, "n": self.n, "value": str(self.value)}
        if self.separator is not None:
            d["separator"] = list(self.separator)
        if self.sizes is not None:
            d["sizes"] = list(self.sizes)
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self, indent: str = "  ") -> str:
        lines: list[str] = []

        def walk(node: TraceNode, depth: int) -> None:
            extra = ""
            if node.separator is not None:
                extra += " at {" + ",".join(map(str, node.separator)) + "}"
            if node.sizes is not None:
                extra += " sides " + "+".join(map(str, node.sizes))
            lines.append(f"{indent * depth}{node.rule}: {node.query} on n={node.n}{extra} = {node.value}")
            for c in node.children:
                walk(c, depth + 1)

        walk(self, 0)
        return "\n".join(lines)

    def count(self, rule: str | None = None) -> int:
        own = 1 if rule is None or self.rule == rule else 0
        return own + sum(c.count(rule) for c in self.children)

    def leaves_ok(self) -> bool:
        if not self.children:
            return self.rule in ("determinant", "cached")
        return all(c.leaves_ok() for c in self.children)


class Solver:
    """Recursive counter over cut vertices and 2-separators.

    ``strategy`` picks the separator: ``"balanced"`` minimizes the larger
    side (ties by label order), ``"first"`` takes the lexicographically
    first one.  Graphs with at most ``threshold`` vertices go straight to
    the determinant.  A Solver's memo is not shared across threads.
    """

    def __init__(self, threshold: int = 8, strategy: str = "balanced", memo: bool = True):
        if strategy not in ("balanced", "first"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.threshold = max(threshold, 3)
        self.strategy = strategy
        self.memo: dict | None = {} if memo else None
        self._structure: dict = {}

    # public entry points

    def trees(self, g: MultiGraph) -> int:
        return self.solve(g, ("trees",))[0]

    def forests(self, g: MultiGraph, u: int, v: int) -> int:
        return self.solve(g, ("forests", u, v))[0]

    def solve(self, g: MultiGraph, query: Query) -> tuple[int, TraceNode]:
        if not connected(g):
            raise GraphError("reduction requires a connected graph")
        if query[0] == "forests":
            _, u, v = query
            if u == v:
                raise GraphError("u and v must differ")
            for x in (u, v):
                if not 1 <= x <= g.n:
                    raise GraphError(f"vertex {x} out of range 1..{g.n}")
            query = ("forests", min(u, v), max(u, v))
        elif query != ("trees",):
            raise ValueError(f"unknown query {query!r}")
        return self._solve(g, query)

    # internals

    def _solve(self, g: MultiGraph, query: Query) -> tuple[int, TraceNode]:
        key = (g.key, query)
        if self.memo is not None and key in self.memo:
            value = self.memo[key]
            return value, TraceNode("cached", _query_text(query), g.n, value)
        value, node = self._compute(g, query)
        if self.memo is not None:
            self.memo[key] = value
        return value, node

    def _compute(self, g: MultiGraph, query: Query) -> tuple[int, TraceNode]:
        qtext = _query_text(query)
        if g.n > self.threshold:
            plan = self._plan(g)
            if plan is not None:
                children: list[TraceNode] = []

                def trees(h: MultiGraph) -> int:
                    val, node = self._solve(h, ("trees",))
                    children.append(node)
                    return val

                def forests(h: MultiGraph, a: int, b: int) -> int:
                    val, node = self._solve(h, ("forests", min(a, b), max(a, b)))
                    children.append(node)
                    return val

                kind, split = plan
                if kind == "cut":
                    sizes = (split.g1.n, split.g2.n)
                    if query[0] == "trees":
                        value = cut_vertex_trees(split, trees)
                    else:
                        value = cut_vertex_forests(split, query[1], query[2], trees, forests)
                    node = TraceNode("cut_vertex", qtext, g.n, value, (split.w,), sizes, children)
                    return value, node
                sep = split
                sizes = (sep.g1.n, sep.g2.n)
                if query[0] == "trees":
                    value = trees_via_separation(sep, trees, forests)
                    rule = "separation_trees"
                else:
                    _, u, v = query
                    if sep.side(u) and sep.side(v) and sep.side(u) != sep.side(v):
                        value = forests_cross(sep, u, v, trees, forests)
                        rule = "separation_cross"
                    else:
                        value = forests_same_side(sep, u, v, trees, forests)
                        rule = "separation_same_side"
                node = TraceNode(rule, qtext, g.n, value, (sep.i, sep.j), sizes, children)
                return value, node
        if query[0] == "trees":
            value = count_trees_det(g)
        else:
            value = count_2forests_det(g, query[1], query[2])
        return value, TraceNode("determinant", qtext, g.n, value)

    def _plan(self, g: MultiGraph):
        """Decide how to split ``g``; cached per graph since queries repeat."""
        if g.key in self._structure:
            return self._structure[g.key]
        plan = None
        cuts = sorted(articulation_points(g))
        if cuts:
            best = None
            for w in cuts:
                comps = components(g, removed=(w,))
                group, big = _balanced_groups(comps)
                if best is None or big < best[0]:
                    best = (big, w, group)
                if self.strategy == "first":
                    break
            _, w, group = best
            plan = ("cut", split_at_cut_vertex(g, w, group))
        else:
            best = None
            for i, j in find_2separators(g):
                comps = components(g, removed=(i, j))
                group, big = _balanced_groups(comps)
                if best is None or big < best[0]:
                    best = (big, i, j, group)
                if self.strategy == "first":
                    break
            if best is not None:
                _, i, j, group = best
                plan = ("sep", natural_split(g, i, j, side1=group))
        self._structure[g.key] = plan
        return plan


def solve(
    g: MultiGraph,
    query: Query,
    threshold: int = 8,
    strategy: str = "balanced",
    memo: bool = True,
) -> tuple[int, TraceNode]:
    """Count ``T`` or ``F(u, v)`` by reduction; bit-identical to the determinant."""
    return Solver(threshold, strategy, memo).solve(g, query)


def all_separations(g: MultiGraph) -> list[TwoSeparation]:
    """Every admissible split: each separator with each grouping of its components
    (up to swapping sides) and each placement of a direct ``{i, j}`` edge."""
    out = []
    for i, j in find_2separators(g):
        comps = components(g, removed=(i, j))
        k = len(comps)
        for mask in range(1, 2 ** (k - 1)):
            side1 = [x for c in range(k) if mask >> c & 1 for x in comps[c]]
            placements = (1, 2) if g.mult(i, j) else (1,)
            for ij_side in placements:
                try:
                    out.append(natural_split(g, i, j, side1=side1, ij_side=ij_side))
                except GraphError:
                    continue
    return out
