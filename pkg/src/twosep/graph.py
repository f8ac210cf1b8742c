"""Loopless undirected multigraphs with edge multiplicities.

Vertices are always the labels ``1..n``.  Every structural operation
returns a new graph together with a ``VertexMap`` (old label -> new label)
so that callers can keep speaking in terms of the original labels.
"""

from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, TextIO

Edge = tuple[int, int]
VertexMap = Mapping[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or invalid structural operations."""


class EdgeListParseError(GraphError):
    """Raised when edge-list text cannot be parsed."""


def _pair(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class MultiGraph:
    """Immutable loopless multigraph on vertices ``1..n``.

    ``edges`` maps an ordered pair ``(u, v)`` with ``u < v`` to its
    multiplicity.  Absent pairs have multiplicity zero.
    """

    __slots__ = ("_n", "_edges", "_adj", "_key")

    def __init__(self, n: int, edges: Mapping[Edge, int] | None = None):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        clean: dict[Edge, int] = {}
        for (u, v), m in (edges or {}).items():
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge ({u}, {v}) out of range 1..{n}")
            if m < 0:
                raise GraphError(f"negative multiplicity on ({u}, {v})")
            if m:
                p = _pair(u, v)
                clean[p] = clean.get(p, 0) + m
        self._n = n
        self._edges = MappingProxyType(dict(sorted(clean.items())))
        adj: list[dict[int, int]] = [dict() for _ in range(n + 1)]
        for (u, v), m in self._edges.items():
            adj[u][v] = m
            adj[v][u] = m
        self._adj = tuple(MappingProxyType(a) for a in adj)
        self._key = (n, tuple(self._edges.items()))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> Mapping[Edge, int]:
        return self._edges

    def vertices(self) -> range:
        return range(1, self._n + 1)

    def mult(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return self._edges.get(_pair(u, v), 0)

    def neighbors(self, u: int) -> Mapping[int, int]:
        """Neighbor -> multiplicity for vertex ``u``."""
        return self._adj[u]

    def degree(self, u: int) -> int:
        return sum(self._adj[u].values())

    def num_edges(self) -> int:
        """Total number of edge instances (multiplicities summed)."""
        return sum(self._edges.values())

    def edge_instances(self) -> list[Edge]:
        """Every parallel edge listed separately, in sorted order."""
        return [e for e, m in self._edges.items() for _ in range(m)]

    @property
    def key(self) -> tuple:
        """Canonical hashable form: vertex count and sorted edge multiset."""
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        body = ", ".join(
            f"{u}-{v}" if m == 1 else f"{u}-{v}x{m}" for (u, v), m in self._edges.items()
        )
        return f"MultiGraph(n={self._n}, [{body}])"


def build(n: int, edge_list: Iterable[tuple[int, ...]]) -> MultiGraph:
    """Build a graph from ``(u, v)`` or ``(u, v, mult)`` tuples.

    Duplicate pairs accumulate.

    >>> build(2, [(1, 2), (1, 2)]).mult(1, 2)
    2
    """
    edges: dict[Edge, int] = {}
    for item in edge_list:
        if len(item) == 2:
            (u, v), m = item, 1
        elif len(item) == 3:
            u, v, m = item
        else:
            raise GraphError(f"edge must be (u, v) or (u, v, mult), got {item!r}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"edge ({u}, {v}) out of range 1..{n}")
        if m < 1:
            raise GraphError(f"multiplicity must be >= 1, got {m}")
        p = _pair(u, v)
        edges[p] = edges.get(p, 0) + m
    return MultiGraph(n, edges)


def laplacian(g: MultiGraph) -> list[list[int]]:
    """Combinatorial Laplacian as a dense list of rows (0-indexed)."""
    n = g.n
    L = [[0] * n for _ in range(n)]
    for (u, v), m in g.edges.items():
        L[u - 1][v - 1] -= m
        L[v - 1][u - 1] -= m
        L[u - 1][u - 1] += m
        L[v - 1][v - 1] += m
    return L


def relabel(g: MultiGraph, mapping: Mapping[int, int], n: int) -> MultiGraph:
    """Push ``g`` through ``mapping``; pairs collapsing to a loop are dropped.

    Vertices missing from ``mapping`` are dropped with their edges.
    """
    edges: dict[Edge, int] = {}
    for (u, v), m in g.edges.items():
        if u not in mapping or v not in mapping:
            continue
        a, b = mapping[u], mapping[v]
        if a == b:
            continue
        p = _pair(a, b)
        edges[p] = edges.get(p, 0) + m
    return MultiGraph(n, edges)


def identify(g: MultiGraph, i: int, j: int) -> tuple[MultiGraph, dict[int, int]]:
    """Merge ``i`` and ``j``; an ``{i, j}`` edge disappears.

    The merged vertex takes the position of ``min(i, j)``; the other
    survivors keep their relative order.
    """
    if i == j:
        raise GraphError("cannot identify a vertex with itself")
    for x in (i, j):
        if not 1 <= x <= g.n:
            raise GraphError(f"vertex {x} out of range 1..{g.n}")
    keep, drop = min(i, j), max(i, j)
    vmap: dict[int, int] = {}
    label = 0
    for x in g.vertices():
        if x == drop:
            continue
        label += 1
        vmap[x] = label
    vmap[drop] = vmap[keep]
    return relabel(g, vmap, g.n - 1), vmap


def delete_vertex(g: MultiGraph, u: int) -> tuple[MultiGraph, dict[int, int]]:
    if g.n < 2:
        raise GraphError("cannot delete the only vertex")
    if not 1 <= u <= g.n:
        raise GraphError(f"vertex {u} out of range 1..{g.n}")
    return induced(g, [x for x in g.vertices() if x != u])


def induced(g: MultiGraph, keep: Iterable[int]) -> tuple[MultiGraph, dict[int, int]]:
    """Subgraph induced on ``keep``, relabeled compactly in label order."""
    vmap = {x: k for k, x in enumerate(sorted(set(keep)), start=1)}
    return relabel(g, vmap, len(vmap)), vmap


def components(g: MultiGraph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Connected components of ``g`` minus ``removed``, each sorted, ordered by
    smallest member."""
    gone = set(removed)
    seen = set(gone)
    out = []
    for s in g.vertices():
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def connected(g: MultiGraph) -> bool:
    return len(components(g)) <= 1


@dataclass(frozen=True)
class TwoSeparation:
    """A split of ``graph`` into edge-disjoint sides sharing exactly ``{i, j}``.

    ``map1``/``map2`` send original labels to side labels; ``side_of``
    records which side each original edge pair went to.
    """

    graph: MultiGraph
    i: int
    j: int
    g1: MultiGraph
    g2: MultiGraph
    map1: Mapping[int, int]
    map2: Mapping[int, int]
    side_of: Mapping[Edge, int] = field(repr=False)

    def side_map(self, side: int) -> Mapping[int, int]:
        return self.map1 if side == 1 else self.map2

    def side_graph(self, side: int) -> MultiGraph:
        return self.g1 if side == 1 else self.g2

    def vertices(self, side: int) -> frozenset[int]:
        return frozenset(self.side_map(side))

    def side(self, u: int) -> int:
        """1 or 2 for a non-separator vertex; 0 for ``i`` or ``j``."""
        if u in (self.i, self.j):
            return 0
        return 1 if u in self.map1 else 2


def split(
    g: MultiGraph, i: int, j: int, side_assignment: Mapping[Edge, int]
) -> TwoSeparation:
    """Split ``g`` along ``{i, j}`` with an explicit edge -> side assignment.

    Every edge pair of ``g`` must be assigned to side 1 or 2.  Edges not
    touching ``{i, j}`` must follow their component of ``g - {i, j}``, each
    side must keep a vertex outside ``{i, j}``, and each side must be
    connected.
    """
    if i == j:
        raise GraphError("separator vertices must differ")
    i, j = min(i, j), max(i, j)
    comps = components(g, removed=(i, j))
    comp_of = {x: c for c, comp in enumerate(comps) for x in comp}
    comp_side: dict[int, int] = {}
    sides: dict[Edge, int] = {}
    for e in g.edges:
        s = side_assignment.get(e)
        if s is None:
            s = side_assignment.get((e[1], e[0]))
        if s not in (1, 2):
            raise GraphError(f"edge {e} has no side in the assignment")
        sides[e] = s
        for x in e:
            if x in comp_of:
                c = comp_of[x]
                if comp_side.setdefault(c, s) != s:
                    raise GraphError(
                        f"{{{i}, {j}}} is not a 2-separator for this assignment: "
                        f"component containing {x} is forced to both sides"
                    )
    verts = {1: {i, j}, 2: {i, j}}
    for c, comp in enumerate(comps):
        if c not in comp_side:
            raise GraphError(f"component {comp} of G - {{{i}, {j}}} has no edges to a side")
        verts[comp_side[c]].update(comp)
    for s in (1, 2):
        if len(verts[s]) < 3:
            raise GraphError(f"side {s} has no vertex outside {{{i}, {j}}}")
    graphs, maps = [], []
    for s in (1, 2):
        vmap = {x: k for k, x in enumerate(sorted(verts[s]), start=1)}
        edges = {}
        for e, m in g.edges.items():
            if sides[e] == s:
                edges[_pair(vmap[e[0]], vmap[e[1]])] = m
        side_g = MultiGraph(len(vmap), edges)
        if not connected(side_g):
            raise GraphError(f"side {s} of the split at {{{i}, {j}}} is disconnected")
        graphs.append(side_g)
        maps.append(MappingProxyType(vmap))
    return TwoSeparation(
        g, i, j, graphs[0], graphs[1], maps[0], maps[1], MappingProxyType(sides)
    )


def natural_split(
    g: MultiGraph,
    i: int,
    j: int,
    side1: Iterable[int] | None = None,
    ij_side: int = 1,
) -> TwoSeparation:
    """Split at ``{i, j}`` by grouping components of ``g - {i, j}``.

    ``side1`` names vertices whose components go to side 1; by default the
    component holding the smallest non-separator vertex.  Direct ``{i, j}``
    edges go to ``ij_side``.
    """
    i, j = min(i, j), max(i, j)
    comps = components(g, removed=(i, j))
    if side1 is None:
        chosen = set(comps[0]) if comps else set()
    else:
        wanted = set(side1)
        chosen = {x for comp in comps if wanted & set(comp) for x in comp}
    assignment: dict[Edge, int] = {}
    for e in g.edges:
        if e == (i, j):
            assignment[e] = ij_side
        else:
            other = e[0] if e[0] not in (i, j) else e[1]
            assignment[e] = 1 if other in chosen else 2
    return split(g, i, j, assignment)


def glue(sep: TwoSeparation, switched: bool = False) -> MultiGraph:
    """Reassemble the two sides in original labels, optionally 2-switched."""
    inv1 = {s: x for x, s in sep.map1.items()}
    inv2 = {s: x for x, s in sep.map2.items()}
    if switched:
        swap = {sep.i: sep.j, sep.j: sep.i}
        inv2 = {s: swap.get(x, x) for s, x in inv2.items()}
    edges: dict[Edge, int] = {}
    for side_g, inv in ((sep.g1, inv1), (sep.g2, inv2)):
        for (a, b), m in side_g.edges.items():
            p = _pair(inv[a], inv[b])
            edges[p] = edges.get(p, 0) + m
    return MultiGraph(sep.graph.n, edges)


def two_switch(sep: TwoSeparation) -> MultiGraph:
    """Reattach side 2 crosswise: its copy of ``i`` becomes ``j`` and vice versa.

    Side-1 labels are kept, so switching ``straight(n)`` at ``{k, k+1}``
    gives exactly the bent 2-tree with bend at ``k``.
    """
    return glue(sep, switched=True)


# -- edge-list text format --------------------------------------------------


def parse_edge_list(text: str) -> MultiGraph:
    """Parse ``n m`` followed by ``m`` lines ``u v [mult]``; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise EdgeListParseError(f"line {lineno}: expected integers, got {raw.strip()!r}")
    if not rows:
        raise EdgeListParseError("empty input: expected header 'n m'")
    lineno, header = rows[0]
    if len(header) != 2:
        raise EdgeListParseError(f"line {lineno}: header must be 'n m'")
    n, m = header
    if n < 1 or m < 0:
        raise EdgeListParseError(f"line {lineno}: invalid header {n} {m}")
    body = rows[1:]
    if len(body) != m:
        raise EdgeListParseError(f"header announces {m} edge lines, found {len(body)}")
    edge_list = []
    for lineno, toks in body:
        if len(toks) not in (2, 3):
            raise EdgeListParseError(f"line {lineno}: expected 'u v [mult]'")
        edge_list.append(tuple(toks))
    try:
        return build(n, edge_list)
    except GraphError as exc:
        raise EdgeListParseError(str(exc)) from None


def read_edge_list(stream: TextIO) -> MultiGraph:
    return parse_edge_list(stream.read())


def format_edge_list(g: MultiGraph) -> str:
    """Serialize with one line per distinct pair, sorted by ``(u, v)``."""
    out = io.StringIO()
    out.write(f"{g.n} {len(g.edges)}\n")
    for (u, v), m in g.edges.items():
        out.write(f"{u} {v}\n" if m == 1 else f"{u} {v} {m}\n")
    return out.getvalue()


def iter_pairs(n: int) -> Iterator[Edge]:
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            yield (u, v)
