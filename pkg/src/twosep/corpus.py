"""Small graph corpora used by ``verify`` and the test-suite."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import networkx as nx

from .graph import MultiGraph, build, connected
from .separation import articulation_points, find_2separators


@lru_cache(maxsize=None)
def connected_simple_graphs(max_n: int = 6) -> tuple[MultiGraph, ...]:
    """One representative per isomorphism class of connected simple graphs
    on ``1..max_n`` vertices (``max_n <= 7``, from the graph atlas)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > max_n or not nx.is_connected(h):
            continue
        out.append(build(n, [(a + 1, b + 1) for a, b in h.edges()]))
    return tuple(out)


@lru_cache(maxsize=None)
def multiplicity2_graphs() -> tuple[MultiGraph, ...]:
    """Connected multigraphs with multiplicities in {1, 2}.

    Every multiplicity pattern for graphs on at most 4 vertices, and for each
    5-vertex graph the pattern doubling every other edge.
    """
    out = []
    for g in connected_simple_graphs(5):
        pairs = list(g.edges)
        if g.n <= 4:
            for pattern in itertools.product((1, 2), repeat=len(pairs)):
                if 2 in pattern:
                    out.append(MultiGraph(g.n, dict(zip(pairs, pattern))))
        elif g.n == 5:
            pattern = [2 if idx % 2 == 0 else 1 for idx in range(len(pairs))]
            out.append(MultiGraph(g.n, dict(zip(pairs, pattern))))
    return tuple(out)


def random_connected_graph(
    rng: random.Random, n: int, extra: int, max_mult: int = 2
) -> MultiGraph:
    """Random spanning tree plus ``extra`` random edge instances."""
    edges = [(v, rng.randint(1, v - 1)) for v in range(2, n + 1)]
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    edges = [(perm[a - 1], perm[b - 1]) for a, b in edges]
    counts: dict = {}
    for a, b in edges:
        counts[(min(a, b), max(a, b))] = 1
    while extra > 0 and n > 1:
        a, b = rng.sample(range(1, n + 1), 2)
        p = (min(a, b), max(a, b))
        if counts.get(p, 0) < max_mult:
            counts[p] = counts.get(p, 0) + 1
            extra -= 1
        elif all(counts.get(q, 0) >= max_mult for q in itertools.combinations(range(1, n + 1), 2)):
            break
    return MultiGraph(n, counts)


def random_corpus(count: int = 200, seed: int = 2024, cap: int = 18) -> list[MultiGraph]:
    """Random connected multigraphs on 3..9 vertices with at most ``cap`` edge instances."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, 9)
        extra = rng.randint(0, max(0, cap - (n - 1)))
        g = random_connected_graph(rng, n, extra)
        if g.num_edges() <= cap and connected(g):
            out.append(g)
    return out


def random_separable_corpus(count: int = 60, seed: int = 7) -> list[MultiGraph]:
    """Random 2-connected multigraphs that have at least one 2-separator."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(5, 9)
        g = random_connected_graph(rng, n, rng.randint(2, n + 3))
        if not articulation_points(g) and find_2separators(g):
            out.append(g)
    return out
