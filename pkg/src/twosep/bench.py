"""Timing of the determinant route against the reduction route."""

from __future__ import annotations

import csv
import time
from dataclasses import asdict, dataclass
from typing import Iterable, TextIO

from .families import FamilySpec
from .forests import count_2forests_det, count_trees_det
from .linalg import counting_multiplications
from .separation import Solver


@dataclass
class BenchRow:
    family: str
    n: int
    vertices: int
    query: str
    method: str
    seconds: float
    multiplications: int
    value: str
    matches: bool


def _time(fn):
    with counting_multiplications() as counter:
        start = time.perf_counter()
        value = fn()
        elapsed = time.perf_counter() - start
    return value, elapsed, counter.total


def bench_family(family: str, ns: Iterable[int], k: int | None = None) -> list[BenchRow]:
    """For each size, count ``T`` and ``F(1, n)`` with both methods."""
    rows = []
    for n in ns:
        spec = FamilySpec(family, n, k if family == "bent" else None)
        g = spec.graph()
        last = g.n if family != "sierpinski" else 2
        queries = {
            "T": (lambda: count_trees_det(g), lambda s: s.trees(g)),
            f"F(1,{last})": (
                lambda: count_2forests_det(g, 1, last),
                lambda s: s.forests(g, 1, last),
            ),
        }
        for qname, (det_fn, red_fn) in queries.items():
            dval, dsec, dmul = _time(det_fn)
            rval, rsec, rmul = _time(lambda: red_fn(Solver()))
            same = dval == rval
            rows.append(BenchRow(family, n, g.n, qname, "det", dsec, dmul, str(dval), same))
            rows.append(BenchRow(family, n, g.n, qname, "reduce", rsec, rmul, str(rval), same))
    return rows


def write_csv(rows: list[BenchRow], stream: TextIO) -> None:
    fields = list(BenchRow.__dataclass_fields__)
    w = csv.DictWriter(stream, fieldnames=fields)
    w.writeheader()
    for r in rows:
        w.writerow(asdict(r))
