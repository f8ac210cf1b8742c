"""Corpus-wide cross-checks behind ``twosep verify``."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import families as fam
from .corpus import connected_simple_graphs, multiplicity2_graphs, random_corpus, random_separable_corpus
from .forests import count_2forests_det, count_trees_det, enumerate_2forest_table, enumerate_trees
from .graph import MultiGraph, iter_pairs
from .separation import Solver, all_separations, forests_cross, forests_same_side, trees_via_separation


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, what: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 10:
                self.failures.append(what)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "failed": self.failed, "failures": self.failures}


def check_oracle(graphs: list[MultiGraph], name: str = "oracle_vs_det") -> CheckResult:
    res = CheckResult(name)
    for g in graphs:
        res.record(enumerate_trees(g) == count_trees_det(g), f"T on {g!r}")
        table = enumerate_2forest_table(g)
        for (u, v), f in table.items():
            res.record(f == count_2forests_det(g, u, v), f"F({u},{v}) on {g!r}")
    return res


def check_reduction(graphs: list[MultiGraph], name: str = "reduce_vs_det") -> CheckResult:
    res = CheckResult(name)
    for g in graphs:
        t = count_trees_det(g)
        for solver in (Solver(threshold=3, strategy="balanced"), Solver(threshold=3, strategy="first")):
            res.record(solver.trees(g) == t, f"T on {g!r} ({solver.strategy})")
            for u, v in iter_pairs(g.n):
                res.record(
                    solver.forests(g, u, v) == count_2forests_det(g, u, v),
                    f"F({u},{v}) on {g!r} ({solver.strategy})",
                )
    return res


def check_separations(graphs: list[MultiGraph], name: str = "separator_theorems") -> CheckResult:
    res = CheckResult(name)
    for g in graphs:
        t = count_trees_det(g)
        for sep in all_separations(g):
            res.record(trees_via_separation(sep) == t, f"T at {{{sep.i},{sep.j}}} on {g!r}")
            for u, v in iter_pairs(g.n):
                f = count_2forests_det(g, u, v)
                if sep.side(u) and sep.side(v) and sep.side(u) != sep.side(v):
                    got = forests_cross(sep, u, v)
                else:
                    got = forests_same_side(sep, u, v)
                res.record(got == f, f"F({u},{v}) at {{{sep.i},{sep.j}}} on {g!r}")
    return res


def check_families(max_n: int) -> CheckResult:
    res = CheckResult("family_closed_forms")
    for n in range(4, max_n + 1):
        h = fam.gen_straight(n)
        res.record(count_trees_det(h) == fam.straight_trees(n), f"T(H_{n})")
        for u, v in iter_pairs(n):
            f = count_2forests_det(h, u, v)
            res.record(
                f == fam.straight_forest_closed(u, v, n) == fam.straight_forest_sum(u, v, n),
                f"F_H{n}({u},{v})",
            )
        for k in fam.golden_k_range(n):
            g = fam.gen_bent(n, k)
            for u, v in iter_pairs(n):
                res.record(
                    count_2forests_det(g, u, v) == fam.bent_forest(u, v, n, k),
                    f"F_G{n},k={k}({u},{v})",
                )
    for s in range(3):
        g = fam.gen_sierpinski(s)
        t = count_trees_det(g)
        res.record(t == fam.sierpinski_trees(s), f"T(S_{s})")
        res.record(count_2forests_det(g, 1, 2) == fam.sierpinski_corner_forests(s), f"F_S{s}(a,b)")
    return res


def run_verification(max_n: int = 5, random_count: int = 40, seed: int = 2024) -> list[CheckResult]:
    simple = [g for g in connected_simple_graphs(min(max_n, 7))]
    multi = [g for g in multiplicity2_graphs() if g.n <= max_n]
    rand = random_corpus(random_count, seed=seed, cap=16)
    sep = random_separable_corpus(max(random_count // 2, 1), seed=seed)
    return [
        check_oracle(simple + multi + rand),
        check_reduction(simple + multi + rand + sep),
        check_separations(simple + sep),
        check_families(max(max_n, 7) + 3),
    ]
