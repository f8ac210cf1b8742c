"""Acceptance criteria, one test each.

Every test prints a PASS/FAIL line and adds it to the terminal summary.
"""

import itertools
import json
import time
from fractions import Fraction

import conftest
from twosep import cli
from twosep.corpus import connected_simple_graphs, multiplicity2_graphs, random_corpus
from twosep.families import (
    bent_end_resistance,
    bent_forest,
    bent_k_range,
    fib,
    gen_bent,
    gen_sierpinski,
    gen_straight,
    golden_k_range,
    is_cross_bend,
    lucas,
    sierpinski_corner_forests,
    sierpinski_corner_resistance,
    sierpinski_order,
    sierpinski_trees,
    straight_forest_closed,
    straight_forest_sum,
    straight_resistance_closed,
)
from twosep.forests import (
    count_2forests_det,
    count_trees_det,
    enumerate_2forest_table,
    enumerate_trees,
)
from twosep.graph import iter_pairs, natural_split, two_switch
from twosep.resistance import (
    resistance,
    resistance_identified,
    resistance_identified_direct,
    resistance_pinv,
)
from twosep.separation import (
    Solver,
    all_separations,
    forests_cross,
    forests_same_side,
    trees_via_separation,
)

RANDOM = random_corpus(200, seed=2024)


def report(number, title, ok, detail, seconds):
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail} ({seconds:.1f}s)"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    return ok


def test_1_oracle_equivalence():
    start = time.perf_counter()
    graphs = list(connected_simple_graphs(6)) + list(multiplicity2_graphs()) + RANDOM
    checked = mismatches = 0
    for g in graphs:
        checked += 1
        mismatches += enumerate_trees(g) != count_trees_det(g)
        for (u, v), f in enumerate_2forest_table(g).items():
            checked += 1
            mismatches += f != count_2forests_det(g, u, v)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 300
    report(1, "oracle equivalence", ok, f"{len(graphs)} graphs, {checked} counts, {mismatches} mismatches", elapsed)
    assert ok


H7_LABELS = {
    (1, 2): 89, (1, 3): 89, (2, 3): 68, (2, 4): 81, (3, 4): 65, (3, 5): 80,
    (4, 5): 65, (4, 6): 81, (5, 6): 68, (5, 7): 89, (6, 7): 89,
}
# the {1,2} end reattached with 3 and 4 swapped
SWITCHED_LABELS = {
    (1, 2): 89, (1, 4): 89, (2, 3): 81, (2, 4): 68, (3, 4): 65, (3, 5): 80,
    (4, 5): 65, (4, 6): 81, (5, 6): 68, (5, 7): 89, (6, 7): 89,
}


def test_2_labeled_h7_and_switch():
    start = time.perf_counter()
    h = gen_straight(7)
    left = {e: count_2forests_det(h, *e) for e in h.edges}
    sep = natural_split(h, 3, 4, side1=[5, 6, 7])
    switched = two_switch(sep)
    right = {e: count_2forests_det(switched, *e) for e in switched.edges}
    same_side_ok = all(
        count_2forests_det(switched, u, v) == count_2forests_det(h, u, v)
        for side in (1, 2)
        for u, v in itertools.combinations(sorted(sep.vertices(side)), 2)
        if side == 1 or not {u, v} & {3, 4}
    )
    ok = left == H7_LABELS and right == SWITCHED_LABELS and same_side_ok
    report(2, "H_7 edge labels and switch invariance", ok, f"left {left == H7_LABELS}, right {right == SWITCHED_LABELS}, same side {same_side_ok}", time.perf_counter() - start)
    assert ok


def test_3_reduction_matches_determinant():
    start = time.perf_counter()
    graphs = [gen_straight(n) for n in range(4, 15)]
    graphs += [gen_bent(n, k) for n in range(4, 13) for k in bent_k_range(n)]
    graphs += [gen_sierpinski(s) for s in range(3)]
    graphs += RANDOM
    solved = sep_checked = bad = 0
    for g in graphs:
        t = count_trees_det(g)
        f = {p: count_2forests_det(g, *p) for p in iter_pairs(g.n)}
        for strategy in ("balanced", "first"):
            solver = Solver(threshold=3, strategy=strategy)
            bad += solver.trees(g) != t
            for p, value in f.items():
                bad += solver.forests(g, *p) != value
            solved += 1 + len(f)
        for sep in all_separations(g):
            bad += trees_via_separation(sep) != t
            for (u, v), value in f.items():
                su, sv = sep.side(u), sep.side(v)
                rule = forests_cross if su and sv and su != sv else forests_same_side
                bad += rule(sep, u, v) != value
            sep_checked += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 600
    report(3, "reduction equals determinant", ok, f"{len(graphs)} graphs, {solved} solver queries, {sep_checked} separations, {bad} mismatches", elapsed)
    assert ok


def test_4_identification_identity():
    start = time.perf_counter()
    checked = bad = 0
    for g in RANDOM[:100]:
        for i, j in iter_pairs(g.n):
            for u, v in itertools.combinations(g.vertices(), 2):
                checked += 1
                bad += resistance_identified(g, i, j, u, v) != resistance_identified_direct(g, i, j, u, v)
    ok = bad == 0
    report(4, "identification resistance identity", ok, f"{checked} (u,v,i,j) tuples, {bad} mismatches", time.perf_counter() - start)
    assert ok


def test_5_sierpinski():
    start = time.perf_counter()
    rows = []
    for s in range(4):
        g = gen_sierpinski(s)
        t = count_trees_det(g)
        f = count_2forests_det(g, 1, 2)
        r = Fraction(f, t)
        rows.append(
            g.n == sierpinski_order(s)
            and r == Fraction(2, 3) * Fraction(5, 3) ** s == sierpinski_corner_resistance(s)
            and t == sierpinski_trees(s)
            and f == sierpinski_corner_forests(s)
            and f * 1 == r * t
        )
    ok = all(rows)
    report(5, "Sierpinski corner resistance", ok, f"stages 0..3 {rows}", time.perf_counter() - start)
    assert ok


def test_6_linear_2trees():
    start = time.perf_counter()
    checked = bad = 0
    for n in range(4, 15):
        h = gen_straight(n)
        t = count_trees_det(h)
        for u, v in iter_pairs(n):
            f = count_2forests_det(h, u, v)
            checked += 1
            bad += not (
                straight_forest_closed(u, v, n) == straight_forest_sum(u, v, n) == f
                and straight_resistance_closed(u, v - u, n) == Fraction(f, t)
            )
    for n in range(4, 13):
        for k in golden_k_range(n):
            g = gen_bent(n, k)
            t = count_trees_det(g)
            for u, v in iter_pairs(n):
                f = count_2forests_det(g, u, v)
                straight = straight_forest_closed(u, v, n)
                checked += 1
                ok_pair = bent_forest(u, v, n, k) == f
                if u <= k and v > k + 1:
                    ok_pair &= f < straight
                elif not is_cross_bend(u, v, k):
                    ok_pair &= f == straight
                bad += not ok_pair
            end_gap = fib(k - 2) * fib(k + 1) * fib(n - k - 2) * fib(n - k + 1)
            checked += 1
            bad += not (
                count_2forests_det(g, 1, n) == straight_forest_closed(1, n, n) - end_gap
                and bent_end_resistance(n, k) == Fraction(count_2forests_det(g, 1, n), t)
                == Fraction(n - 1, 5) + Fraction(4 * fib(n - 1), 5 * lucas(n - 1)) - Fraction(end_gap, t)
            )
    growth = [bent_end_resistance(n, 3) for n in range(6, 61)]
    growing = all(a < b for a, b in zip(growth, growth[1:]))
    ok = bad == 0 and growing
    report(6, "linear 2-tree closed forms", ok, f"{checked} checks, {bad} mismatches, end resistance monotone to n=60: {growing}", time.perf_counter() - start)
    assert ok


def test_7_pseudoinverse():
    start = time.perf_counter()
    worst = 0.0
    graphs = RANDOM + [gen_straight(30), gen_sierpinski(2), gen_bent(12, 4)]
    for g in graphs:
        for u, v in iter_pairs(g.n):
            exact = resistance(g, u, v)
            worst = max(worst, abs(resistance_pinv(g, u, v) - float(exact)) / float(exact))
    ok = worst <= 1e-9
    report(7, "pseudoinverse cross-check", ok, f"worst relative error {worst:.2e} over {len(graphs)} graphs", time.perf_counter() - start)
    assert ok


def test_8_benchmark(capsys):
    start = time.perf_counter()
    results = {}
    for method in ("det", "reduce"):
        for argv in (("trees",), ("forests", "-u", "1", "-v", "200")):
            code = cli.run([*argv, "--family", "straight", "--n", "200", "--method", method, "--format", "json"])
            out = capsys.readouterr().out
            assert code == 0
            results[(method, argv[0])] = json.loads(out)["result"]
    code = cli.run(["bench", "--family", "straight", "--n-range", "200..200", "--format", "json"])
    bench = json.loads(capsys.readouterr().out)
    elapsed = time.perf_counter() - start
    methods = {row["method"] for row in bench["rows"]}
    timed = all(row["seconds"] >= 0 for row in bench["rows"])
    same = all(results[("det", q)] == results[("reduce", q)] for q in ("trees", "forests"))
    ok = code == 0 and same and methods == {"det", "reduce"} and timed and bench["result"]["all_match"] and elapsed <= 60
    report(8, "benchmark sanity on straight n=200", ok, f"det == reduce: {same}, bench methods {sorted(methods)}", elapsed)
    assert ok
