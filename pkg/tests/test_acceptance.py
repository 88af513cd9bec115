"""Acceptance criteria, one test each, with their runtime budgets.

Each test prints a single ``PASS``/``FAIL`` line to the terminal.  Run the
file directly (``python3 tests/test_acceptance.py``) for the summary without
pytest.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from conftest import corpus_complex, corpus_presentation  # noqa: E402

from cohodim.abgroup import FgAbelianGroup, IntMatrix, abelianization, smith_normal_form  # noqa: E402
from cohodim.permgroup import (  # noqa: E402
    commutator_subgroup,
    quotient_abelian_invariants,
    subgroup_series,
    to_permutation_group,
    todd_coxeter,
)
from cohodim.pontryagin import DEFAULT_SIMPLEX_CAP, PATCH_FACE_COUNT, rel_class_fate, stage, stage_report  # noqa: E402
from cohodim.reduction import lcs_tensor_epimorphism_check, solvable_reduction  # noqa: E402
from cohodim.simplicial import Q, Z, CoefficientSequence, bockstein_check, build_chain_complex, homology, zmod  # noqa: E402


def realize(name):
    return to_permutation_group(todd_coxeter(corpus_presentation(name)))


# ---------------------------------------------------------------- criteria


def criterion_1():
    expected = {"gamma2": [4, 4], "dinfty": [2, 2], "gamma1": [2, 2, 4]}
    worst, failures = 0.0, []
    for name, factors in expected.items():
        t0 = time.perf_counter()
        got = abelianization(corpus_presentation(name))
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        if got != FgAbelianGroup.from_cyclic(factors):
            failures.append(f"{name} gave {got}")
        if dt >= 1.0:
            failures.append(f"{name} took {dt:.2f}s")
    detail = "; ".join(failures) or f"Z/4+Z/4, Z/2+Z/2, Z/2+Z/2+Z/4; slowest {worst * 1000:.1f} ms"
    return not failures, detail, 1.0


SMALL = ["trivial", "cyclic5", "s3", "s4", "a4", "d4", "q8"]  # order <= 24


def criterion_2():
    failures = []
    for name in SMALL:
        order = oracles.brute_force_order(name)
        pres = corpus_presentation(name)
        if not oracles.relators_hold(name, pres):
            failures.append(f"{name}: model breaks a relator")
        t = todd_coxeter(pres)
        if t.num_cosets != order:
            failures.append(f"{name}: {t.num_cosets} cosets vs {order}")
        g = to_permutation_group(t)
        snf = abelianization(pres)
        quot = quotient_abelian_invariants(g, commutator_subgroup(g, g, g))
        brute = FgAbelianGroup.from_cyclic(oracles.brute_force_abelian_invariants(name))
        if not (snf == quot == brute):
            failures.append(f"{name}: SNF {snf}, quotient {quot}, brute force {brute}")
    return not failures, "; ".join(failures) or f"{len(SMALL)} groups agree", 10.0


SOLVABLE = ["trivial", "cyclic5", "s3", "s4", "a4", "d4", "q8", "heis27"]


def criterion_3():
    failures = []
    for name in SOLVABLE + ["a5"]:
        g = realize(name)
        solvable = subgroup_series(g).solvable
        trace = solvable_reduction(g)
        want = 1 if solvable else 60
        if name in SOLVABLE and not solvable:
            failures.append(f"{name} not solvable")
        if trace.terminal_order != want:
            failures.append(f"{name}: terminal order {trace.terminal_order}, want {want}")
        if not trace.steps[-1].abelianization.is_trivial:
            failures.append(f"{name}: terminal abelianization {trace.steps[-1].abelianization}")
        orders = [s.order for s in trace.steps]
        if any(a <= b for a, b in zip(orders, orders[1:])):
            failures.append(f"{name}: orders {orders} not decreasing")
    return not failures, "; ".join(failures) or "solvable groups reach 1, A5 stays at 60", 30.0


def criterion_4():
    failures, checked = [], 0
    for name in ("d4", "q8", "heis27"):
        g = realize(name)
        cls = subgroup_series(g).nilpotency_class
        for i in range(1, cls + 1):
            r = lcs_tensor_epimorphism_check(g, i)
            checked += 1
            if not (r.surjective and r.well_defined and r.bilinear):
                failures.append(f"{name} level {i}")
    return not failures, "; ".join(failures) or f"{checked} levels surjective", 5.0


def criterion_5():
    cases = {"s2": corpus_complex("s2"), "rp2_6": corpus_complex("rp2_6"),
             "mobius rel": corpus_complex("mobius"), "torus": corpus_complex("torus")}
    failures, checked = [], 0
    for name, (k, rel) in cases.items():
        for n in (2, 3, 5):
            for integral in (True, False):
                rep = bockstein_check(k, rel, CoefficientSequence(n, integral))
                checked += 1
                if not rep.exact:
                    failures.append(f"{name} {CoefficientSequence(n, integral)}")
    return not failures, "; ".join(failures) or f"{checked} sequences exact through degree 3", 10.0


def criterion_6():
    failures = []
    two = rel_class_fate(1, 2, 2).column
    three = rel_class_fate(1, 2, 3).column
    if two != [1, 1, 1]:
        failures.append(f"Z/2 column {two}")
    if three != [1, 0, 0]:
        failures.append(f"Z/3 column {three}")
    stages = 0
    for n in (1, 2, 3, 6):
        g = 1
        while n * PATCH_FACE_COUNT ** g <= DEFAULT_SIMPLEX_CAP:
            s = stage(n, g)
            absolute = stage_report(s, Z, False, kind="homology")
            relative = stage_report(s, Z, True, kind="homology")
            stages += 1
            if not absolute.group(2).is_trivial:
                failures.append(f"n={n} g={g}: H_2 = {absolute.group(2)}")
            odd = [d for d in relative.group(1).invariant_factors if d & (d - 1)]
            if odd:
                failures.append(f"n={n} g={g}: odd torsion {odd}")
            g += 1
    detail = "; ".join(failures) or f"Z/2 {two}, Z/3 {three}; {stages} stages with H_2 = 0, 2-primary H_1 torsion"
    return not failures, detail, 60.0


def _check_snf(rows, cols, rng):
    m = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)], cols)
    s, u, v = smith_normal_form(m)
    if u @ m @ v != s or not s.is_diagonal():
        return False
    if abs(u.determinant()) != 1 or abs(v.determinant()) != 1:
        return False
    d = [x for x in s.diagonal_entries() if x]
    return all(b % a == 0 for a, b in zip(d, d[1:])) and all(x > 0 for x in d)


def criterion_7():
    failures = []
    complexes = [corpus_complex(n) for n in ("s2", "rp2_6", "torus", "mobius", "disk3")]
    complexes += [(stage(1, 2).complex, stage(1, 2).boundary_mark)]
    for k, rel in complexes:
        for r in (None, rel) if rel is not None else (None,):
            c = build_chain_complex(k, Z, r)
            for d in range(2, c.top + 1):
                a, b = c.boundary_rows(d - 1), c.boundary_rows(d)
                if a and b and a[0] and b[0]:
                    prod = [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))]
                            for i in range(len(a))]
                    if any(x for row in prod for x in row):
                        failures.append("boundary squared is nonzero")
            hz = homology(c)
            hq = homology(build_chain_complex(k, Q, r))
            chi = k.euler_characteristic() - (r.euler_characteristic() if r is not None else 0)
            if sum((-1) ** d * g.rank for d, g in enumerate(hq.groups)) != chi:
                failures.append("Euler characteristic mismatch")
            for p in (2, 3, 5):
                hp = homology(build_chain_complex(k, zmod(p), r))
                for d in range(len(hz.groups)):
                    below = hz.group(d - 1).p_rank(p) if d else 0
                    if hp[d].rank != hq[d].rank + hz.group(d).p_rank(p) + below:
                        failures.append(f"universal coefficients fail at p={p}, degree {d}")
    rng = random.Random(7)
    bad = sum(not _check_snf(rng.randint(1, 6), rng.randint(1, 6), rng) for _ in range(500))
    if bad:
        failures.append(f"{bad} of 500 SNF postconditions failed")
    return not failures, "; ".join(failures) or "boundary, Euler, UCT on corpus; 500 SNFs verified", 60.0


CRITERIA = [
    ("1 abelianization claims", criterion_1),
    ("2 group oracle equivalence", criterion_2),
    ("3 solvable reduction", criterion_3),
    ("4 lower central epimorphism", criterion_4),
    ("5 Bockstein exactness", criterion_5),
    ("6 Pontryagin dichotomy", criterion_6),
    ("7 structural invariants", criterion_7),
]


def evaluate(fn):
    t0 = time.perf_counter()
    ok, detail, budget = fn()
    elapsed = time.perf_counter() - t0
    if elapsed >= budget:
        ok = False
        detail += f"; over budget ({elapsed:.2f}s >= {budget:.0f}s)"
    return ok, detail, elapsed, budget


def line(label, ok, detail, elapsed, budget):
    return f"{'PASS' if ok else 'FAIL'}  criterion {label}  [{elapsed:.2f}s / {budget:.0f}s]  {detail}"


@pytest.mark.parametrize("label, fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, fn, capsys):
    ok, detail, elapsed, budget = evaluate(fn)
    with capsys.disabled():
        print("\n" + line(label, ok, detail, elapsed, budget))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for label, fn in CRITERIA:
        ok, detail, elapsed, budget = evaluate(fn)
        print(line(label, ok, detail, elapsed, budget))
        results.append(ok)
    sys.exit(0 if all(results) else 1)
