"""Acceptance gate: one pass/fail line per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import io
import resource
import sys
import time

import pytest

from klkit import IntPoly, build_system
from klkit.cli import run
from klkit.coxeter import CoxeterSystem
from klkit.delorme import (TransitionMatrix, characters_matrix, delorme_table, ext_ll_table,
                           kl_inversion_matrix, verify_kl_structure, verma_in_simples)
from klkit.findim import (bar_module, build_algebra, check_conjectures, derived_order,
                          end_dimensions, ext_series, preset, simple, solve_dk, std_quotient)
from klkit.hc import weighted_ext_table, sample_sl2r, weyl_dataset
from klkit.kl import kl_oracle, kl_polynomial, kl_table
from klkit.poly import LaurentPoly

TYPES = ["A1", "A1xA1", "A2", "B2", "G2", "A3", "B3"]


def oracle_equivalence():
    start = time.perf_counter()
    mismatches = pairs = 0
    for name in TYPES:
        system = CoxeterSystem(name)
        table = kl_table(system)
        for y in table.elements:
            oracle = kl_oracle(system, y)
            for x in table.elements:
                pairs += 1
                mismatches += table[x, y] != oracle.get(x, IntPoly())
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60
    return ok, f"{pairs} pairs, {mismatches} mismatches, {elapsed:.2f}s (limit 60s)"


def structural_properties():
    failing = [name for name in TYPES if not verify_kl_structure(build_system(name))["pass"]]
    a3 = build_system("A3")
    p = kl_polynomial(a3, a3.identity, a3.from_word([2, 1, 3, 2]))
    ok = not failing and p == IntPoly([1, 1])
    return ok, f"failing types {failing}; P(e, 2 1 3 2) in A3 = {p.format('q')}"


def transition_matrices():
    bad = []
    for name in TYPES:
        system = build_system(name)
        chars = characters_matrix(system)
        inv = chars.inverse()
        ident = TransitionMatrix.identity(chars.elements)
        checks = [chars.is_unitriangular(),
                  all(isinstance(v, int) for row in inv.entries for v in row),
                  chars @ verma_in_simples(system) == ident,
                  inv == kl_inversion_matrix(system)]
        if not all(checks):
            bad.append(name)
    return not bad, f"failing types {bad}; inverse compared with P(w0 y, w0 x)(1) entrywise"


def rank_one_two_routes():
    start = time.perf_counter()
    alg = build_algebra(preset("sl2"))
    problems = []
    if alg.dimension != 5:
        problems.append("dim A")
    pd, leq = derived_order(alg)
    recipes = {}
    for i in alg.vertices:
        not_below = {j for j in alg.vertices if not leq[j][i]}
        above = {j for j in alg.vertices if j != i and leq[i][j]}
        a, b = std_quotient(alg, i, not_below), std_quotient(alg, i, above)
        if a.dim_vector != b.dim_vector:
            problems.append(f"recipes differ at {i}")
        recipes[i] = a
    if (recipes["e"].dim_vector, recipes["s"].dim_vector) != ((1, 0), (1, 1)):
        problems.append("standard dims")
    if any(end_dimensions(bar_module(m))[0] != 1 for m in recipes.values()):
        problems.append("End dims")
    a1 = build_system("A1")
    dt, ll = delorme_table(a1), ext_ll_table(a1)
    expected = {("e", "e"): [1], ("e", "s"): [0, 1], ("s", "e"): [], ("s", "s"): [1]}
    names = ["e", "s"]
    total = 0
    for x, xn in enumerate(names):
        for y, yn in enumerate(names):
            a = ext_series(recipes[xn], yn)
            if list(a.coeffs) != expected[xn, yn] or a != dt.a[x][y]:
                problems.append(f"a({xn},{yn})")
            e = ext_series(simple(alg, xn), yn)
            if e != ll[x][y]:
                problems.append(f"ext({xn},{yn})")
            total += e(1)
    if ll[1][1] != IntPoly([1, 0, 1]):
        problems.append("ext(s,s)")
    if total != 5:
        problems.append(f"sum at t=1 is {total}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 5
    return ok, f"problems {problems}; {elapsed:.2f}s (limit 5s)"


def conjecture_checker():
    report = check_conjectures(build_algebra(preset("sl2")))
    conj = report["conjectures"]
    problems = []
    if report["projectiveDimension"] != {"e": 1, "s": 2}:
        problems.append("pd")
    if report["order"] != [["e", "s"]]:
        problems.append("order")
    if not all(conj[k]["pass"] for k in "1234"):
        problems.append("conjectures 1-4")
    if not conj["5"]["allOnesInSolutionSet"]:
        problems.append("d = (1,1)")
    loop = check_conjectures(build_algebra(preset("loop_x2")))
    if loop["applicable"] or not loop.get("truncated"):
        problems.append("loop fixture not flagged")
    one, zero = IntPoly([1]), IntPoly()
    bad = solve_dk([[one, zero], [zero, one]], [[one, one], [zero, one]])
    if bad.status != "inconsistent":
        problems.append("inconsistent fixture")
    return not problems, f"problems {problems}"


def hc_evaluator():
    res = weighted_ext_table(sample_sl2r())
    t = res.table
    expected = {("ds+", "ds+"): LaurentPoly(0, [1]), ("ds-", "ds-"): LaurentPoly(0, [1]),
                ("ps", "ps"): LaurentPoly(0, [1, 0, 1]), ("ds+", "ps"): LaurentPoly(1, [1]),
                ("ds-", "ps"): LaurentPoly(1, [1]), ("ds+", "ds-"): LaurentPoly()}
    problems = [k for k, v in expected.items() if t[k] != v]
    if res.warnings:
        problems.append("warnings")
    for name in ["A1", "A2"]:
        system = build_system(name)
        got = weighted_ext_table(weyl_dataset(system)).matrix()
        ll = ext_ll_table(system)
        if any(got[i][j] != LaurentPoly.from_intpoly(ll[i][j])
               for i in range(len(ll)) for j in range(len(ll))):
            problems.append(name)
    return not problems, f"problems {problems}"


def performance():
    start = time.perf_counter()
    kl_table(CoxeterSystem("A4"))
    t_a4 = time.perf_counter() - start
    a5 = CoxeterSystem("A5")
    start = time.perf_counter()
    p = kl_polynomial(a5, a5.identity, a5.longest_element())
    t_a5 = time.perf_counter() - start
    outputs = []
    for threads in ("1", "4"):
        buf = io.StringIO()
        run(["kl", "table", "--type", "A4", "--threads", threads], stdout=buf)
        outputs.append(buf.getvalue())
    rss_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    ok = t_a4 < 5 and t_a5 < 10 and p == IntPoly([1]) and rss_mb < 2048 and \
        outputs[0] == outputs[1]
    return ok, (f"A4 table {t_a4:.2f}s (limit 5s), A5 pair {t_a5:.2f}s (limit 10s), "
                f"peak RSS {rss_mb:.0f} MB (limit 2048), threads identical: "
                f"{outputs[0] == outputs[1]}")


CRITERIA = [
    (1, "oracle equivalence on seven types", oracle_equivalence),
    (2, "structural KL properties and A3 example", structural_properties),
    (3, "character transition matrices", transition_matrices),
    (4, "rank-one path algebra against KL route", rank_one_two_routes),
    (5, "conjecture checker fixtures", conjecture_checker),
    (6, "Harish-Chandra evaluator", hc_evaluator),
    (7, "performance, memory, thread identity", performance),
]


def line(num, title, ok, detail):
    return f"criterion {num} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"


@pytest.mark.parametrize("num,title,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, check, record_property):
    ok, detail = check()
    text = line(num, title, ok, detail)
    record_property("acceptance", text)
    print(text)
    assert ok, text


if __name__ == "__main__":
    results = []
    for num, title, check in CRITERIA:
        ok, detail = check()
        results.append(ok)
        print(line(num, title, ok, detail))
    sys.exit(0 if all(results) else 1)
