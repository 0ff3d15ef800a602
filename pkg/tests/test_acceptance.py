"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the bare list.
"""
import random
import sys
import time
import timeit
from fractions import Fraction
from math import comb

import mpmath
import pytest

from hyperpyramid import counts, exactnum, hpt, verify
from hyperpyramid.exactnum import RationalMatrix, RationalPolynomial
from hyperpyramid.pyramid import PyramidGraph, census, euclidean_level_values, face_rows

ROWS = verify.ROWS


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        line = f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def best_time(fn, repeat=5):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


@pytest.fixture(scope="module")
def graph():
    start = time.perf_counter()
    g = PyramidGraph(cap=8).build_to(8)
    return g, time.perf_counter() - start


def test_01_census_table(report):
    vecs = counts.count_vectors(10)
    bad = [(k, n) for k in ROWS for n in range(11) if vecs[n].get(k) != verify.COUNT_TABLE[k][n]]
    t = best_time(lambda: counts.count_vectors(10))
    report(1, "census table reproduced (66 cells, < 10 ms)", not bad and t < 0.010,
           f"{66 - len(bad)}/66 cells, {t * 1e3:.3f} ms")


def test_02_sum_table(report):
    vecs = counts.sum_vectors(10)
    bad = [(k, n) for k in ROWS for n in range(11) if vecs[n].get(k) != verify.SUM_TABLE[k][n]]
    t = best_time(lambda: counts.sum_vectors(10))
    report(2, "value-sum table reproduced (66 cells, < 10 ms)", not bad and t < 0.010,
           f"{66 - len(bad)}/66 cells, {t * 1e3:.3f} ms")


def test_03_graph_engine(graph, report):
    g, elapsed = graph
    bad = []
    for n in range(9):
        c, s = census(g, n)
        for k in ROWS:
            if c.get(k) != verify.COUNT_TABLE[k][n] or s.get(k) != verify.SUM_TABLE[k][n]:
                bad.append((k, n))
    size8 = len(g.level(8))
    report(3, "graph census and value sums equal both tables for n <= 8 (< 10 s)",
           not bad and size8 == 36351 and elapsed < 10, f"{size8} vertices at level 8, built in {elapsed:.2f} s")


def test_04_closed_forms(report):
    cv, sv = counts.count_vectors(50), counts.sum_vectors(50)
    bad = [(k, n) for k in ROWS for n in range(1, 51) if counts.explicit_count(k, n) != cv[n].get(k)]
    bad += [("hat " + k, n) for k in "ab" for n in range(1, 51) if counts.explicit_sum_ab(k, n) != sv[n].get(k)]
    report(4, "closed forms equal recurrences exactly, 1 <= n <= 50", not bad, f"{len(bad)} mismatches")


def test_05_recurrence_certificates(report):
    x, one = RationalPolynomial.x(), RationalPolynomial([1])
    ok = str(exactnum.minpoly(counts.COUNTS_MATRIX)) == "x^5 - 12x^4 + 37x^3 - 37x^2 + 12x - 1"
    want = (x - one) * (x * x - 4 * x + 2 * one) * (x * x * x - 13 * x * x + 28 * x - 6 * one)
    ok &= exactnum.charpoly(counts.SUMS_MATRIX) == want
    cv, sv = counts.count_vectors(30), counts.sum_vectors(30)
    cases = [
        (verify.COUNTS_RECURRENCE, cv, ROWS, 6),
        (verify.COUNTS_AB_RECURRENCE, cv, "ab", 4),
        (verify.SUMS_RECURRENCE, sv, ROWS, 7),
        (verify.SUMS_AB_RECURRENCE, sv, "ab", 4),
    ]
    for spec, vecs, kinds, start in cases:
        for k in kinds:
            seq = [v.get(k) for v in vecs]
            assert len(seq) == 31
            ok &= exactnum.verify_recurrence(seq, spec, start)
    report(5, "minpoly/charpoly fixtures and four scalar recurrences on 30 terms", ok)


def test_06_growth_ratios(report):
    with mpmath.workprec(256):
        e1 = abs(counts.growth_ratio("counts", 25) - (4 + mpmath.sqrt(15)))
        lo, hi = exactnum.isolate_real_roots(counts.SUMS_CUBIC, 80)[-1]
        width = hi - lo
        alpha6 = counts.dominant_sums_root(256)
        inside = mpmath.mpf(lo.numerator) / lo.denominator <= alpha6 <= mpmath.mpf(hi.numerator) / hi.denominator
        e2 = abs(counts.growth_ratio("sums", 30) - alpha6)
        ok = e1 < 1e-8 and e2 < 1e-8 and width < Fraction(1, 10 ** 20) and inside
    report(6, "growth ratios within 1e-8 of 4+sqrt(15) and alpha_6", ok,
           f"{mpmath.nstr(e1, 3)}, {mpmath.nstr(e2, 3)}; root interval width {float(width):.1e}")


def test_07_delta_recovery(report):
    model = counts.sums_model(256)
    with mpmath.workprec(256):
        errs = [abs(d - mpmath.mpf(w)) for d, w in zip(model.deltas, ("1.137480", "-0.144699", "0.007219"))]
        s10 = counts.sum_vectors(10)[10].s
        rel = abs(counts.explicit_sum_total(10, 256) - s10) / s10
        ok = all(e <= mpmath.mpf("5e-7") for e in errs) and rel < mpmath.mpf(10) ** -20
    report(7, "delta_4..6 recovered within 5e-7; explicit total at n=10 within 1e-20", ok,
           f"max delta error {mpmath.nstr(max(errs), 3)}, relative {mpmath.nstr(rel, 3)}")


def test_08_euclidean(report):
    ok = all(v.s == (v.n + 1) * (v.n + 2) // 2 for v in counts.euclidean_counts(20))
    ok &= all(sum(map(sum, euclidean_level_values(n))) == 3 ** n for n in range(21))
    report(8, "Euclidean sizes (n+1)(n+2)/2 and trinomial sums 3^n, n <= 20", ok)


def test_09_faces(graph, report):
    g, _ = graph
    ok = all(face_rows(g, f, n) == hpt.row(5, n) for f in range(3) for n in range(9))
    ok &= all(hpt.row(4, n).values == tuple(comb(n, k) for k in range(n + 1)) for n in range(13))
    report(9, "face rows equal {4,5} triangle rows (n <= 8); q=4 gives binomials (n <= 12)", ok)


def test_10_structural_audit(graph, report):
    g, _ = graph
    ok = verify.structural_audit(g).ok
    # every single-edge corruption on a smaller graph must be caught
    small = PyramidGraph(cap=5).build_to(5)
    rng = random.Random(20261015)
    missed, tried = [], 0
    for n in range(1, 6):
        lv, prev = small.levels[n], small.levels[n - 1]
        for k in range(len(lv)):
            orig = lv.parents[k]
            options = [orig[:i] + orig[i + 1:] for i in range(len(orig))]  # drop one edge
            others = [p for p in range(len(prev)) if p not in orig]
            if others:
                options.append(orig + (rng.choice(others),))  # add one edge
                options += [orig[:i] + (rng.choice(others),) + orig[i + 1:] for i in range(len(orig))]  # redirect
            for bad in options:
                lv.parents[k] = bad
                tried += 1
                if verify.structural_audit(small, face_levels=0).ok:
                    missed.append((n, k, bad))
            lv.parents[k] = orig
    ok &= verify.structural_audit(small).ok
    report(10, "structural audit passes to level 8; every single-edge corruption detected",
           ok and not missed, f"{tried} corruptions tried, {len(missed)} missed")


def test_11_recurrence_property(report):
    rng = random.Random(3)

    def entry():
        d = rng.randint(1, 3)
        return Fraction(rng.randint(-3 * d, 3 * d), d)

    failures = 0
    for _ in range(100):
        k = rng.randint(1, 5)
        m = RationalMatrix([[entry() for _ in range(k)] for _ in range(k)])
        alpha, a0 = [entry() for _ in range(k)], [entry() for _ in range(k)]
        seq = exactnum.generate(m, alpha, a0, 20)
        spec = exactnum.scalar_recurrence(m, "characteristic")
        if not exactnum.verify_recurrence(seq, spec, spec.order):
            failures += 1
    report(11, "derived recurrence holds on 20 terms for 100 random rational systems (k <= 5)",
           failures == 0, f"{failures} failures")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
