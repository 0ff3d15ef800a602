"""Cross-engine equivalence checks and structural audits.

Failures are collected, never raised; a report is clean iff it has no
failures.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import counts, exactnum, hpt
from .exactnum import RecurrenceSpec, verify_recurrence
from .links import IN_DEGREE, OUT_DEGREE
from .pyramid import PyramidGraph, census, euclidean_level_values, face_rows, vertex_id

ROWS = ("a", "b", "c", "d", "e", "s")

# vertex-type census, levels 0..10
COUNT_TABLE = {
    "a": (0, 0, 3, 6, 12, 27, 66, 168, 435, 1134, 2964),
    "b": (0, 0, 0, 3, 12, 36, 99, 264, 696, 1827, 4788),
    "c": (0, 0, 0, 1, 3, 9, 34, 174, 1128, 8251, 63315),
    "d": (0, 0, 0, 0, 3, 24, 177, 1347, 10467, 82029, 644808),
    "e": (0, 0, 0, 0, 3, 39, 357, 2952, 23622, 186984, 1474773),
    "s": (1, 3, 6, 13, 36, 138, 736, 4908, 36351, 280228, 2190651),
}

# sums of vertex values per type, levels 0..10
SUM_TABLE = {
    "a": (0, 0, 6, 18, 54, 174, 582, 1974, 6726, 22950, 78342),
    "b": (0, 0, 0, 6, 30, 114, 402, 1386, 4746, 16218, 55386),
    "c": (0, 0, 0, 6, 36, 210, 1452, 12138, 114684, 1147002, 11729148),
    "d": (0, 0, 0, 0, 24, 324, 3600, 38148, 398112, 4132596, 42818208),
    "e": (0, 0, 0, 0, 18, 312, 3798, 41544, 438270, 4566120, 47368110),
    "s": (1, 3, 9, 33, 165, 1137, 9837, 95193, 962541, 9884889, 102049197),
}

COUNTS_RECURRENCE = RecurrenceSpec((12, -37, 37, -12, 1))
COUNTS_AB_RECURRENCE = RecurrenceSpec((4, -4, 1))
SUMS_RECURRENCE = RecurrenceSpec((18, -99, 226, -224, 92, -12))
SUMS_AB_RECURRENCE = RecurrenceSpec((5, -6, 2))

DELTA_FIXTURES = (Fraction("1.137480"), Fraction("-0.144699"), Fraction("0.007219"))


@dataclass
class Failure:
    where: str
    expected: str
    actual: str


@dataclass
class Check:
    name: str
    passed: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def expect(self, where: str, expected, actual) -> bool:
        if expected == actual:
            self.passed += 1
            return True
        self.failures.append(Failure(where, str(expected), str(actual)))
        return False

    def require(self, where: str, condition: bool, detail: str = "") -> bool:
        return self.expect(where, "true", "true" if condition else f"false{': ' + detail if detail else ''}")

    def to_dict(self) -> dict:
        first = self.failures[0] if self.failures else None
        return {
            "name": self.name,
            "status": self.status,
            "passed": self.passed,
            "failed": len(self.failures),
            "first_failure": None if first is None else first.where,
            "failures": [vars(f) for f in self.failures],
        }


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[tuple[str, Failure]]:
        return [(c.name, f) for c in self.checks for f in c.failures]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            tail = f" first failure at {c.failures[0].where}" if c.failures else ""
            lines.append(f"{c.status.upper():4}  {c.name}  ({c.passed} ok, {len(c.failures)} failed){tail}")
        return lines


# --------------------------------------------------------------------------

def verify_tables(count_table=COUNT_TABLE, sum_table=SUM_TABLE, euclidean_levels: int = 20) -> VerificationReport:
    """Recurrence output against the embedded tables, cell by cell."""
    rep = VerificationReport()
    for name, table, vecs in (
        ("count_table", count_table, counts.count_vectors(10)),
        ("sum_table", sum_table, counts.sum_vectors(10)),
    ):
        chk = Check(name)
        for kind in ROWS:
            for n in range(11):
                chk.expect(f"({kind},{n})", table[kind][n], vecs[n].get(kind))
        rep.checks.append(chk)
    chk = Check("euclidean_level_sizes")
    for v in counts.euclidean_counts(euclidean_levels):
        chk.expect(f"(s,{v.n})", (v.n + 1) * (v.n + 2) // 2, v.s)
    rep.checks.append(chk)
    return rep


def cross_check(n_max: int, graph: PyramidGraph | None = None, graph_cap: int = 8,
                precision_bits: int = 256) -> VerificationReport:
    """Graph census vs recurrences vs closed forms vs recurrence certificates."""
    rep = VerificationReport()
    cv = counts.count_vectors(max(n_max, 30))
    sv = counts.sum_vectors(max(n_max, 30))

    # (i) graph engine
    chk = Check("graph_census_vs_recurrences")
    glevels = min(n_max, graph_cap)
    if graph is None:
        graph = PyramidGraph(cap=max(glevels, 0))
    graph.build_to(glevels)
    for n in range(glevels + 1):
        c, s = census(graph, n)
        chk.expect(f"counts level {n}", cv[n].as_row(), c.as_row())
        chk.expect(f"sums level {n}", sv[n].as_row(), s.as_row())
    rep.checks.append(chk)

    # (ii) closed forms
    chk = Check("explicit_counts_vs_recurrences")
    for n in range(1, n_max + 1):
        for kind in ROWS:
            chk.expect(f"({kind},{n})", cv[n].get(kind), counts.explicit_count(kind, n))
    rep.checks.append(chk)
    chk = Check("explicit_sums_ab_vs_recurrences")
    for n in range(1, n_max + 1):
        for kind in ("a", "b"):
            chk.expect(f"(hat {kind},{n})", sv[n].get(kind), counts.explicit_sum_ab(kind, n))
    rep.checks.append(chk)
    chk = Check("explicit_sum_total_vs_recurrences")
    with mpmath.workprec(precision_bits):
        tol = mpmath.mpf(2) ** (-(precision_bits // 2))
        for n in range(1, n_max + 1):
            approx = counts.explicit_sum_total(n, precision_bits)
            rel = abs(approx - sv[n].s) / sv[n].s
            chk.require(f"(hat s,{n})", rel <= tol, f"relative error {mpmath.nstr(rel, 5)}")
        model = counts.sums_model(precision_bits)
        for i, (got, want) in enumerate(zip(model.deltas, DELTA_FIXTURES), start=4):
            err = abs(got - mpmath.mpf(want.numerator) / want.denominator)
            chk.require(f"delta_{i}", err <= mpmath.mpf("5e-7"), mpmath.nstr(got, 10))
    rep.checks.append(chk)

    # (iii) recurrence certificates on generated terms
    chk = Check("scalar_recurrences_hold")
    for kind in ROWS:
        seq = [v.get(kind) for v in cv]
        chk.require(f"counts {kind} order 5 from 6", verify_recurrence(seq, COUNTS_RECURRENCE, 6))
        seq = [v.get(kind) for v in sv]
        chk.require(f"sums {kind} order 6 from 7", verify_recurrence(seq, SUMS_RECURRENCE, 7))
    for kind in ("a", "b"):
        chk.require(f"counts {kind} order 3 from 4",
                    verify_recurrence([v.get(kind) for v in cv], COUNTS_AB_RECURRENCE, 4))
        chk.require(f"sums {kind} order 3 from 4",
                    verify_recurrence([v.get(kind) for v in sv], SUMS_AB_RECURRENCE, 4))
    rep.checks.append(chk)

    # (iv) polynomial fixtures
    chk = Check("matrix_polynomials")
    x = exactnum.RationalPolynomial.x()
    one = exactnum.RationalPolynomial([1])
    chk.expect("minpoly(counts M)", "x^5 - 12x^4 + 37x^3 - 37x^2 + 12x - 1",
               str(exactnum.minpoly(counts.COUNTS_MATRIX)))
    chk.expect("charpoly(counts M_ab)", "x^3 - 4x^2 + 4x - 1", str(exactnum.charpoly(counts.COUNTS_AB_MATRIX)))
    want = (x - one) * (x * x - 4 * x + 2 * one) * (x * x * x - 13 * x * x + 28 * x - 6 * one)
    chk.expect("charpoly(sums M)", str(want), str(exactnum.charpoly(counts.SUMS_MATRIX)))
    for label, m, mode, spec in (
        ("counts M minimal", counts.COUNTS_MATRIX, "minimal", COUNTS_RECURRENCE),
        ("counts M_ab characteristic", counts.COUNTS_AB_MATRIX, "characteristic", COUNTS_AB_RECURRENCE),
        ("sums M characteristic", counts.SUMS_MATRIX, "characteristic", SUMS_RECURRENCE),
        ("sums M_ab characteristic", counts.SUMS_AB_MATRIX, "characteristic", SUMS_AB_RECURRENCE),
    ):
        chk.expect(label, spec.coefficients, exactnum.scalar_recurrence(m, mode).coefficients)
    rep.checks.append(chk)
    return rep


def structural_audit(g: PyramidGraph, face_levels: int | None = None) -> VerificationReport:
    """Degree, merge-class, edge-layering, value and face invariants of a built graph."""
    rep = VerificationReport()
    indeg, outdeg, classes = Check("in_degree_by_type"), Check("out_degree_by_type"), Check("merge_classes")
    layer, values, interior = Check("edges_join_consecutive_levels"), Check("value_is_sum_of_parents"), Check(
        "face_to_interior_children")
    faces, div3 = Check("face_rows_equal_triangle_rows"), Check("face_counts_divisible_by_3")
    face_types = {"apex", "1", "A", "B"}
    size_ok = {"1": 1, "A": 2, "B": 1, "C": 3, "D": 2, "E": 1}

    for n in range(g.top + 1):
        lv = g.levels[n]
        types = lv.types
        prev = g.levels[n - 1] if n else None
        for k, ty in enumerate(types):
            ps = lv.parents[k]
            vid = vertex_id(n, k)
            indeg.expect(vid, IN_DEGREE[ty], len(ps))
            if ty in size_ok:
                classes.expect(vid, size_ok[ty], len(ps))
            valid = prev is not None and all(0 <= p < len(prev) for p in ps) and len(set(ps)) == len(ps)
            if n == 0:
                valid = not ps
            layer.require(vid, valid, f"parents {list(ps)}")
            if not valid:
                continue
            if n == 0:
                values.expect(vid, 1, lv.value[k])
                continue
            values.expect(vid, sum(prev.value[p] for p in ps), lv.value[k])
            ptypes = [prev.type_of(p) for p in ps]
            if ty in face_types:
                classes.require(f"{vid} face slots only", all(t in face_types for t in ptypes), str(ptypes))
        if n < g.top:
            nxt = g.levels[n + 1]
            out = Counter()
            inner = {k: [] for k in range(len(lv))}
            for z, ps in enumerate(nxt.parents):
                zt = nxt.type_of(z)
                for p in ps:
                    out[p] += 1
                    if zt in ("C", "D", "E") and p in inner:
                        inner[p].append(zt)
            for k, ty in enumerate(types):
                vid = vertex_id(n, k)
                outdeg.expect(vid, OUT_DEGREE[ty], out[k])
                want = {"A": ["C"], "B": ["D"], "1": [], "apex": []}.get(ty)
                if want is not None:
                    interior.expect(vid, want, inner[k])
        if n >= 1:
            c, _ = census(g, n)
            div3.require(f"level {n}", c.a % 3 == 0 and c.b % 3 == 0, f"a={c.a} b={c.b}")

    top_face = g.top if face_levels is None else min(face_levels, g.top)
    for n in range(top_face + 1):
        want = hpt.row(5, n)
        for f in range(3):
            faces.expect(f"face {f} row {n}", want.values, face_rows(g, f, n).values)
            faces.expect(f"face {f} row {n} kinds", want.kinds, face_rows(g, f, n).kinds)

    for sz_level, sizes in enumerate(g.class_sizes):
        classes.require(f"level {sz_level} class sizes", set(sizes) <= {1, 2, 3}, str(sizes))

    rep.checks += [indeg, outdeg, classes, layer, values, interior, faces, div3]
    return rep


def run_all(levels: int = 8, graph: PyramidGraph | None = None, n_max: int = 50) -> VerificationReport:
    rep = verify_tables()
    g = graph if graph is not None else PyramidGraph(cap=max(levels, 0))
    g.build_to(levels)
    rep.extend(cross_check(max(n_max, levels), graph=g, graph_cap=levels))
    rep.extend(structural_audit(g))
    chk = Check("euclidean_trinomial_sums")
    for n in range(21):
        lvl = euclidean_level_values(n)
        chk.expect(f"level {n} sum", 3 ** n, sum(map(sum, lvl)))
        chk.expect(f"level {n} size", (n + 1) * (n + 2) // 2, sum(map(len, lvl)))
    rep.checks.append(chk)
    return rep



