import json

import pytest

from hyperpyramid import verify
from hyperpyramid.pyramid import PyramidGraph


def _altered(table, kind, n, value):
    t = {k: list(v) for k, v in table.items()}
    t[kind][n] = value
    return t


def test_tables_pass():
    rep = verify.verify_tables()
    assert rep.ok
    assert rep.check("count_table").passed + rep.check("sum_table").passed == 132


def test_single_altered_cell_is_located():
    rep = verify.verify_tables(count_table=_altered(verify.COUNT_TABLE, "d", 6, 178))
    assert not rep.ok
    [(name, failure)] = rep.failures
    assert name == "count_table"
    assert failure.where == "(d,6)"
    assert (failure.expected, failure.actual) == ("178", "177")


def test_report_json_is_deterministic():
    a = verify.verify_tables(sum_table=_altered(verify.SUM_TABLE, "s", 10, 1)).to_json()
    b = verify.verify_tables(sum_table=_altered(verify.SUM_TABLE, "s", 10, 1)).to_json()
    assert a == b
    data = json.loads(a)
    assert data["ok"] is False
    assert [c["first_failure"] for c in data["checks"] if c["status"] == "fail"] == ["(s,10)"]


def test_cross_check(graph8):
    rep = verify.cross_check(50, graph=graph8, graph_cap=8)
    assert rep.ok, rep.summary_lines()
    assert rep.check("explicit_counts_vs_recurrences").passed == 300


def test_structural_audit(graph8):
    rep = verify.structural_audit(graph8)
    assert rep.ok, rep.summary_lines()


def test_audit_reports_corrupted_vertex():
    g = PyramidGraph(cap=6).build_to(6)
    lv = g.levels[6]
    k = next(i for i, p in enumerate(lv.parents) if len(p) == 3)
    lv.parents[k] = lv.parents[k][:2]
    rep = verify.structural_audit(g)
    wheres = [f.where for f in rep.check("in_degree_by_type").failures]
    assert wheres == [f"6:{k}"]


def test_audit_detects_out_of_range_parent():
    g = PyramidGraph(cap=3).build_to(3)
    g.levels[3].parents[0] = (0, 99)
    rep = verify.structural_audit(g)
    assert [f.where for f in rep.check("edges_join_consecutive_levels").failures] == ["3:0"]


def test_audit_detects_wrong_value():
    g = PyramidGraph(cap=4).build_to(4)
    g.levels[4].value[5] += 1
    rep = verify.structural_audit(g)
    assert not rep.check("value_is_sum_of_parents").ok
    assert not rep.check("face_rows_equal_triangle_rows").ok or g.levels[4].type_of(5) in "CDE"
