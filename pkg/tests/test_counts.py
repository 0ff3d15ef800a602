from fractions import Fraction

import mpmath
import pytest

from hyperpyramid import counts
from hyperpyramid.verify import COUNT_TABLE, SUM_TABLE


@pytest.mark.parametrize("kind", ["a", "b", "c", "d", "e", "s"])
def test_count_vectors_match_table(kind):
    assert tuple(v.get(kind) for v in counts.count_vectors(10)) == COUNT_TABLE[kind]


@pytest.mark.parametrize("kind", ["a", "b", "c", "d", "e", "s"])
def test_sum_vectors_match_table(kind):
    assert tuple(v.get(kind) for v in counts.sum_vectors(10)) == SUM_TABLE[kind]


def test_counts_are_integral_and_divisible_by_three_for_faces():
    for v in counts.count_vectors(60)[1:]:
        assert v.a % 3 == 0 and v.b % 3 == 0


def test_euclidean_counts():
    for v in counts.euclidean_counts(20):
        assert v.b == v.d == v.e == 0
        assert v.s == (v.n + 1) * (v.n + 2) // 2


@pytest.mark.parametrize("kind", ["a", "b", "c", "d", "e", "s"])
def test_explicit_counts(kind):
    cv = counts.count_vectors(50)
    assert [counts.explicit_count(kind, n) for n in range(1, 51)] == [v.get(kind) for v in cv[1:]]


def test_explicit_count_total_at_zero():
    assert counts.explicit_count("s", 0) == 1


@pytest.mark.parametrize("kind", ["a", "b"])
def test_explicit_sums_ab(kind):
    sv = counts.sum_vectors(50)
    assert [counts.explicit_sum_ab(kind, n) for n in range(1, 51)] == [v.get(kind) for v in sv[1:]]


def test_explicit_sum_total_precision():
    sv = counts.sum_vectors(40)
    with mpmath.workprec(256):
        for n in (1, 5, 10, 40):
            got = counts.explicit_sum_total(n, 256)
            assert abs(got - sv[n].s) / sv[n].s < mpmath.mpf(10) ** -40


def test_sums_model_deltas():
    m = counts.sums_model(256)
    want = (1.137480372, -0.1446989329, 0.007218561031)
    for got, w in zip(m.deltas, want):
        assert abs(got - w) < 1e-9
    with mpmath.workprec(256):
        oracle = max(mpmath.polyroots([1, -13, 28, -6], maxsteps=200, extraprec=256))
        assert abs(counts.dominant_sums_root() - oracle) < mpmath.mpf(10) ** -60


def test_sums_model_rejects_low_precision():
    with pytest.raises(ValueError):
        counts.sums_model(64)


def test_growth_ratios():
    with mpmath.workprec(256):
        assert abs(counts.growth_ratio("counts", 25) - (4 + mpmath.sqrt(15))) < 1e-8
        assert abs(counts.growth_ratio("sums", 30) - counts.dominant_sums_root()) < 1e-8
    assert counts.growth_ratio_exact("counts", 3) == Fraction(13, 6)
    # the Euclidean ratio tends to 1
    assert counts.growth_ratio_exact("counts", 2000, euclidean=True) == Fraction(2002, 2000)


def test_table_csv():
    text = counts.table_csv(counts.count_vectors(10))
    lines = text.splitlines()
    assert lines[0] == "n,a,b,c,d,e,s"
    assert lines[-1].endswith(",2190651")
    assert len(lines) == 12


def test_bad_inputs():
    with pytest.raises(ValueError):
        counts.count_vectors(-1)
    with pytest.raises(ValueError):
        counts.explicit_count("z", 3)
    with pytest.raises(ValueError):
        counts.explicit_sum_ab("a", 0)
    with pytest.raises(ValueError):
        counts.level_totals("nope", 3)


def test_closed_forms_start_at_level_one():
    # the apex level is outside the closed forms' range for the typed counts
    assert [counts.explicit_count(k, 0) for k in "abcde"] == [-6, 3, 10, -12, 3]
    assert counts.count_vectors(0)[0].as_row() == (0, 0, 0, 0, 0, 0, 1)
