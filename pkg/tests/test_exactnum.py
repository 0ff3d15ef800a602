from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperpyramid.exactnum import (
    QuadraticNumber,
    RationalMatrix,
    RationalPolynomial,
    RecurrenceSpec,
    as_rational,
    charpoly,
    encode_rational,
    generate,
    isolate_real_roots,
    minpoly,
    poly_gcd,
    quad_pow,
    real_roots,
    scalar_recurrence,
    verify_recurrence,
)

X = RationalPolynomial.x()
ONE = RationalPolynomial([1])


def test_as_rational_accepts_strings_pairs_and_ints():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(["-4", "6"]) == Fraction(-2, 3)
    assert as_rational(7) == 7
    assert encode_rational(Fraction(-2, 3)) == ["-2", "3"]


def test_as_rational_rejects_floats():
    with pytest.raises((TypeError, ValueError)):
        as_rational(0.5)


def test_quadratic_field_basics():
    phi = QuadraticNumber(5, Fraction(1, 2), Fraction(1, 2))
    assert phi * phi == phi + 1
    assert phi.norm() == -1
    assert phi * phi.inverse() == 1
    assert quad_pow(phi, 10) == QuadraticNumber(5, Fraction(123, 2), Fraction(55, 2))


def test_quadratic_mixed_radicands_rejected():
    with pytest.raises(ValueError):
        QuadraticNumber(5, 1, 1) + QuadraticNumber(15, 1, 1)


def test_quadratic_to_mpf():
    with mpmath.workprec(200):
        x = QuadraticNumber(15, 4, 1).to_mpf()
        assert abs(x - (4 + mpmath.sqrt(15))) < mpmath.mpf(2) ** -190


def test_polynomial_printing_and_division():
    p = RationalPolynomial.from_descending([1, -12, 37, -37, 12, -1])
    assert str(p) == "x^5 - 12x^4 + 37x^3 - 37x^2 + 12x - 1"
    q, r = divmod(p, X - ONE)
    assert r.is_zero
    assert q * (X - ONE) == p
    assert str(RationalPolynomial([Fraction(1, 2), 0, -1])) == "-x^2 + 1/2"


def test_gcd_and_derivative():
    p = (X - ONE) * (X - ONE) * (X + 2 * ONE)
    assert poly_gcd(p, p.derivative()) == X - ONE


def test_sturm_isolation_of_cubic():
    cubic = RationalPolynomial.from_descending([1, -13, 28, -6])
    ivs = isolate_real_roots(cubic, bits=80)
    assert len(ivs) == 3
    for lo, hi in ivs:
        assert hi - lo <= Fraction(1, 2 ** 80)
        assert cubic(lo) * cubic(hi) <= 0
    roots = real_roots(cubic, 128)
    for r, want in zip(roots, ("0.240683", "2.408387", "10.350930")):
        assert abs(r - mpmath.mpf(want)) < 1e-6


def test_isolation_of_double_root():
    p = (X - 2 * ONE) * (X - 2 * ONE) * (X + ONE)
    ivs = isolate_real_roots(p, 40)
    assert len(ivs) == 2


def test_matrix_ops():
    m = RationalMatrix([[1, 1], [1, 0]])
    assert (m ** 10)[0, 1] == 55
    assert m @ RationalMatrix.identity(2) == m
    assert RationalMatrix.from_json({"matrix": [["1/2", "0"], [0, 1]]})[0, 0] == Fraction(1, 2)
    assert RationalMatrix.from_json(m.to_json()) == m
    assert RationalMatrix([[1, 2], [2, 4]]).rank() == 1


def test_charpoly_and_minpoly_known():
    m = RationalMatrix([[2, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert charpoly(m) == (X - 2 * ONE) * (X - 2 * ONE) * (X - 3 * ONE)
    assert minpoly(m) == (X - 2 * ONE) * (X - 3 * ONE)


def test_recurrence_spec_validation():
    with pytest.raises(ValueError):
        RecurrenceSpec(())
    with pytest.raises(ValueError):
        RecurrenceSpec((1, 0))
    assert RecurrenceSpec((1, 0), degenerate=True).order == 2


def test_singular_matrix_is_flagged_degenerate():
    spec = scalar_recurrence(RationalMatrix([[1, 1], [1, 1]]))
    assert spec.degenerate and spec.rank == 1


def test_verify_recurrence_detects_breaks_and_short_input():
    fib = RecurrenceSpec((1, 1))
    seq = [0, 1, 1, 2, 3, 5, 8, 13]
    assert verify_recurrence(seq, fib, 0)
    assert not verify_recurrence(seq[:-1] + [14], fib, 0)
    with pytest.raises(ValueError):
        verify_recurrence(seq[:2], fib, 0)


# --------------------------------------------------------------------------
# properties

small = st.integers(-3, 3).map(Fraction)


def square_matrices(max_k=5):
    return st.integers(1, max_k).flatmap(
        lambda k: st.lists(st.lists(small, min_size=k, max_size=k), min_size=k, max_size=k)
    ).map(RationalMatrix)


@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_cayley_hamilton(m):
    assert charpoly(m).eval_matrix(m).is_zero


@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_minpoly_annihilates_and_divides_charpoly(m):
    mp = minpoly(m)
    assert mp.eval_matrix(m).is_zero
    assert (charpoly(m) % mp).is_zero
    assert mp.leading == 1


@settings(max_examples=60, deadline=None)
@given(square_matrices(4), square_matrices(4))
def test_charpoly_of_product_is_symmetric(m, n):
    if m.rows != n.rows:
        return
    assert charpoly(m @ n) == charpoly(n @ m)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_derived_recurrence_holds_for_any_projection(data):
    m = data.draw(square_matrices())
    k = m.rows
    alpha = data.draw(st.lists(small, min_size=k, max_size=k))
    a0 = data.draw(st.lists(small, min_size=k, max_size=k))
    seq = generate(m, alpha, a0, 20)
    for mode in ("characteristic", "minimal"):
        spec = scalar_recurrence(m, mode)
        assert verify_recurrence(seq, spec, spec.order)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 30).filter(lambda d: d not in (4, 9, 16, 25)), small, small, small, small)
def test_quadratic_field_axioms(d, a, b, c, e):
    try:
        x, y = QuadraticNumber(d, a, b), QuadraticNumber(d, c, e)
    except ValueError:
        return  # d not square-free
    assert x * y == y * x
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert (x * y).norm() == x.norm() * y.norm()
    if x.a or x.b:
        assert x * x.inverse() == 1
