"""Per-level type censuses and value sums from the recurrence systems.

The recurrences are the source of truth here; the closed forms (quadratic
fields for the counts and for the A/B value sums, real cubic roots for the
total value sum) are independent evaluation routes kept for cross-checking.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exactnum import (
    QuadraticNumber,
    RationalMatrix,
    RationalPolynomial,
    isolate_real_roots,
    quad_pow,
)

KINDS = ("a", "b", "c", "d", "e")

# growth matrices on (a, b, c, d, e, v) where v is the constant winger count
COUNTS_MATRIX = RationalMatrix([
    [1, 1, 0, 0, 0, 1],
    [1, 2, 0, 0, 0, 0],
    ["1/3", 0, 1, "2/3", 0, 0],
    [0, "1/2", "3/2", 2, "5/2", 0],
    [0, 0, 3, 4, 6, 0],
    [0, 0, 0, 0, 0, 1],
])
COUNTS_AB_MATRIX = RationalMatrix([[1, 1, 1], [1, 2, 0], [0, 0, 1]])
SUMS_MATRIX = RationalMatrix([
    [2, 2, 0, 0, 0, 2],
    [1, 2, 0, 0, 0, 0],
    [1, 0, 3, 2, 0, 0],
    [0, 1, 3, 4, 5, 0],
    [0, 0, 3, 4, 6, 0],
    [0, 0, 0, 0, 0, 1],
])
SUMS_AB_MATRIX = RationalMatrix([[2, 2, 2], [1, 2, 0], [0, 0, 1]])

SUMS_CUBIC = RationalPolynomial.from_descending([1, -13, 28, -6])


class IntegralityError(ArithmeticError):
    """A value that must be an integer came out fractional."""


@dataclass(frozen=True)
class CountVector:
    n: int
    a: int
    b: int
    c: int
    d: int
    e: int
    ones: int

    @property
    def s(self) -> int:
        return self.a + self.b + self.c + self.d + self.e + self.ones

    def as_row(self) -> tuple[int, ...]:
        return (self.n, self.a, self.b, self.c, self.d, self.e, self.s)

    def get(self, kind: str) -> int:
        return self.s if kind == "s" else getattr(self, kind)


@dataclass(frozen=True)
class SumVector:
    n: int
    a: int
    b: int
    c: int
    d: int
    e: int
    ones: int

    @property
    def s(self) -> int:
        return self.a + self.b + self.c + self.d + self.e + self.ones

    def as_row(self) -> tuple[int, ...]:
        return (self.n, self.a, self.b, self.c, self.d, self.e, self.s)

    def get(self, kind: str) -> int:
        return self.s if kind == "s" else getattr(self, kind)


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise IntegralityError(f"{what} = {x} is not an integer")
    return x.numerator


def count_vectors(n_max: int, euclidean: bool = False) -> list[CountVector]:
    """Vertex-type census for levels ``0..n_max``.

    Level 1 starts from zero interior/face counts; ``euclidean`` pins
    b = d = e = 0 (the classical pyramid has only A and C vertices).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    out = [CountVector(0, 0, 0, 0, 0, 0, 1)]
    a = b = c = d = e = Fraction(0)
    third, half = Fraction(1, 3), Fraction(1, 2)
    for n in range(1, n_max + 1):
        if n > 1:
            v = 3
            if euclidean:
                a, c = a + v, third * a + c
            else:
                a, b, c, d, e = (
                    a + b + v,
                    a + 2 * b,
                    third * a + c + 2 * third * d,
                    half * b + 3 * half * c + 2 * d + 5 * half * e,
                    3 * c + 4 * d + 6 * e,
                )
        vals = [_integral(x, f"{k}_{n}") for k, x in zip(KINDS, (a, b, c, d, e))]
        out.append(CountVector(n, *vals, ones=3))
    return out


def euclidean_counts(n_max: int) -> list[CountVector]:
    return count_vectors(n_max, euclidean=True)


def sum_vectors(n_max: int) -> list[SumVector]:
    """Per-type sums of vertex values for levels ``0..n_max``."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    out = [SumVector(0, 0, 0, 0, 0, 0, 1)]
    a = b = c = d = e = 0
    for n in range(1, n_max + 1):
        if n > 1:
            a, b, c, d, e = (
                2 * a + 2 * b + 6,
                a + 2 * b,
                a + 3 * c + 2 * d,
                b + 3 * c + 4 * d + 5 * e,
                3 * c + 4 * d + 6 * e,
            )
        out.append(SumVector(n, a, b, c, d, e, ones=3))
    return out


# --------------------------------------------------------------------------
# closed forms
# --------------------------------------------------------------------------

def _q(d: int, a, b) -> QuadraticNumber:
    return QuadraticNumber(d, Fraction(a), Fraction(b))


ALPHA1 = _q(5, Fraction(3, 2), Fraction(1, 2))
ALPHA3 = _q(15, 4, 1)
SQRT2_ROOT = _q(2, 2, 1)  # 2 + sqrt 2

# kind -> (coefficient of alpha1^n in Q(sqrt5), coefficient of alpha3^n in Q(sqrt15), constant);
# the alpha2 / alpha4 terms carry the conjugate coefficients.
_COUNT_FORMS = {
    "a": (_q(5, Fraction(-9, 2), Fraction(21, 10)), None, Fraction(3)),
    "b": (_q(5, 3, Fraction(-6, 5)), None, Fraction(-3)),
    "c": (_q(5, Fraction(-33, 10), Fraction(3, 2)), _q(15, Fraction(122, 15), Fraction(-21, 10)), Fraction(1, 3)),
    "d": (_q(5, Fraction(27, 5), Fraction(-12, 5)), _q(15, Fraction(-213, 20), Fraction(11, 4)), Fraction(-3, 2)),
    "e": (_q(5, Fraction(-21, 10), Fraction(9, 10)), _q(15, Fraction(31, 10), Fraction(-4, 5)), Fraction(1)),
    "s": (_q(5, Fraction(-3, 2), Fraction(9, 10)), _q(15, Fraction(7, 12), Fraction(-3, 20)), Fraction(17, 6)),
}

_SUM_AB_FORMS = {
    "a": (_q(2, -6, Fraction(9, 2)), Fraction(6)),
    "b": (_q(2, Fraction(9, 2), -3), Fraction(-6)),
}


def _conj_pair(coef: QuadraticNumber, root: QuadraticNumber, n: int) -> Fraction:
    term = coef * quad_pow(root, n)
    total = term + term.conjugate()
    assert total.is_rational()
    return total.a


def explicit_count(kind: str, n: int) -> int:
    """Closed-form census value, evaluated exactly in Q(sqrt5) and Q(sqrt15)."""
    if kind not in _COUNT_FORMS:
        raise ValueError(f"unknown kind {kind!r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    c5, c15, const = _COUNT_FORMS[kind]
    total = const + _conj_pair(c5, ALPHA1, n)
    if c15 is not None:
        total += _conj_pair(c15, ALPHA3, n)
    return _integral(total, f"explicit {kind}_{n}")


def explicit_sum_ab(kind: str, n: int) -> int:
    """Closed form of the A (``"a"``) or B (``"b"``) value sum, exact in Q(sqrt2)."""
    if kind not in _SUM_AB_FORMS:
        raise ValueError(f"unknown kind {kind!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    coef, const = _SUM_AB_FORMS[kind]
    return _integral(const + _conj_pair(coef, SQRT2_ROOT, n), f"explicit hat-{kind}_{n}")


@dataclass(frozen=True)
class SumsModel:
    """Roots of x^3 - 13x^2 + 28x - 6 and their weights in the total value sum."""

    precision_bits: int
    alphas: tuple
    deltas: tuple
    root_intervals: tuple


def _mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _ab_part(n: int) -> Fraction:
    # 3 + 3/2 (sqrt2 - 1)(2 + sqrt2)^n + conjugate
    return 3 + _conj_pair(_q(2, Fraction(-3, 2), Fraction(3, 2)), SQRT2_ROOT, n)


_MODELS: dict[int, SumsModel] = {}


def sums_model(precision_bits: int = 256) -> SumsModel:
    """Isolate the cubic's roots and fit the three weights against exact sums 1..3."""
    if precision_bits < 128:
        raise ValueError("precision_bits must be >= 128")
    if precision_bits in _MODELS:
        return _MODELS[precision_bits]
    intervals = isolate_real_roots(SUMS_CUBIC, precision_bits + 8)
    if len(intervals) != 3:
        raise ArithmeticError("expected three real roots")
    exact = sum_vectors(3)
    with mpmath.workprec(precision_bits + 32):
        alphas = [_mpf((lo + hi) / 2) for lo, hi in intervals]
        rows = [[al ** n for al in alphas] for n in (1, 2, 3)]
        rhs = [_mpf(exact[n].s - _ab_part(n)) for n in (1, 2, 3)]
        mat = mpmath.matrix(rows)
        cond = mpmath.norm(mat, 1) * mpmath.norm(mpmath.inverse(mat), 1)
        if cond * mpmath.mpf(2) ** (-precision_bits) > mpmath.mpf(2) ** (-precision_bits // 2):
            raise ArithmeticError(f"ill-conditioned weight solve (cond {mpmath.nstr(cond, 5)})")
        deltas = mpmath.lu_solve(mat, mpmath.matrix(rhs))
        model = SumsModel(
            precision_bits,
            tuple(alphas),
            tuple(deltas[i] for i in range(3)),
            tuple(intervals),
        )
    _MODELS[precision_bits] = model
    return model


def explicit_sum_total(n: int, precision_bits: int = 256):
    """Total value sum on level ``n`` from the closed form, as an mpmath real."""
    if n < 1:
        raise ValueError("n must be >= 1")
    model = sums_model(precision_bits)
    with mpmath.workprec(precision_bits + 32):
        total = _mpf(_ab_part(n))
        for al, de in zip(model.alphas, model.deltas):
            total += de * al ** n
    return total


def dominant_sums_root(precision_bits: int = 256):
    return sums_model(precision_bits).alphas[-1]


def level_totals(kind: str, n_max: int, euclidean: bool = False) -> list[int]:
    """s_0..s_n (``kind="counts"``) or the value-sum totals (``kind="sums"``)."""
    if kind == "counts":
        return [v.s for v in count_vectors(n_max, euclidean=euclidean)]
    if kind == "sums":
        if euclidean:
            return [3 ** k for k in range(n_max + 1)]
        return [v.s for v in sum_vectors(n_max)]
    raise ValueError(f"unknown sequence kind {kind!r}")


def growth_ratio_exact(kind: str, n: int, euclidean: bool = False) -> Fraction:
    if n < 2:
        raise ValueError("n must be >= 2")
    totals = level_totals(kind, n, euclidean)
    return Fraction(totals[n], totals[n - 1])


def growth_ratio(kind: str, n: int, precision_bits: int = 256, euclidean: bool = False):
    """``x_n / x_{n-1}`` rendered as an mpmath real from the exact ratio."""
    ratio = growth_ratio_exact(kind, n, euclidean)
    with mpmath.workprec(precision_bits):
        return _mpf(ratio)


def table_csv(vectors) -> str:
    """Table-shaped CSV: n,a,b,c,d,e,s with integers as decimal strings."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "a", "b", "c", "d", "e", "s"])
    for v in vectors:
        w.writerow([str(x) for x in v.as_row()])
    return buf.getvalue()
