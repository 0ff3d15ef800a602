"""Exact arithmetic: rationals, quadratic-field numbers, polynomials, matrices.

Rationals are :class:`fractions.Fraction` throughout (always reduced, positive
denominator).  Everything here is immutable and exact; floating point only
appears when a real root is rendered through :mod:`mpmath` at a requested
precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` / ``["p", "q"]`` encodings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def encode_rational(x: Fraction) -> list[str]:
    return [str(x.numerator), str(x.denominator)]


def _is_square_free(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


# --------------------------------------------------------------------------
# Quadratic numbers a + b*sqrt(d)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadraticNumber:
    """Exact element ``a + b*sqrt(d)`` of the real quadratic field Q(sqrt d)."""

    d: int
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if not _is_square_free(self.d):
            raise ValueError(f"radicand {self.d} is not a square-free integer > 1")
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    def _coerce(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadraticNumber(self.d, Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(self.d, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(
            self.d,
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.d, self.a, -self.b)

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return QuadraticNumber(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, n: int):
        return quad_pow(self, n)

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.d, self.a, self.b) == (other.d, other.a, other.b)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.a, self.b))

    def to_mpf(self):
        return mpmath.mpf(self.a.numerator) / self.a.denominator + (
            mpmath.mpf(self.b.numerator) / self.b.denominator
        ) * mpmath.sqrt(self.d)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadraticNumber({self.a} + {self.b}*sqrt({self.d}))"


def quad_pow(x: QuadraticNumber, n: int) -> QuadraticNumber:
    """``x**n`` by binary exponentiation (``n >= 0``)."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    result = QuadraticNumber(x.d, Fraction(1), Fraction(0))
    base = x
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


# --------------------------------------------------------------------------
# Polynomials
# --------------------------------------------------------------------------

class RationalPolynomial:
    """Polynomial with rational coefficients, stored in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_descending(cls, coeffs: Iterable) -> "RationalPolynomial":
        return cls(list(coeffs)[::-1])

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.leading
        return RationalPolynomial(c / lc for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lc
            quot[k - dq] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * oc
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: "RationalMatrix") -> "RationalMatrix":
        """Horner evaluation at a square matrix."""
        n = m.rows
        acc = RationalMatrix.zeros(n, n)
        eye = RationalMatrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + eye.scale(c)
        return acc

    def __repr__(self):
        return f"RationalPolynomial({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}{mono}" if mag.denominator == 1 else f"({mag}){mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(p: RationalPolynomial, q: RationalPolynomial) -> RationalPolynomial:
    while not q.is_zero():
        p, q = q, p % q
    return p.monic() if not p.is_zero() else p


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    return seq[:-1]


def _sign_changes(seq: Sequence[RationalPolynomial], x: Fraction) -> int:
    signs = [s for s in (q(x) for q in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def isolate_real_roots(p: RationalPolynomial, bits: int = 64) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one per distinct real root, each narrower than ``2**-bits``.

    Counting uses a Sturm sequence of the square-free part, so the isolation
    is exact; an interval ``(r, r)`` means the root is the rational ``r``.
    """
    if p.degree < 1:
        return []
    sq = p // poly_gcd(p, p.derivative())
    seq = sturm_sequence(sq)
    bound = 1 + max(abs(c / sq.leading) for c in sq.coeffs[:-1]) if sq.degree else Fraction(1)
    width = Fraction(1, 2 ** bits)

    def count(lo, hi):
        return _sign_changes(seq, lo) - _sign_changes(seq, hi)

    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)  # roots in (lo, hi]
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(sq, lo, hi, width))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def _refine(p: RationalPolynomial, lo: Fraction, hi: Fraction, width: Fraction):
    # the single root lies in (lo, hi]
    if p(hi) == 0:
        return (hi, hi)
    flo = p(lo)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        fm = p(mid)
        if fm == 0:
            return (mid, mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo, hi)


def real_roots(p: RationalPolynomial, precision_bits: int = 128) -> list:
    """Real roots as :class:`mpmath.mpf`, each certified to within ``2**-precision_bits``."""
    with mpmath.workprec(precision_bits + 16):
        roots = []
        for lo, hi in isolate_real_roots(p, precision_bits + 4):
            mid = (lo + hi) / 2
            roots.append(mpmath.mpf(mid.numerator) / mid.denominator)
    return roots


# --------------------------------------------------------------------------
# Matrices
# --------------------------------------------------------------------------

class RationalMatrix:
    """Dense rectangular matrix of Fractions."""

    __slots__ = ("entries",)

    def __init__(self, rows: Iterable[Iterable]):
        entries = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if not entries or not entries[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(entries[0])
        if any(len(r) != width for r in entries):
            raise ValueError("matrix rows have unequal lengths")
        self.entries = entries

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "RationalMatrix":
        return cls([[0] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if isinstance(other, RationalMatrix):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RationalMatrix(
            [a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "RationalMatrix":
        return RationalMatrix([c * x for x in row] for row in self.entries)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        return RationalMatrix(
            [sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
            for row in self.entries
        )

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return [sum((a * as_rational(b) for a, b in zip(row, v)), Fraction(0)) for row in self.entries]

    def __pow__(self, n: int) -> "RationalMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        result = RationalMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def flat(self) -> list[Fraction]:
        return [x for row in self.entries for x in row]

    def rank(self) -> int:
        return _rank([list(r) for r in self.entries])

    def to_json(self) -> list:
        return [[encode_rational(x) for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        if isinstance(data, dict):
            data = data.get("matrix", data.get("entries"))
        if not isinstance(data, list):
            raise ValueError("matrix JSON must be a list of rows")
        return cls([[as_rational(x) for x in row] for row in data])

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"RationalMatrix([{body}])"


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _solve_in_span(basis: list[list[Fraction]], target: list[Fraction]):
    """Coefficients c with sum c_i basis_i == target, or None if outside the span."""
    k = len(basis)
    # augmented system: columns are basis vectors, rows are coordinates
    rows = [[basis[j][i] for j in range(k)] + [target[i]] for i in range(len(target))]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, len(rows))):
        return None
    coeffs = [Fraction(0)] * k
    for i, col in enumerate(pivots):
        coeffs[col] = rows[i][k]
    return coeffs


def charpoly(m: RationalMatrix) -> RationalPolynomial:
    """det(xI - M) by Berkowitz's division-free algorithm."""
    if not m.is_square:
        raise ValueError(f"charpoly needs a square matrix, got {m.rows}x{m.cols}")
    a = m.entries
    p = [Fraction(1)]  # descending coefficients of charpoly of the leading r x r block
    for r in range(m.rows):
        col_s = [a[i][r] for i in range(r)]
        row_r = a[r][:r]
        c = [Fraction(1), -a[r][r]]
        v = col_s
        for _ in range(r):
            c.append(-sum((x * y for x, y in zip(row_r, v)), Fraction(0)))
            v = [sum((a[i][j] * v[j] for j in range(r)), Fraction(0)) for i in range(r)]
        p = [sum((c[i - j] * p[j] for j in range(min(i, r) + 1)), Fraction(0)) for i in range(r + 2)]
    return RationalPolynomial.from_descending(p)


def minpoly(m: RationalMatrix) -> RationalPolynomial:
    """Least-degree monic p with p(M) = 0, via linear dependence of I, M, M^2, ..."""
    if not m.is_square:
        raise ValueError(f"minpoly needs a square matrix, got {m.rows}x{m.cols}")
    powers = [RationalMatrix.identity(m.rows)]
    basis = [powers[0].flat()]
    while True:
        nxt = powers[-1] @ m
        coeffs = _solve_in_span(basis, nxt.flat())
        if coeffs is not None:
            return RationalPolynomial([-c for c in coeffs] + [1])
        powers.append(nxt)
        basis.append(nxt.flat())


@dataclass(frozen=True)
class RecurrenceSpec:
    """``r_i = sum_j beta_j * r_{i-j}`` for ``j = 1..order``."""

    coefficients: tuple[Fraction, ...]
    degenerate: bool = False
    mode: str = "explicit"
    rank: int | None = None

    def __post_init__(self):
        cs = tuple(as_rational(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", cs)
        if not cs:
            raise ValueError("recurrence order must be >= 1")
        if cs[-1] == 0 and not self.degenerate:
            raise ValueError("last coefficient is zero; mark the recurrence degenerate")

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def step(self, history: Sequence) -> Fraction:
        """Next term from the last ``order`` terms (oldest first)."""
        return sum(
            (b * history[-j] for j, b in enumerate(self.coefficients, start=1)), Fraction(0)
        )

    def polynomial(self) -> RationalPolynomial:
        return RationalPolynomial.from_descending([1] + [-b for b in self.coefficients])

    def as_ints(self) -> tuple:
        return tuple(int(c) if c.denominator == 1 else c for c in self.coefficients)


def scalar_recurrence(m: RationalMatrix, mode: str = "characteristic") -> RecurrenceSpec:
    """Scalar recurrence satisfied by every sequence ``alpha^T M^i a0``.

    ``mode="characteristic"`` reads the coefficients off det(xI - M);
    ``mode="minimal"`` off the minimal polynomial.  A singular M in
    characteristic mode yields a zero trailing coefficient; the recurrence
    is then flagged ``degenerate`` and carries the rank.
    """
    if not m.is_square:
        raise ValueError(f"need a square matrix, got {m.rows}x{m.cols}")
    if mode == "characteristic":
        p = charpoly(m)
    elif mode == "minimal":
        p = minpoly(m)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rank = m.rank()
    desc = p.coeffs[::-1]
    betas = tuple(-c for c in desc[1:])
    degenerate = mode == "characteristic" and rank < m.rows
    if betas[-1] == 0:
        degenerate = True
    return RecurrenceSpec(betas, degenerate=degenerate, mode=mode, rank=rank)


def verify_recurrence(seq: Sequence, spec: RecurrenceSpec, from_index: int) -> bool:
    """True iff every term with index ``>= from_index`` (and ``>= order``) obeys ``spec``."""
    start = max(from_index, spec.order)
    if len(seq) <= start:
        raise ValueError(
            f"sequence of length {len(seq)} too short for order {spec.order} from index {from_index}"
        )
    vals = [as_rational(x) for x in seq]
    return all(vals[i] == spec.step(vals[i - spec.order:i]) for i in range(start, len(vals)))


def generate(spec_matrix: RationalMatrix, alpha: Sequence, a0: Sequence, count: int) -> list[Fraction]:
    """``[alpha^T a0, alpha^T M a0, alpha^T M^2 a0, ...]`` (``count`` terms)."""
    out = []
    v = [as_rational(x) for x in a0]
    al = [as_rational(x) for x in alpha]
    for _ in range(count):
        out.append(sum((x * y for x, y in zip(al, v)), Fraction(0)))
        v = spec_matrix.apply(v)
    return out


__all__ = [
    "QuadraticNumber", "RationalPolynomial", "RationalMatrix", "RecurrenceSpec",
    "as_rational", "encode_rational", "quad_pow", "charpoly", "minpoly",
    "scalar_recurrence", "verify_recurrence", "generate", "isolate_real_roots",
    "real_roots", "poly_gcd",
]
