"""Rows of the hyperbolic Pascal triangle for the square mosaic {4,q}.

q = 5 gives the faces of the pyramid; q = 4 is the classical triangle.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

DEFAULT_ROW_CAP = 40


class TriangleVertexKind(str, Enum):
    WINGER = "W"
    A = "A"
    B = "B"


@dataclass(frozen=True)
class TriangleRow:
    index: int
    cells: tuple[tuple[TriangleVertexKind, int], ...]

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.cells)

    @property
    def kinds(self) -> tuple[TriangleVertexKind, ...]:
        return tuple(k for k, _ in self.cells)

    def __len__(self):
        return len(self.cells)


W, A, B = TriangleVertexKind.WINGER, TriangleVertexKind.A, TriangleVertexKind.B

ROW0 = TriangleRow(0, ((W, 1),))


def next_row(row: TriangleRow, q: int = 5) -> TriangleRow:
    """Grow one row.

    Neighbouring cells share one new A (value = sum of the two); an A also
    emits q-4 private B's and a B emits q-3, each copying its parent's value.
    The row is closed by a winger of value 1 at each end.
    """
    if q < 4:
        raise ValueError(f"q must be >= 4, got {q}")
    own = {W: 0, A: q - 4, B: q - 3}
    cells = row.cells
    out = [(W, 1)]
    for i, (kind, value) in enumerate(cells):
        out.extend([(B, value)] * own[kind])
        if i + 1 < len(cells):
            out.append((A, value + cells[i + 1][1]))
    out.append((W, 1))
    return TriangleRow(row.index + 1, tuple(out))


@lru_cache(maxsize=None)
def _row(q: int, n: int) -> TriangleRow:
    if n == 0:
        return ROW0
    return next_row(_row(q, n - 1), q)


def row(q: int, n: int, cap: int = DEFAULT_ROW_CAP) -> TriangleRow:
    if q < 4:
        raise ValueError(f"q must be >= 4, got {q}")
    if n < 0:
        raise ValueError("row index must be >= 0")
    if n > cap:
        raise ValueError(f"row {n} exceeds cap {cap}")
    for k in range(n + 1):  # keeps recursion depth flat
        r = _row(q, k)
    return r


def binomh(q: int, n: int, k: int) -> int:
    """The k-th element of row n."""
    r = row(q, n)
    if not 0 <= k < len(r):
        raise IndexError(f"k={k} out of range for row {n} of length {len(r)}")
    return r.cells[k][1]


def row_census(q: int, n: int) -> tuple[int, int, int]:
    """(wingers, A count, B count) of row n."""
    kinds = row(q, n).kinds
    return kinds.count(W), kinds.count(A), kinds.count(B)


def row_csv(r: TriangleRow) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "kind", "value"])
    for i, (kind, value) in enumerate(r.cells):
        w.writerow([i, kind.value, str(value)])
    return buf.getvalue()
