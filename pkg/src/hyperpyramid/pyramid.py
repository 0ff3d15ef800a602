"""Level-by-level construction of the hyperbolic Pascal pyramid.

Each new level is produced in three passes:

1. every top-level vertex offers one provisional child per child slot of its
   link template;
2. every square of the mosaic whose lowest corner W sits one level below the
   top closes over a new vertex: for each pair of W's children that are
   adjacent in W's link, the two provisional children reached through the
   frames W -> U and W -> U' are merged (union-find);
3. each merged class becomes a vertex whose parents are the class owners.
   Its link is placed in canonical coordinates and the frames from its
   parents are fixed from the shared grandparents ("anchors"), orientation
   reversal and the parent/child/outside roles.  Classes with no anchor are
   gauge-fixed canonically.

Link state is kept for the two newest levels only; older levels retain
type, parents and value.
"""
from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .counts import CountVector, SumVector
from .hpt import TriangleRow, TriangleVertexKind
from .links import (
    ADJ,
    APEX_ID,
    CYC,
    IDX,
    CHILD,
    IN_DEGREE,
    TEMPLATES,
    candidate_templates,
    frame_from_pair,
)

DEFAULT_LEVEL_CAP = 10
TYPE_ORDER = ("apex", "1", "A", "B", "C", "D", "E")


class StructuralError(RuntimeError):
    """The merge or frame bookkeeping contradicted the mosaic's local structure."""


@dataclass
class Level:
    n: int
    tmpl: list[int]
    parents: list[tuple[int, ...]]
    value: list[int]
    # per vertex, per parent: (slot of this vertex in the parent's link,
    # position of the parent in this link, frame rotation parent -> this)
    link: list[tuple[tuple[int, int, int], ...]] | None
    # per vertex: child slot -> (child ordinal, index of this vertex among the child's parents)
    children: list[dict[int, tuple[int, int]]] | None = None
    face_rows: list[list[int]] = field(default_factory=list)

    def __len__(self):
        return len(self.tmpl)

    def type_of(self, k: int) -> str:
        return TEMPLATES[self.tmpl[k]].type

    @property
    def types(self) -> list[str]:
        return [TEMPLATES[t].type for t in self.tmpl]


class PyramidGraph:
    """The layered digraph, grown on demand."""

    def __init__(self, cap: int = DEFAULT_LEVEL_CAP):
        self.cap = cap
        apex = Level(0, [APEX_ID], [()], [1], [()], None, [[0], [0], [0]])
        self.levels: list[Level] = [apex]
        self.class_sizes: list[dict[int, int]] = [{}]

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def level(self, n: int) -> Level:
        if not 0 <= n <= self.top:
            raise IndexError(f"level {n} not built (top is {self.top})")
        return self.levels[n]

    def grow(self) -> "PyramidGraph":
        if self.top + 1 > self.cap:
            raise ValueError(f"level {self.top + 1} exceeds the cap of {self.cap}; raise the cap explicitly")
        new, sizes = _grow(self.levels[-2] if self.top >= 1 else None, self.levels[-1])
        self.levels.append(new)
        self.class_sizes.append(sizes)
        if self.top >= 2:
            old = self.levels[-3]
            old.link = None
            old.children = None
        return self

    def build_to(self, n: int) -> "PyramidGraph":
        while self.top < n:
            self.grow()
        return self

    def census(self, n: int) -> tuple[CountVector, SumVector]:
        return census(self, n)


def new_pyramid(cap: int = DEFAULT_LEVEL_CAP) -> PyramidGraph:
    return PyramidGraph(cap)


def grow_level(g: PyramidGraph) -> PyramidGraph:
    return g.grow()


def build(n: int, cap: int = DEFAULT_LEVEL_CAP) -> PyramidGraph:
    return PyramidGraph(cap).build_to(n)


# --------------------------------------------------------------------------
# growth
# --------------------------------------------------------------------------

def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _grow(below: Level | None, top: Level) -> tuple[Level, dict[int, int]]:
    templates = TEMPLATES
    ntop = len(top)
    uf = list(range(ntop * 12))
    anchors: dict[int, list[tuple[int, int]]] = defaultdict(list)

    if below is not None:
        for w in range(len(below)):
            kids = below.children[w]
            for p, p2 in templates[below.tmpl[w]].child_link:
                u, iu = kids[p]
                u2, iu2 = kids[p2]
                s, t, r = top.link[u][iu]
                s2, t2, r2 = top.link[u2][iu2]
                y = CYC[t][(r - IDX[s][p2]) % 5]
                y2 = CYC[t2][(r2 - IDX[s2][p]) % 5]
                ry = templates[top.tmpl[u]].roles[y]
                ry2 = templates[top.tmpl[u2]].roles[y2]
                if ry != CHILD or ry2 != CHILD:
                    raise StructuralError(
                        f"square over level-{below.n} vertex {w} closes on roles {ry}/{ry2}"
                    )
                a, b = u * 12 + y, u2 * 12 + y2
                anchors[a].append((t, b))
                anchors[b].append((t2, a))
                ra, rb = _find(uf, a), _find(uf, b)
                if ra != rb:
                    if ra < rb:
                        uf[rb] = ra
                    else:
                        uf[ra] = rb

    classes: dict[int, list[int]] = defaultdict(list)
    for u in range(ntop):
        base = u * 12
        for c in templates[top.tmpl[u]].children:
            classes[_find(uf, base + c)].append(base + c)

    # members are appended in increasing order, so members[0] is the class key
    ordered = sorted(classes.values(), key=lambda m: m[0])
    tmpl, parents, value, link = [], [], [], []
    top_children: list[dict[int, tuple[int, int]]] = [dict() for _ in range(ntop)]
    sizes: dict[int, int] = defaultdict(int)
    top_value = top.value

    for z, members in enumerate(ordered):
        k = len(members)
        if k > 3:
            raise StructuralError(f"merge class of size {k} at level {top.n + 1}")
        owners = tuple(m // 12 for m in members)
        if len(set(owners)) != k:
            raise StructuralError(f"class at level {top.n + 1} uses two slots of one parent")
        regions = {templates[top.tmpl[m // 12]].child_regions[m % 12] for m in members}
        if len(regions) != 1:
            raise StructuralError(f"class at level {top.n + 1} mixes face and interior slots")
        region = regions.pop()
        index_of = {m: i for i, m in enumerate(members)}
        key_parts = []
        for m in members:
            u = m // 12
            anc = tuple(sorted((x, index_of[b]) for x, b in anchors.get(m, ())))
            key_parts.append((top.tmpl[u], m % 12, anc))
        zt, tpos, rots = _solve(region, tuple(key_parts))
        tmpl.append(zt)
        parents.append(owners)
        value.append(sum(top_value[u] for u in owners))
        link.append(tuple((m % 12, tpos[i], rots[i]) for i, m in enumerate(members)))
        for i, m in enumerate(members):
            top_children[m // 12][m % 12] = (z, i)
        sizes[k] += 1

    top.children = top_children
    new = Level(top.n + 1, tmpl, parents, value, link)
    new.face_rows = [_face_row(top, new, f) for f in range(3)]
    return new, dict(sizes)


@lru_cache(maxsize=None)
def _solve(region: frozenset, parts: tuple) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Place a new vertex's parents in its link and fix the frames from them.

    ``parts`` holds, per parent (ascending id): the parent's template, the
    slot of the new vertex in the parent's link, and anchors
    ``(position of shared grandparent in the parent's link, index of the
    other parent)``.  Returns (template id, parent positions, frame rotations).
    """
    k = len(parts)
    cands = candidate_templates(region, k)
    if not cands:
        raise StructuralError(f"no vertex type for region {sorted(region)} with {k} parents")
    for zt in cands:
        zt_ = TEMPLATES[zt]
        for perm in permutations(zt_.parents):
            rots = []
            for i, (ut, s, anc) in enumerate(parts):
                r = _frame(TEMPLATES[ut], s, zt_, perm[i], anc, perm)
                if r is None:
                    break
                rots.append(r)
            else:
                return zt, perm, tuple(rots)
    raise StructuralError(f"no consistent link placement for region {sorted(region)}, parents {parts}")


def _frame(ut, s: int, zt, t: int, anc, perm) -> int | None:
    """Rotation of the frame U -> Z, or None when no frame is consistent."""
    if any(x not in IDX[s] or perm[j] not in IDX[t] for x, j in anc):
        return None
    options = [frame_from_pair(s, t, anc[0][0], perm[anc[0][1]])] if anc else range(5)
    good = [
        r for r in options
        if all(CYC[t][(r - IDX[s][x]) % 5] == perm[j] for x, j in anc)
        and _roles_agree(ut, s, zt, t, r)
    ]
    if not good:
        return None
    # gauge: the smallest position around s lands on the smallest admissible position around t
    low = min(CYC[s])
    return min(good, key=lambda r: CYC[t][(r - IDX[s][low]) % 5])


def _roles_agree(ut, s: int, zt, t: int, r: int) -> bool:
    # a square U-Z-y-x keeps parents, children and outside positions apart,
    # and the far corner lies on exactly the faces shared by x and Z
    uroles, zroles = ut.roles, zt.roles
    for i, x in enumerate(CYC[s]):
        y = CYC[t][(r - i) % 5]
        if uroles[x] != zroles[y]:
            return False
        if uroles[x] == CHILD and zt.child_regions[y] != ut.child_regions[x] & zt.region:
            return False
    return True


def _face_row(top: Level, new: Level, f: int) -> list[int]:
    """Row of face f on the new level, as an ordered list of ordinals."""
    adj: dict[int, set[int]] = defaultdict(set)
    members: set[int] = set()
    for v in top.face_rows[f]:
        t = TEMPLATES[top.tmpl[v]]
        slots = [c for c, reg in t.child_regions.items() if f in reg]
        kids = top.children[v]
        for c in slots:
            members.add(kids[c][0])
        for i, c in enumerate(slots):
            for c2 in slots[i + 1:]:
                if c2 in ADJ[c]:
                    a, b = kids[c][0], kids[c2][0]
                    adj[a].add(b)
                    adj[b].add(a)
    start_region = frozenset({f, (f + 1) % 3})
    start = [
        v for v in members
        if TEMPLATES[new.tmpl[v]].type == "1" and TEMPLATES[new.tmpl[v]].region == start_region
    ]
    if len(start) != 1:
        raise StructuralError(f"face {f} row {new.n} has no unique starting winger")
    order = [start[0]]
    prev = None
    while True:
        nxt = [v for v in adj[order[-1]] if v != prev]
        if not nxt:
            break
        if len(nxt) != 1:
            raise StructuralError(f"face {f} row {new.n} is not a path")
        prev = order[-1]
        order.append(nxt[0])
    if len(order) != len(members):
        raise StructuralError(f"face {f} row {new.n} is disconnected")
    return order


# --------------------------------------------------------------------------
# queries
# --------------------------------------------------------------------------

def census(g: PyramidGraph, n: int) -> tuple[CountVector, SumVector]:
    lv = g.level(n)
    cnt = dict.fromkeys(TYPE_ORDER, 0)
    tot = dict.fromkeys(TYPE_ORDER, 0)
    for t, v in zip(lv.tmpl, lv.value):
        ty = TEMPLATES[t].type
        cnt[ty] += 1
        tot[ty] += v
    ones_c = cnt["1"] + cnt["apex"]
    ones_s = tot["1"] + tot["apex"]
    cv = CountVector(n, cnt["A"], cnt["B"], cnt["C"], cnt["D"], cnt["E"], ones_c)
    sv = SumVector(n, tot["A"], tot["B"], tot["C"], tot["D"], tot["E"], ones_s)
    return cv, sv


_KIND = {"apex": TriangleVertexKind.WINGER, "1": TriangleVertexKind.WINGER,
         "A": TriangleVertexKind.A, "B": TriangleVertexKind.B}


def face_rows(g: PyramidGraph, face: int, n: int) -> TriangleRow:
    """Row n of the hyperbolic Pascal triangle on boundary face ``face``."""
    if face not in (0, 1, 2):
        raise ValueError(f"face must be 0, 1 or 2, got {face!r}")
    lv = g.level(n)
    cells = tuple((_KIND[lv.type_of(v)], lv.value[v]) for v in lv.face_rows[face])
    return TriangleRow(n, cells)


def euclidean_level_values(n: int) -> list[list[int]]:
    """Level n of the classical Pascal pyramid (each entry sums three above)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    level = [[1]]
    for m in range(1, n + 1):
        prev = level

        def at(r, j):
            return prev[r][j] if 0 <= r < m and 0 <= j <= r else 0

        level = [[at(r, j) + at(r - 1, j) + at(r - 1, j - 1) for j in range(r + 1)] for r in range(m + 1)]
    return level


# --------------------------------------------------------------------------
# export
# --------------------------------------------------------------------------

FORMATS = ("json", "csv", "dot", "ndjson")


def vertex_id(n: int, k: int) -> str:
    return f"{n}:{k}"


def _records(g: PyramidGraph, n: int):
    lv = g.level(n)
    for k in range(len(lv)):
        yield {
            "id": vertex_id(n, k),
            "type": lv.type_of(k),
            "parents": [vertex_id(n - 1, p) for p in lv.parents[k]],
            "value": str(lv.value[k]),
        }


def iter_level(g: PyramidGraph, n: int, fmt: str):
    """Yield text chunks of level n in the requested format."""
    if fmt == "json":
        yield '{"level": %d, "vertices": [' % n
        first = True
        for rec in _records(g, n):
            yield ("\n  " if first else ",\n  ") + json.dumps(rec)
            first = False
        yield "\n]}\n"
    elif fmt == "ndjson":
        for rec in _records(g, n):
            yield json.dumps(rec) + "\n"
    elif fmt == "csv":
        yield "id,type,parent_ids,value\n"
        for rec in _records(g, n):
            buf = io.StringIO()
            csv.writer(buf, lineterminator="\n").writerow(
                [rec["id"], rec["type"], ";".join(rec["parents"]), rec["value"]]
            )
            yield buf.getvalue()
    elif fmt == "dot":
        yield from iter_slab(g, n, "dot") if n >= 1 else _dot_single(g, n)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def _dot_single(g, n):
    yield f'digraph level{n} {{\n'
    for rec in _records(g, n):
        yield f'  "{rec["id"]}" [label="{rec["type"]}:{rec["value"]}"];\n'
    yield "}\n"


def iter_slab(g: PyramidGraph, n: int, fmt: str = "dot"):
    """Bipartite slab between levels n-1 and n."""
    if n < 1:
        raise ValueError("a slab needs n >= 1")
    if fmt != "dot":
        yield from _slab_tabular(g, n, fmt)
        return
    upper, lower = g.level(n - 1), g.level(n)
    yield f"digraph slab_{n - 1}_{n} {{\n"
    for lv in (upper, lower):
        for k in range(len(lv)):
            yield f'  "{vertex_id(lv.n, k)}" [label="{lv.type_of(k)}:{lv.value[k]}"];\n'
    for k in range(len(lower)):
        for p in lower.parents[k]:
            yield f'  "{vertex_id(n - 1, p)}" -> "{vertex_id(n, k)}";\n'
    yield "}\n"


def _slab_tabular(g, n, fmt):
    if fmt == "json":
        yield '{"slab": [%d, %d], "levels": [\n' % (n - 1, n)
        yield "".join(iter_level(g, n - 1, "json")).rstrip("\n")
        yield ",\n"
        yield "".join(iter_level(g, n, "json")).rstrip("\n")
        yield "\n]}\n"
    elif fmt in ("csv", "ndjson"):
        yield from iter_level(g, n - 1, fmt)
        chunks = iter_level(g, n, fmt)
        if fmt == "csv":
            next(chunks)  # one header
        yield from chunks
    else:
        raise ValueError(f"unknown format {fmt!r}")


def export_level(g: PyramidGraph, n: int, fmt: str) -> bytes:
    return "".join(iter_level(g, n, fmt)).encode("utf-8")


def export_slab(g: PyramidGraph, n: int, fmt: str = "dot") -> bytes:
    return "".join(iter_slab(g, n, fmt)).encode("utf-8")


__all__ = [
    "PyramidGraph", "Level", "StructuralError", "new_pyramid", "grow_level", "build",
    "census", "face_rows", "euclidean_level_values", "export_level", "export_slab",
    "iter_level", "iter_slab", "vertex_id", "IN_DEGREE", "DEFAULT_LEVEL_CAP",
]
