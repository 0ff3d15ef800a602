"""Vertex-figure combinatorics for the {4,3,5} cube mosaic.

Every vertex sees its 12 mosaic neighbours as the vertices of an icosahedron;
two neighbours are adjacent there exactly when the two edges lie on a common
square.  Each pyramid vertex carries the canonical icosahedron below as its
link, with every position tagged parent / child / outside-the-pyramid.

Frames relate the links at the two ends of an edge U -> Z: the five squares
around the edge appear as the pentagon around Z's position in U's link and as
the pentagon around U's position in Z's link.  With all links oriented alike
the correspondence reverses cyclic order, so a frame is fixed by one pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

ICOSAHEDRON = {
    0: (1, 2, 3, 4, 5),
    1: (0, 2, 5, 6, 7),
    2: (0, 1, 3, 7, 8),
    3: (0, 2, 4, 8, 9),
    4: (0, 3, 5, 9, 10),
    5: (0, 1, 4, 10, 6),
    6: (1, 5, 7, 10, 11),
    7: (1, 2, 6, 8, 11),
    8: (2, 3, 7, 9, 11),
    9: (3, 4, 8, 10, 11),
    10: (4, 5, 6, 9, 11),
    11: (6, 7, 8, 9, 10),
}

ADJ = {v: frozenset(ns) for v, ns in ICOSAHEDRON.items()}


def _check_icosahedron():
    if sorted(ADJ) != list(range(12)):
        raise AssertionError("icosahedron must have vertices 0..11")
    for v, ns in ADJ.items():
        if len(ns) != 5 or v in ns or any(v not in ADJ[u] for u in ns):
            raise AssertionError(f"bad adjacency at {v}")
        # the neighbourhood of every vertex is a 5-cycle
        sub = {u: ADJ[u] & ns for u in ns}
        if any(len(x) != 2 for x in sub.values()):
            raise AssertionError(f"link of {v} is not a pentagon")


def _oriented_faces():
    faces = sorted(
        t for t in combinations(range(12), 3)
        if t[1] in ADJ[t[0]] and t[2] in ADJ[t[0]] and t[2] in ADJ[t[1]]
    )
    if len(faces) != 20:
        raise AssertionError("icosahedron must have 20 triangles")
    oriented = {faces[0]: faces[0]}
    stack = [faces[0]]
    while stack:
        f = stack.pop()
        a, b, c = oriented[f]
        for x, y in ((a, b), (b, c), (c, a)):
            for g in faces:
                if g in oriented or x not in g or y not in g:
                    continue
                z = next(w for w in g if w not in (x, y))
                # neighbouring faces traverse their shared edge in opposite directions
                oriented[g] = (y, x, z)
                stack.append(g)
    for f, (a, b, c) in oriented.items():
        for x, y in ((a, b), (b, c), (c, a)):
            other = [g for g, o in oriented.items() if g != f and x in g and y in g]
            o = oriented[other[0]]
            if (x, y) in ((o[0], o[1]), (o[1], o[2]), (o[2], o[0])):
                raise AssertionError("icosahedron orientation is inconsistent")
    return list(oriented.values())


def _cyclic_orders(faces):
    succ = {v: {} for v in range(12)}
    for a, b, c in faces:
        succ[a][b] = c
        succ[b][c] = a
        succ[c][a] = b
    cyc = {}
    for v in range(12):
        start = min(ADJ[v])
        order = [start]
        while len(order) < 5:
            order.append(succ[v][order[-1]])
        if succ[v][order[-1]] != start:
            raise AssertionError(f"neighbours of {v} do not close up")
        cyc[v] = tuple(order)
    return cyc


_check_icosahedron()
FACES = _oriented_faces()
CYC = _cyclic_orders(FACES)
IDX = {v: {x: i for i, x in enumerate(ns)} for v, ns in CYC.items()}


def frame_image(s: int, t: int, r: int, x: int) -> int:
    """Image of position ``x`` (a neighbour of ``s``) under frame ``(s, t, r)``."""
    return CYC[t][(r - IDX[s][x]) % 5]


def frame_from_pair(s: int, t: int, x: int, y: int) -> int:
    """The rotation index r of the orientation-reversing frame with ``x -> y``."""
    return (IDX[t][y] + IDX[s][x]) % 5


# --------------------------------------------------------------------------
# link templates
# --------------------------------------------------------------------------

PARENT, CHILD, OUTSIDE = "P", "C", "-"

INTERIOR = frozenset()
APEX_REGION = frozenset({0, 1, 2})


def face_region(f: int) -> frozenset:
    return frozenset({f})


def edge_region(f: int, g: int) -> frozenset:
    return frozenset({f, g})


@dataclass(frozen=True)
class LinkTemplate:
    """Roles of the 12 link positions for one vertex type (in canonical coordinates)."""

    type: str
    region: frozenset
    parents: tuple[int, ...]
    child_regions: dict = field(hash=False, compare=False)
    name: str = ""

    @property
    def children(self) -> tuple[int, ...]:
        return tuple(sorted(self.child_regions))

    @property
    def roles(self) -> tuple[str, ...]:
        return tuple(
            PARENT if p in self.parents else CHILD if p in self.child_regions else OUTSIDE
            for p in range(12)
        )

    @property
    def child_link(self) -> tuple[tuple[int, int], ...]:
        """Pairs of child positions on a common square through the vertex."""
        cs = self.children
        return tuple((p, q) for p, q in combinations(cs, 2) if q in ADJ[p])

    def slot_kind(self, c: int) -> int:
        """Number of parent positions adjacent to child slot ``c``."""
        return len(ADJ[c] & set(self.parents))


def _interior(kind: str, parents: tuple[int, ...]) -> LinkTemplate:
    kids = {p: INTERIOR for p in range(12) if p not in parents}
    return LinkTemplate(kind, INTERIOR, parents, kids, kind)


def _face(kind: str, f: int) -> LinkTemplate:
    hub = 0
    ring = CYC[hub]
    nparents = 2 if kind == "A" else 1
    kids = {hub: INTERIOR}
    for p in ring[nparents:]:
        kids[p] = face_region(f)
    return LinkTemplate(kind, face_region(f), ring[:nparents], kids, f"{kind}{f}")


def _winger(f: int, g: int) -> LinkTemplate:
    # parent 0; cube triangles (0,1,2) and (7,1,2); 7 continues the lateral edge
    kids = {1: face_region(f), 2: face_region(g), 7: edge_region(f, g)}
    return LinkTemplate("1", edge_region(f, g), (0,), kids, f"1:{f}{g}")


def _apex() -> LinkTemplate:
    kids = {i: edge_region(i, (i + 1) % 3) for i in range(3)}
    return LinkTemplate("apex", APEX_REGION, (), kids, "apex")


def _build_templates():
    ts = [_apex()]
    for f, g in ((0, 1), (1, 2), (2, 0)):
        ts.append(_winger(f, g))
        ts.append(_winger(g, f))
    for f in range(3):
        ts.append(_face("A", f))
        ts.append(_face("B", f))
    ts += [_interior("C", (0, 1, 2)), _interior("D", (0, 1)), _interior("E", (0,))]
    return tuple(ts)


TEMPLATES: tuple[LinkTemplate, ...] = _build_templates()
TEMPLATE_ID = {t.name: i for i, t in enumerate(TEMPLATES)}
APEX_ID = TEMPLATE_ID["apex"]

assert 7 in ADJ[1] and 7 in ADJ[2] and 7 not in ADJ[0]

OUT_DEGREE = {"apex": 3, "1": 3, "A": 4, "B": 5, "C": 9, "D": 10, "E": 11}
IN_DEGREE = {"apex": 0, "1": 1, "A": 2, "B": 1, "C": 3, "D": 2, "E": 1}

for _t in TEMPLATES:
    assert len(_t.parents) == IN_DEGREE[_t.type] and len(_t.child_regions) == OUT_DEGREE[_t.type]


def candidate_templates(region: frozenset, k: int) -> list[int]:
    """Template ids a new vertex may take, given its slot region and parent count."""
    if not region:
        kind = {3: "C", 2: "D", 1: "E"}.get(k)
        return [TEMPLATE_ID[kind]] if kind else []
    if len(region) == 1:
        (f,) = region
        kind = {2: "A", 1: "B"}.get(k)
        return [TEMPLATE_ID[f"{kind}{f}"]] if kind else []
    if len(region) == 2 and k == 1:
        return [i for i, t in enumerate(TEMPLATES) if t.type == "1" and t.region == region]
    return []
