"""Exact integer geometry kernel.

Every predicate works on integer coordinates and never touches floating
point, except :func:`interior_angle`. Areas are carried as *twice* the
Euclidean area so they stay integral.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

COORD_BOUND = 2**30


class Point(NamedTuple):
    x: int
    y: int


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


class GeometryError(ValueError):
    pass


def cross(a: Point, b: Point, c: Point) -> int:
    """Twice the signed area of triangle ``abc``."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def orient(a: Point, b: Point, c: Point) -> int:
    v = cross(a, b, c)
    return (v > 0) - (v < 0)


def twice_signed_area(order: Sequence[Point]) -> int:
    if len(order) < 3:
        raise GeometryError("a polygon needs at least 3 vertices")
    total = 0
    prev = order[-1]
    for cur in order:
        total += prev[0] * cur[1] - cur[0] * prev[1]
        prev = cur
    return total


def edge_coefficient(i: int, j: int, ref: Point, pts: Sequence[Point]) -> int:
    """Signed twice-area of the triangle (ref, p_i, p_j)."""
    if i == j:
        raise GeometryError("half-edge endpoints must differ")
    return cross(ref, pts[i], pts[j])


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    # p is assumed collinear with a, b
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff closed segments ab and cd meet somewhere other than a shared endpoint."""
    shared = {a, b} & {c, d}
    if len(shared) == 2:
        # same segment (possibly reversed)
        return True
    d1 = orient(a, b, c)
    d2 = orient(a, b, d)
    d3 = orient(c, d, a)
    d4 = orient(c, d, b)
    if shared:
        s = next(iter(shared))
        u = b if a == s else a
        v = d if c == s else c
        # only overlap beyond the shared endpoint is collinear and same direction
        if orient(s, u, v) != 0:
            return False
        return (u[0] - s[0]) * (v[0] - s[0]) + (u[1] - s[1]) * (v[1] - s[1]) > 0
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _on_segment(a, b, c):
        return True
    if d2 == 0 and _on_segment(a, b, d):
        return True
    if d3 == 0 and _on_segment(c, d, a):
        return True
    if d4 == 0 and _on_segment(c, d, b):
        return True
    return False


def point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> Location:
    s = orient(a, b, c)
    if s == 0:
        raise GeometryError("degenerate triangle")
    o1, o2, o3 = orient(a, b, p) * s, orient(b, c, p) * s, orient(c, a, p) * s
    if o1 < 0 or o2 < 0 or o3 < 0:
        return Location.OUTSIDE
    if o1 == 0 or o2 == 0 or o3 == 0:
        return Location.BOUNDARY
    return Location.INSIDE


def convex_hull(pts: Sequence[Point]) -> list[int]:
    """Indices of hull vertices in counterclockwise order, starting at the smallest index."""
    if len(pts) < 3:
        raise GeometryError("hull needs at least 3 points")
    idx = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))

    def chain(seq: list[int]) -> list[int]:
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and cross(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(idx)
    upper = chain(idx[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise GeometryError("all points are collinear")
    k = hull.index(min(hull))
    return hull[k:] + hull[:k]


def hull_chords(pts: Sequence[Point], hull: Sequence[int] | None = None) -> set[frozenset[int]]:
    """Segments between non-adjacent hull vertices."""
    hull = list(convex_hull(pts) if hull is None else hull)
    h = len(hull)
    out = set()
    for a in range(h):
        for b in range(a + 2, h):
            if a == 0 and b == h - 1:
                continue
            out.add(frozenset((hull[a], hull[b])))
    return out


def enumerate_empty_triangles(pts: Sequence[Point]) -> list[tuple[int, int, int]]:
    """All index triples i<j<k whose closed triangle holds no other point."""
    n = len(pts)
    out = []
    for i, j, k in combinations(range(n), 3):
        a, b, c = pts[i], pts[j], pts[k]
        if cross(a, b, c) == 0:
            continue
        if all(
            point_in_triangle(pts[m], a, b, c) is Location.OUTSIDE
            for m in range(n)
            if m != i and m != j and m != k
        ):
            out.append((i, j, k))
    return out


def triangle_twice_area(tri: Sequence[int], pts: Sequence[Point]) -> int:
    return abs(cross(pts[tri[0]], pts[tri[1]], pts[tri[2]]))


def triangles_conflict(t1: Sequence[int], t2: Sequence[int], pts: Sequence[Point]) -> bool:
    """True iff the open interiors of the two triangles intersect."""
    s1, s2 = set(t1), set(t2)
    if s1 == s2:
        return False
    shared = s1 & s2
    if len(shared) == 2:
        u, v = sorted(shared)
        (w1,) = s1 - shared
        (w2,) = s2 - shared
        return orient(pts[u], pts[v], pts[w1]) == orient(pts[u], pts[v], pts[w2])
    a = [pts[i] for i in t1]
    b = [pts[i] for i in t2]
    for p, q in ((0, 1), (1, 2), (2, 0)):
        for r, s in ((0, 1), (1, 2), (2, 0)):
            if _proper_cross(a[p], a[q], b[r], b[s]):
                return True
    for i in t2:
        if i not in s1 and point_in_triangle(pts[i], *a) is Location.INSIDE:
            return True
    for i in t1:
        if i not in s2 and point_in_triangle(pts[i], *b) is Location.INSIDE:
            return True
    if len(shared) == 1:
        # both wedges at the common apex overlap although no edges cross
        (s,) = shared
        return _wedges_overlap(s, [i for i in t1 if i != s], [i for i in t2 if i != s], pts)
    return False


def _proper_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    return orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0


def _wedges_overlap(s: int, e1: list[int], e2: list[int], pts: Sequence[Point]) -> bool:
    # a ray of one wedge strictly inside the other wedge means the interiors meet near s
    def strictly_inside(ray: int, wedge: list[int]) -> bool:
        p, q = pts[wedge[0]], pts[wedge[1]]
        o = pts[s]
        if cross(o, p, q) < 0:
            p, q = q, p
        r = pts[ray]
        return cross(o, p, r) > 0 and cross(o, r, q) > 0

    return any(strictly_inside(r, e2) for r in e1) or any(strictly_inside(r, e1) for r in e2)


def interior_angle(tri: Sequence[int], s: int, pts: Sequence[Point]) -> float:
    """Inner angle (radians) of triangle ``tri`` at its vertex ``s``."""
    if s not in tri:
        raise GeometryError("vertex not in triangle")
    o = pts[s]
    u, v = (pts[i] for i in tri if i != s)
    ux, uy = u[0] - o[0], u[1] - o[1]
    vx, vy = v[0] - o[0], v[1] - o[1]
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


# -- slabs -------------------------------------------------------------------


@dataclass(frozen=True)
class Slab:
    left: int
    right: int
    # undirected edges (i, j) with x_i < x_j, bottom to top at the slab midpoint
    edges: tuple[tuple[int, int], ...]


def _y_at(pts: Sequence[Point], i: int, j: int, twice_x: int) -> Fraction:
    (x1, y1), (x2, y2) = pts[i], pts[j]
    return Fraction(y1) + Fraction((y2 - y1) * (twice_x - 2 * x1), 2 * (x2 - x1))


def build_slabs(pts: Sequence[Point], edges: Sequence[tuple[int, int]]) -> list[Slab]:
    """Vertical strips between consecutive distinct x-coordinates with their crossing edges."""
    xs = sorted({p[0] for p in pts})
    norm = []
    for i, j in edges:
        if pts[i][0] == pts[j][0]:
            continue
        norm.append((i, j) if pts[i][0] < pts[j][0] else (j, i))
    norm = sorted(set(norm))
    slabs = []
    for left, right in zip(xs, xs[1:]):
        mid2 = left + right
        inside = [(i, j) for i, j in norm if pts[i][0] <= left and pts[j][0] >= right]

        def key(e: tuple[int, int]) -> tuple:
            i, j = e
            dx = pts[j][0] - pts[i][0]
            # edges crossing exactly at the midpoint never coexist in a polygon; any fixed order works
            return (_y_at(pts, i, j, mid2), Fraction(pts[j][1] - pts[i][1], dx), e)

        slabs.append(Slab(left, right, tuple(sorted(inside, key=key))))
    return slabs


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class PositionViolation:
    kind: str  # "duplicate" | "collinear" | "bound"
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind} points {self.indices}"


def validate_general_position(pts: Sequence[Point], bound: int = COORD_BOUND) -> PositionViolation | None:
    """None if the points are distinct, in bounds and no three are collinear."""
    for i, p in enumerate(pts):
        if abs(p[0]) > bound or abs(p[1]) > bound:
            return PositionViolation("bound", (i,))
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            return PositionViolation("duplicate", (seen[p], i))
        seen[p] = i
    for i, j, k in combinations(range(len(pts)), 3):
        if cross(pts[i], pts[j], pts[k]) == 0:
            return PositionViolation("collinear", (i, j, k))
    return None
