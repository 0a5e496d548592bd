"""Triangle-based formulation: one binary per empty triangle.

A polygonization is encoded by any of its triangulations: exactly n-2
interior-disjoint empty triangles whose union is the polygon. The objective
is the sum of triangle twice-areas. Count, coverage, halfspace and hull-chord
rows are static; conflicts, subtours, angle and point-based cuts are lazy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bnc import BranchAction
from .cutgraph import CallbackGraph, connected_components, grow_maximal_clique
from .geom import (
    Location,
    convex_hull,
    cross,
    enumerate_empty_triangles,
    hull_chords,
    interior_angle,
    orient,
    point_in_triangle,
    segments_cross,
    triangle_twice_area,
    triangles_conflict,
)
from .instance import Instance, Polygonization, validate_polygonization
from .model import Constraint, Model

ANGLE_GRAIN = 1e-9


@dataclass(frozen=True)
class TriConfig:
    angle: bool = False
    point: bool = False
    branch_fix: bool = False


TRI_PRESETS = {
    "tri-v1": TriConfig(),
    "tri-v2": TriConfig(angle=True),
    "tri-v3": TriConfig(angle=True, point=True),
}


class TriangleFormulation:
    def __init__(self, inst: Instance, objective: str, config: TriConfig = TriConfig()):
        self.inst = inst
        self.objective = objective
        self.config = config
        pts = self.pts = inst.points
        self.n = inst.n
        self.triangles = enumerate_empty_triangles(pts)
        self.model = Model(objective)
        for t in self.triangles:
            self.model.add_var(t, triangle_twice_area(t, pts))
        self.index = {t: k for k, t in enumerate(self.triangles)}
        self.at_point: dict[int, list[int]] = {i: [] for i in range(self.n)}
        self.at_edge: dict[tuple[int, int], list[int]] = {}
        for k, t in enumerate(self.triangles):
            for i in t:
                self.at_point[i].append(k)
            for u, v in combinations(t, 2):
                self.at_edge.setdefault((u, v), []).append(k)
        self._conflict_cache: dict[tuple[int, int], bool] = {}
        self.hull = convex_hull(pts)
        self.chords = hull_chords(pts, self.hull)
        self._build_static()

    # -- construction ----------------------------------------------------------

    def conflicts(self, a: int, b: int) -> bool:
        key = (a, b) if a < b else (b, a)
        hit = self._conflict_cache.get(key)
        if hit is None:
            hit = triangles_conflict(self.triangles[a], self.triangles[b], self.pts)
            self._conflict_cache[key] = hit
        return hit

    def third(self, k: int, u: int, v: int) -> int:
        (w,) = set(self.triangles[k]) - {u, v}
        return w

    def sides(self, u: int, v: int) -> tuple[list[int], list[int]]:
        """Triangles with edge (u, v) left and right of the directed line u -> v."""
        plus, minus = [], []
        for k in self.at_edge.get((min(u, v), max(u, v)), ()):
            w = self.third(k, u, v)
            (plus if orient(self.pts[u], self.pts[v], self.pts[w]) > 0 else minus).append(k)
        return plus, minus

    def _build_static(self) -> None:
        m = self.model
        m.add(Constraint.build(((k, 1.0) for k in range(len(self.triangles))), "==", self.n - 2, "count"))
        for i in range(self.n):
            m.add(Constraint.build(((k, 1.0) for k in self.at_point[i]), ">=", 1, "coverage"))
        for (u, v) in sorted(self.at_edge):
            plus, minus = self.sides(u, v)
            # a one-member side gives x <= 1, already a variable bound
            for side in (plus, minus):
                if len(side) >= 2:
                    m.add(Constraint.build(((k, 1.0) for k in side), "<=", 1, "halfspace"))
            if frozenset((u, v)) in self.chords and (plus or minus):
                terms = [(k, 1.0) for k in plus] + [(k, -1.0) for k in minus]
                m.add(Constraint.build(terms, "==", 0, "hull-chord"))

    # -- vectors and polygons --------------------------------------------------

    def vector(self, triangles) -> np.ndarray:
        x = np.zeros(len(self.triangles))
        for t in triangles:
            x[self.index[tuple(sorted(t))]] = 1.0
        return x

    def char_vector(self, order) -> np.ndarray:
        """0/1 vector of the ear-clipping triangulation of ``order``."""
        return self.vector(ear_clip(self.inst, order))

    def selected(self, x) -> list[int]:
        return [int(k) for k in np.nonzero(np.asarray(x) > 0.5)[0]]

    def extract(self, x) -> Polygonization:
        return extract_triangle_polygon(self.inst, [self.triangles[k] for k in self.selected(x)])

    def accept(self, x) -> Polygonization:
        poly = self.extract(x)
        if poly.twice_area != int(round(self.model.objective(x))):
            raise ValueError("objective disagrees with the polygon's twice-area")
        return poly

    # -- separation helpers ------------------------------------------------------

    def dual_graph(self, sel: list[int]) -> CallbackGraph:
        return dual_callback_graph([self.triangles[k] for k in sel], ids=sel)

    def boundary_edges(self, comp: list[int]) -> list[tuple[tuple[int, int], int]]:
        """Edges used by exactly one triangle of ``comp``, with that triangle."""
        use: dict[tuple[int, int], list[int]] = {}
        for k in comp:
            for u, v in combinations(self.triangles[k], 2):
                use.setdefault((u, v), []).append(k)
        return [(e, ks[0]) for e, ks in sorted(use.items()) if len(ks) == 1]

    def delta(self, comp: list[int]) -> list[int]:
        """Candidates that can attach to ``comp`` across one of its boundary edges."""
        inside = set(comp)
        out = set()
        for (u, v), k in self.boundary_edges(comp):
            w = self.third(k, u, v)
            side = orient(self.pts[u], self.pts[v], self.pts[w])
            for c in self.at_edge[(u, v)]:
                if c in inside or c in out:
                    continue
                if orient(self.pts[u], self.pts[v], self.pts[self.third(c, u, v)]) == side:
                    continue
                if any(self.conflicts(c, d) for d in comp):
                    continue
                out.add(c)
        return sorted(out)

    def fans(self, sel: list[int]) -> dict[int, list[list[int]]]:
        return compute_triangle_fans([self.triangles[k] for k in sel], self.n, ids=sel)

    # -- separators ---------------------------------------------------------------

    def separators(self) -> list:
        seps: list = [TriSubtourSeparator(self)]
        if self.config.angle:
            seps.append(AngleSeparator(self))
        if self.config.point:
            seps.append(PointSubtourSeparator(self))
        seps.append(TriCliqueSeparator(self))
        seps.append(NoGoodSeparator(self))
        if self.config.branch_fix:
            seps.append(TriBranchFixer(self))
        return seps


def dual_callback_graph(triangles, ids=None) -> CallbackGraph:
    """Vertex per selected triangle; edge when two triangles share exactly two points."""
    ids = list(range(len(triangles))) if ids is None else list(ids)
    edges = []
    for (a, ta), (b, tb) in combinations(zip(ids, triangles), 2):
        if len(set(ta) & set(tb)) == 2:
            edges.append((a, b))
    return CallbackGraph.from_edges(ids, edges)


def compute_triangle_fans(triangles, n: int, ids=None) -> dict[int, list[list[int]]]:
    """Per point, the selected triangles containing it grouped into dual-connected fans."""
    ids = list(range(len(triangles))) if ids is None else list(ids)
    by_point: dict[int, list[tuple[int, tuple]]] = {i: [] for i in range(n)}
    for k, t in zip(ids, triangles):
        for i in t:
            by_point[i].append((k, t))
    fans = {}
    for s, items in by_point.items():
        g = dual_callback_graph([t for _, t in items], ids=[k for k, _ in items])
        fans[s] = [sorted(c) for c in connected_components(g)]
    return fans


class TriSubtourSeparator:
    family = "tri-subtour"
    trigger = "integral"
    stage = 0

    def __init__(self, form: TriangleFormulation):
        self.form = form

    def separate(self, x) -> list[Constraint]:
        form = self.form
        sel = form.selected(x)
        comps = connected_components(form.dual_graph(sel))
        if len(comps) <= 1:
            return []
        cuts = []
        for comp in comps:
            if len(comp) > form.n - 3:
                continue
            terms = [(k, 1.0) for k in comp] + [(k, -1.0) for k in form.delta(comp)]
            cuts.append(Constraint.build(terms, "<=", len(comp) - 1, self.family))
        return cuts


class TriCliqueSeparator:
    family = "tri-clique"
    trigger = "integral"
    stage = 1

    def __init__(self, form: TriangleFormulation):
        self.form = form

    def separate(self, x) -> list[Constraint]:
        form = self.form
        sel = form.selected(x)
        every = range(len(form.triangles))
        covered: set = set()
        cuts = []
        for a, b in combinations(sel, 2):
            if (a, b) in covered or not form.conflicts(a, b):
                continue
            clique = grow_maximal_clique((a, b), sel, every, form.conflicts)
            for p, q in combinations(sorted(clique), 2):
                covered.add((p, q))
            cuts.append(Constraint.build(((k, 1.0) for k in clique), "<=", 1, self.family))
        return cuts


def _direction(pts, s: int, p: int) -> float:
    return math.atan2(pts[p].y - pts[s].y, pts[p].x - pts[s].x)


def wedge(tri, s: int, pts) -> tuple[float, float]:
    """Counterclockwise angular interval (start, end) of ``tri`` at its corner ``s``."""
    u, v = [i for i in tri if i != s]
    if cross(pts[s], pts[u], pts[v]) < 0:
        u, v = v, u
    return _direction(pts, s, u), _direction(pts, s, v)


def _ccw_gap(a: float, b: float) -> float:
    return (b - a) % (2 * math.pi)


def angle_gaps(top, bottom, s: int, pts) -> tuple[float, float]:
    """The two angular gaps at ``s`` between two triangles with disjoint wedges."""
    a0, a1 = wedge(top, s, pts)
    b0, b1 = wedge(bottom, s, pts)
    return _ccw_gap(a1, b0), _ccw_gap(b1, a0)


def round_down(v: float) -> float:
    return math.floor(v / ANGLE_GRAIN) * ANGLE_GRAIN


def round_up(v: float) -> float:
    return math.ceil(v / ANGLE_GRAIN) * ANGLE_GRAIN


def angle_cut(form: TriangleFormulation, s: int, top: int, bottom: int, family: str = "tri-angle") -> Constraint:
    """min(gap) * (x_top + x_bottom - 1) <= sum of beta * x over compatible triangles at s."""
    pts = form.pts
    ta, tb = form.triangles[top], form.triangles[bottom]
    alpha = round_down(max(0.0, min(angle_gaps(ta, tb, s, pts))))
    terms = [(top, alpha), (bottom, alpha)]
    for k in form.at_point[s]:
        if k in (top, bottom) or form.conflicts(k, top) or form.conflicts(k, bottom):
            continue
        terms.append((k, -round_up(interior_angle(form.triangles[k], s, pts))))
    return Constraint.build(terms, "<=", alpha, family)


def pick_angle_pair(form: TriangleFormulation, s: int, fans: list[list[int]]) -> tuple[int, int] | None:
    pts = form.pts
    best = None
    for f1, f2 in combinations(fans, 2):
        for a in f1:
            for b in f2:
                top, bottom = (a, b) if a < b else (b, a)
                if form.conflicts(top, bottom):
                    continue
                al, ar = angle_gaps(form.triangles[top], form.triangles[bottom], s, pts)
                area = form.model.obj[top] + form.model.obj[bottom]
                key = (abs(al - ar), area, top, bottom)
                if best is None or key < best:
                    best = key
    return None if best is None else (best[2], best[3])


class AngleSeparator:
    family = "tri-angle"
    trigger = "integral"
    stage = 0

    def __init__(self, form: TriangleFormulation):
        self.form = form

    def separate(self, x) -> list[Constraint]:
        form = self.form
        cuts = []
        for s, fans in form.fans(form.selected(x)).items():
            if len(fans) < 2:
                continue
            pair = pick_angle_pair(form, s, fans)
            if pair is not None:
                cuts.append(angle_cut(form, s, *pair, family=self.family))
        return cuts


def point_cuts(form: TriangleFormulation, X: set, family: str = "tri-point") -> list[Constraint]:
    """Both point-set cuts for a vertex set X with 3 <= |X| <= n-2."""
    one, two = [], []
    for k, t in enumerate(form.triangles):
        c = sum(1 for i in t if i in X)
        if c == 1:
            one.append(k)
        elif c == 2:
            two.append(k)
    size = len(X)
    attach = Constraint.build([(k, 1.0) for k in one + two], ">=", 2, family)
    spread = Constraint.build([(k, 1.0) for k in one] + [(k, size - 1.0) for k in two], ">=", size, family)
    return [attach, spread]


class PointSubtourSeparator:
    family = "tri-point"
    trigger = "integral"
    stage = 0

    def __init__(self, form: TriangleFormulation):
        self.form = form

    def separate(self, x) -> list[Constraint]:
        form = self.form
        sel = form.selected(x)
        comps = connected_components(form.dual_graph(sel))
        if len(comps) <= 1:
            return []
        cuts = []
        for comp in comps:
            X = {i for k in comp for i in form.triangles[k]}
            if 3 <= len(X) <= form.n - 2:
                cuts.extend(point_cuts(form, X, self.family))
        return cuts


class NoGoodSeparator:
    """Last resort: exclude an integral selection that passes every other check
    but whose union is not a simple polygon through all points."""

    family = "tri-nogood"
    trigger = "integral"
    stage = 2

    def __init__(self, form: TriangleFormulation):
        self.form = form

    def separate(self, x) -> list[Constraint]:
        try:
            self.form.extract(x)
            return []
        except ValueError:
            sel = self.form.selected(x)
            return [Constraint.build(((k, 1.0) for k in sel), "<=", len(sel) - 1, self.family)]


class TriBranchFixer:
    family = "tri-branch"
    trigger = "branching"

    def __init__(self, form: TriangleFormulation):
        self.form = form

    def on_branch(self, var: int, fixed: dict) -> BranchAction:
        return branch_fix_triangles(self.form, var, fixed)


def branch_fix_triangles(form: TriangleFormulation, var: int, fixed: dict) -> BranchAction:
    """Zero every triangle conflicting with ``var``; prune if the 1-fixed
    triangles can no longer be joined through non-zero candidates."""
    zero = {k for k in range(len(form.triangles)) if k != var and form.conflicts(k, var)}
    ones = sorted(k for k, v in fixed.items() if v == 1) or [var]
    blocked = zero | {k for k, v in fixed.items() if v == 0}
    alive = [k for k in range(len(form.triangles)) if k not in blocked]
    g = dual_callback_graph([form.triangles[k] for k in alive], ids=alive)
    comp_of = {}
    for c, comp in enumerate(connected_components(g)):
        for k in comp:
            comp_of[k] = c
    prune = len({comp_of.get(k, -1 - k) for k in ones}) > 1
    return BranchAction(zero, prune)


# -- polygons and triangulations -------------------------------------------------


def extract_triangle_polygon(inst: Instance, triangles) -> Polygonization:
    """Boundary of the union of the selected triangles as a polygonization."""
    use: dict[tuple[int, int], int] = {}
    for t in triangles:
        for u, v in combinations(sorted(t), 2):
            use[(u, v)] = use.get((u, v), 0) + 1
    nbr: dict[int, list[int]] = {}
    for (u, v), c in use.items():
        if c == 1:
            nbr.setdefault(u, []).append(v)
            nbr.setdefault(v, []).append(u)
    if len(nbr) != inst.n or any(len(vs) != 2 for vs in nbr.values()):
        raise ValueError("union boundary is not a single cycle through all points")
    order = [0, min(nbr[0])]
    while len(order) < inst.n:
        a, b = nbr[order[-1]]
        nxt = a if a != order[-2] else b
        if nxt == 0:
            raise ValueError("union boundary splits into several cycles")
        order.append(nxt)
    poly = validate_polygonization(inst, order)
    if poly.twice_area != sum(triangle_twice_area(t, inst.points) for t in triangles):
        raise ValueError("triangles do not tile the boundary polygon")
    return poly if poly.orientation == "ccw" else validate_polygonization(inst, poly.ccw_order())


def ear_clip(inst: Instance, order) -> list[tuple[int, int, int]]:
    """Triangulate a simple polygon by repeatedly cutting off the first ear."""
    pts = inst.points
    ring = list(validate_polygonization(inst, order).ccw_order())
    out = []
    while len(ring) > 3:
        for k in range(len(ring)):
            a, b, c = ring[k - 1], ring[k], ring[(k + 1) % len(ring)]
            if cross(pts[a], pts[b], pts[c]) <= 0:
                continue
            if any(point_in_triangle(pts[p], pts[a], pts[b], pts[c]) is not Location.OUTSIDE
                   for p in ring if p not in (a, b, c)):
                continue
            out.append(tuple(sorted((a, b, c))))
            del ring[k]
            break
        else:
            raise ValueError("no ear found; polygon is not simple")
    out.append(tuple(sorted(ring)))
    return out


def polygon_triangulations(inst: Instance, order):
    """Yield every triangulation of a simple polygon (as sorted triangle lists)."""
    pts = inst.points
    ring = list(validate_polygonization(inst, order).ccw_order())
    boundary = [(ring[k], ring[(k + 1) % len(ring)]) for k in range(len(ring))]

    def inside(a, b, c) -> bool:
        if cross(pts[a], pts[b], pts[c]) <= 0:
            return False
        for u, v in boundary:
            for p, q in ((a, b), (b, c), (c, a)):
                if len({u, v, p, q}) == 4 and segments_cross(pts[u], pts[v], pts[p], pts[q]):
                    return False
        return all(point_in_triangle(pts[p], pts[a], pts[b], pts[c]) is Location.OUTSIDE
                   for p in ring if p not in (a, b, c))

    def rec(poly):
        if len(poly) < 3:
            yield []
            return
        a, c = poly[0], poly[-1]
        for k in range(1, len(poly) - 1):
            b = poly[k]
            if not inside(a, b, c):
                continue
            for left in rec(poly[: k + 1]):
                for right in rec(poly[k:]):
                    yield left + [tuple(sorted((a, b, c)))] + right

    for tri in rec(ring):
        yield sorted(tri)
