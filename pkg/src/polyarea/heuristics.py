"""Greedy carving heuristics that produce warm starts for both objectives.

Start from the convex hull and repeatedly replace a boundary edge (a, b) by
(a, p), (p, b) for an interior point p, carving out the triangle (a, p, b).
Min-area carves the largest admissible triangle, max-area the smallest.
When no carve is admissible the last choice is undone and the next one tried.
"""
from __future__ import annotations

from .geom import Location, convex_hull, cross, point_in_triangle, segments_cross
from .instance import Instance, Polygonization, validate_polygonization


class HeuristicError(RuntimeError):
    pass


MAX_BACKTRACKS = 10_000


def _candidates(pts, poly, unplaced, largest: bool) -> list[tuple]:
    m = len(poly)
    cands = []
    for p in sorted(unplaced):
        for k in range(m):
            a, b = poly[k], poly[(k + 1) % m]
            area = cross(pts[a], pts[p], pts[b])
            # p must lie left of the CCW edge a->b, i.e. abp is CCW
            if area >= 0:
                continue
            cands.append((area if largest else -area, p, k))
    # area is negative here: sorting ascending puts the largest |area| first for min-area
    cands.sort()
    return cands


def _carve(inst: Instance, largest: bool) -> Polygonization:
    pts = inst.points
    poly = convex_hull(pts)
    unplaced = set(range(inst.n)) - set(poly)
    cands = _candidates(pts, poly, unplaced, largest)
    pos = 0
    # greedy carving can paint itself into a corner (an interior pocket no
    # boundary edge sees); then undo the last carve and take the next choice
    trail = []
    backtracks = 0
    while unplaced:
        chosen = None
        while pos < len(cands):
            _, p, k = cands[pos]
            pos += 1
            a, b = poly[k], poly[(k + 1) % len(poly)]
            if _admissible(pts, poly, unplaced, p, a, b):
                chosen = (p, k)
                break
        if chosen is None:
            backtracks += 1
            if not trail or backtracks > MAX_BACKTRACKS:
                raise HeuristicError("no admissible carve found")
            poly, unplaced, cands, pos = trail.pop()
            continue
        trail.append((list(poly), set(unplaced), cands, pos))
        p, k = chosen
        poly.insert(k + 1, p)
        unplaced.remove(p)
        cands = _candidates(pts, poly, unplaced, largest)
        pos = 0
    return validate_polygonization(inst, poly)


def _admissible(pts, poly, unplaced, p, a, b) -> bool:
    for q in unplaced:
        if q != p and point_in_triangle(pts[q], pts[a], pts[p], pts[b]) is not Location.OUTSIDE:
            return False
    m = len(poly)
    for k in range(m):
        u, v = poly[k], poly[(k + 1) % m]
        if (u, v) == (a, b):
            continue
        if segments_cross(pts[a], pts[p], pts[u], pts[v]) or segments_cross(pts[p], pts[b], pts[u], pts[v]):
            return False
    return True


def greedy_min_area(inst: Instance) -> Polygonization:
    return _carve(inst, largest=True)


def greedy_max_area(inst: Instance) -> Polygonization:
    return _carve(inst, largest=False)


def greedy(inst: Instance, objective: str) -> Polygonization:
    return greedy_min_area(inst) if objective == "min" else greedy_max_area(inst)
