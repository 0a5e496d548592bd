"""Seeded random instance generators."""
from __future__ import annotations

import math
import random

from .geom import Location, Point, convex_hull, point_in_triangle, validate_general_position
from .instance import Instance

COORD_MAX = 10**6
MAX_TRIES = 100_000


def _general(pts: list[Point]) -> bool:
    return validate_general_position(pts) is None


def uniform_instance(n: int, seed: int, coord_max: int = COORD_MAX, name: str | None = None) -> Instance:
    """n uniform integer points in [0, coord_max]^2, resampled until in general position."""
    rng = random.Random(seed)
    pts: list[Point] = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > MAX_TRIES:
            raise RuntimeError("could not place points in general position")
        p = Point(rng.randint(0, coord_max), rng.randint(0, coord_max))
        if _general(pts + [p]):
            pts.append(p)
    return Instance(name or f"uniform-n{n}-s{seed}", tuple(pts))


def convex_position(k: int, rng: random.Random, coord_max: int = COORD_MAX) -> list[Point]:
    """k integer points in strictly convex position near a circle."""
    c = coord_max // 2
    r = coord_max // 2 - 1
    for _ in range(MAX_TRIES):
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(k))
        pts = [Point(c + round(r * math.cos(a)), c + round(r * math.sin(a))) for a in angles]
        if _general(pts) and len(convex_hull(pts)) == k:
            return pts
    raise RuntimeError(f"could not place {k} points in convex position")


def _strictly_inside(p: Point, hull_pts: list[Point]) -> bool:
    a = hull_pts[0]
    return any(point_in_triangle(p, a, hull_pts[i], hull_pts[i + 1]) is Location.INSIDE
               for i in range(1, len(hull_pts) - 1))


def hull_size_instance(n: int, k: int, seed: int, coord_max: int = COORD_MAX, name: str | None = None) -> Instance:
    """k points in convex position plus n-k points strictly inside their hull."""
    if not 3 <= k <= n:
        raise ValueError("need 3 <= k <= n")
    rng = random.Random(seed)
    hull = convex_position(k, rng, coord_max)
    pts = list(hull)
    ring = [hull[i] for i in convex_hull(hull)]
    xs = [p.x for p in hull]
    ys = [p.y for p in hull]
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > MAX_TRIES:
            raise RuntimeError("could not place interior points")
        p = Point(rng.randint(min(xs), max(xs)), rng.randint(min(ys), max(ys)))
        if _strictly_inside(p, ring) and _general(pts + [p]):
            pts.append(p)
    return Instance(name or f"hull-n{n}-k{k}-s{seed}", tuple(pts))
