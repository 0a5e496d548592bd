"""Brute-force enumeration of all simple polygonizations of small point sets."""
from __future__ import annotations

from itertools import permutations
from typing import Iterator

from .geom import segments_cross, twice_signed_area
from .instance import Instance, PolygonError, Polygonization, validate_polygonization

DEFAULT_MAX_N = 10


class OracleRefused(ValueError):
    pass


def _check_size(inst: Instance, max_n: int) -> None:
    if inst.n > max_n:
        raise OracleRefused(f"instance has {inst.n} points, oracle limit is {max_n}")


def enumerate_polygonizations(inst: Instance, max_n: int = DEFAULT_MAX_N) -> Iterator[Polygonization]:
    """Yield every simple polygonization once, as a CCW order starting at point 0.

    Orders are produced in lexicographic order of the index sequence.
    """
    _check_size(inst, max_n)
    pts = inst.points
    n = inst.n
    path = [0]
    used = [False] * n
    used[0] = True

    def crosses_path(a: int, b: int, skip_first: bool) -> bool:
        # new edge (a, b) against all path edges except the one ending in a
        pa, pb = pts[a], pts[b]
        start = 1 if skip_first else 0
        for k in range(start, len(path) - 2):
            if segments_cross(pa, pb, pts[path[k]], pts[path[k + 1]]):
                return True
        return False

    def rec() -> Iterator[tuple[int, ...]]:
        last = path[-1]
        if len(path) == n:
            # closing edge may touch the first path edge only at point 0
            if not crosses_path(last, 0, skip_first=True):
                yield tuple(path)
            return
        for v in range(1, n):
            if used[v]:
                continue
            if len(path) >= 2 and crosses_path(last, v, skip_first=False):
                continue
            used[v] = True
            path.append(v)
            yield from rec()
            path.pop()
            used[v] = False

    for order in rec():
        if twice_signed_area([pts[i] for i in order]) > 0:
            yield Polygonization(order, twice_signed_area([pts[i] for i in order]), "ccw")


def count_by_permutation_filter(inst: Instance, max_n: int = 8) -> int:
    """Independent count: filter all cyclic orders through the validator."""
    _check_size(inst, max_n)
    n = inst.n
    count = 0
    for rest in permutations(range(1, n)):
        if rest[0] > rest[-1]:
            # each cycle appears once per direction
            continue
        try:
            validate_polygonization(inst, (0,) + rest)
        except PolygonError:
            continue
        count += 1
    return count


def oracle_optimum(inst: Instance, objective: str, max_n: int = DEFAULT_MAX_N) -> tuple[int, tuple[int, ...]]:
    """Exact optimal twice-area and the first canonical order attaining it."""
    if objective not in ("min", "max"):
        raise ValueError(objective)
    best = None
    for poly in enumerate_polygonizations(inst, max_n):
        if best is None:
            best = poly
        elif objective == "min" and poly.twice_area < best.twice_area:
            best = poly
        elif objective == "max" and poly.twice_area > best.twice_area:
            best = poly
    assert best is not None, "every general-position point set has a polygonization"
    return best.twice_area, best.order


def oracle_summary(inst: Instance, max_n: int = DEFAULT_MAX_N) -> dict:
    polys = list(enumerate_polygonizations(inst, max_n))
    lo = min(polys, key=lambda p: p.twice_area)
    hi = max(polys, key=lambda p: p.twice_area)
    return {
        "count": len(polys),
        "min": lo.twice_area,
        "min_order": list(lo.order),
        "max": hi.twice_area,
        "max_order": list(hi.order),
    }
