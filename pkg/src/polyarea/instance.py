"""Instances, polygonizations, solution records: construction, JSON I/O and SVG."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .geom import COORD_BOUND, Point, segments_cross, twice_signed_area, validate_general_position


class InstanceError(ValueError):
    """Malformed or invalid instance data. ``code`` names the failure class."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class PolygonError(ValueError):
    def __init__(self, code: str, message: str, detail: tuple = ()):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.detail = detail


@dataclass(frozen=True)
class Instance:
    name: str
    points: tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.points)

    @classmethod
    def from_coords(cls, coords: Sequence[Sequence[int]], name: str = "unnamed", bound: int = COORD_BOUND) -> "Instance":
        pts = tuple(Point(int(x), int(y)) for x, y in coords)
        if len(pts) < 3:
            raise InstanceError("too-small", "an instance needs at least 3 points")
        bad = validate_general_position(pts, bound)
        if bad is not None:
            raise InstanceError(bad.kind, str(bad))
        return cls(name, pts)


@dataclass(frozen=True)
class Polygonization:
    order: tuple[int, ...]
    twice_area: int
    orientation: str  # "ccw" | "cw", as stored in ``order``

    @property
    def area(self) -> float:
        return self.twice_area / 2

    def ccw_order(self) -> tuple[int, ...]:
        if self.orientation == "ccw":
            return self.order
        return (self.order[0],) + tuple(reversed(self.order[1:]))


def parse_instance(text: str, bound: int = COORD_BOUND) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError("malformed", str(exc)) from exc
    if not isinstance(data, dict) or not isinstance(data.get("points"), list):
        raise InstanceError("malformed", "expected an object with a 'points' list")
    coords = []
    for pos, p in enumerate(data["points"]):
        if not isinstance(p, dict) or "x" not in p or "y" not in p:
            raise InstanceError("malformed", f"point {pos} lacks x/y")
        if "i" in p and p["i"] != pos:
            raise InstanceError("index-mismatch", f"point at position {pos} carries i={p['i']}")
        x, y = p["x"], p["y"]
        if not (isinstance(x, int) and isinstance(y, int)) or isinstance(x, bool) or isinstance(y, bool):
            raise InstanceError("malformed", f"point {pos} has non-integer coordinates")
        coords.append((x, y))
    return Instance.from_coords(coords, name=str(data.get("name", "unnamed")), bound=bound)


def write_instance(inst: Instance) -> str:
    pts = [{"i": i, "x": p.x, "y": p.y} for i, p in enumerate(inst.points)]
    return json.dumps({"name": inst.name, "points": pts}, indent=1)


def validate_polygonization(inst: Instance, order: Sequence[int]) -> Polygonization:
    """Check that ``order`` is a simple polygon through every point; raise PolygonError otherwise."""
    n = inst.n
    order = tuple(int(i) for i in order)
    seen = set(order)
    if len(order) != len(seen):
        dup = sorted(i for i in seen if order.count(i) > 1)
        raise PolygonError("repeated-index", f"indices repeated: {dup}", tuple(dup))
    missing = sorted(set(range(n)) - seen)
    if missing:
        raise PolygonError("missing-index", f"indices missing: {missing}", tuple(missing))
    extra = sorted(seen - set(range(n)))
    if extra:
        raise PolygonError("unknown-index", f"indices out of range: {extra}", tuple(extra))
    pts = inst.points
    edges = [(order[k], order[(k + 1) % n]) for k in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if b == a + 1 or (a == 0 and b == n - 1):
                continue
            (i, j), (k, l) = edges[a], edges[b]
            if segments_cross(pts[i], pts[j], pts[k], pts[l]):
                raise PolygonError("crossing", f"edges {edges[a]} and {edges[b]} cross", (edges[a], edges[b]))
    signed = twice_signed_area([pts[i] for i in order])
    if signed == 0:
        raise PolygonError("degenerate", "zero area polygon")
    return Polygonization(order, abs(signed), "ccw" if signed > 0 else "cw")


# -- solutions -----------------------------------------------------------------

STATUSES = ("optimal", "feasible", "infeasible", "limit")


def gap(obj: float, bound: float) -> float:
    """Relative optimality gap, |bound - obj| / (1e-10 + |obj|)."""
    return abs(bound - obj) / (1e-10 + abs(obj))


@dataclass(frozen=True)
class SolutionRecord:
    instance: str
    objective: str
    order: tuple[int, ...]
    twice_area: int | None
    status: str
    bound: int | None
    gap: float
    runtime_s: float
    preset: str
    extra: dict = field(default_factory=dict, compare=False)

    def check(self) -> None:
        if self.objective not in ("min", "max"):
            raise ValueError(f"bad objective {self.objective!r}")
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "optimal" and self.bound != self.twice_area:
            raise ValueError("optimal record must have bound == twice_area")


def write_solution(rec: SolutionRecord) -> str:
    rec.check()
    data = asdict(rec)
    data["order"] = list(rec.order)
    extra = data.pop("extra")
    if extra:
        data["extra"] = extra
    return json.dumps(data, indent=1)


def parse_solution(text: str) -> SolutionRecord:
    data = json.loads(text)
    rec = SolutionRecord(
        instance=data["instance"],
        objective=data["objective"],
        order=tuple(int(i) for i in data["order"]),
        twice_area=data["twice_area"],
        status=data["status"],
        bound=data["bound"],
        gap=float(data["gap"]),
        runtime_s=float(data["runtime_s"]),
        preset=data["preset"],
        extra=data.get("extra", {}),
    )
    rec.check()
    if rec.twice_area is not None and rec.bound is not None:
        expect = gap(rec.twice_area, rec.bound)
        if abs(expect - rec.gap) > 1e-12 * max(1.0, expect):
            raise ValueError(f"stored gap {rec.gap} disagrees with recomputed {expect}")
    return rec


# -- rendering -----------------------------------------------------------------


def render_svg(inst: Instance, poly: Polygonization | Sequence[int] | None = None, size: int = 600) -> str:
    xs = [p.x for p in inst.points]
    ys = [p.y for p in inst.points]
    w = max(max(xs) - min(xs), 1)
    h = max(max(ys) - min(ys), 1)
    mx, my = 0.05 * w, 0.05 * h
    x0, y0 = min(xs) - mx, min(ys) - my
    vw, vh = w + 2 * mx, h + 2 * my
    r = 0.006 * max(vw, vh)
    stroke = 0.003 * max(vw, vh)

    def fy(y: int) -> float:
        # flip so that y grows upwards
        return y0 + vh - (y - y0)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
        f'height="{size * vh / vw:.0f}" viewBox="{x0:g} {y0:g} {vw:g} {vh:g}">',
    ]
    if poly is not None:
        order = poly.order if isinstance(poly, Polygonization) else tuple(poly)
        pts = [inst.points[i] for i in order]
        d = " ".join(("M" if k == 0 else "L") + f"{p.x:g},{fy(p.y):g}" for k, p in enumerate(pts)) + " Z"
        lines.append(f'<path d="{d}" fill="#9ecae1" fill-opacity="0.5" stroke="#08519c" stroke-width="{stroke:g}"/>')
    for i, p in enumerate(inst.points):
        lines.append(f'<circle id="p{i}" cx="{p.x:g}" cy="{fy(p.y):g}" r="{r:g}" fill="#000"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def area_from_twice(twice: int) -> str:
    """Exact area as a decimal string (integer or .5)."""
    q, r = divmod(twice, 2)
    return f"{q}" if r == 0 else f"{q}.5"


__all__ = [
    "Instance",
    "InstanceError",
    "Polygonization",
    "PolygonError",
    "SolutionRecord",
    "area_from_twice",
    "gap",
    "parse_instance",
    "parse_solution",
    "render_svg",
    "validate_polygonization",
    "write_instance",
    "write_solution",
]
