"""One entry point over both formulations: presets, warm starts, records."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .bnc import SolveResult, branch_and_cut
from .edge_model import EDGE_PRESETS, EdgeFormulation
from .heuristics import HeuristicError, greedy
from .instance import Instance, Polygonization, SolutionRecord, gap, validate_polygonization
from .tri_model import TRI_PRESETS, TriangleFormulation

PRESETS = tuple(EDGE_PRESETS) + tuple(TRI_PRESETS)
DEFAULT_PRESET = {"min": "edge-v3", "max": "edge-v3"}
DEFAULT_TIME_LIMIT = 1800.0


class PresetError(ValueError):
    pass


def build_formulation(inst: Instance, objective: str, preset: str):
    if objective not in ("min", "max"):
        raise ValueError(f"objective must be 'min' or 'max', got {objective!r}")
    if preset in EDGE_PRESETS:
        return EdgeFormulation(inst, objective, EDGE_PRESETS[preset])
    if preset in TRI_PRESETS:
        return TriangleFormulation(inst, objective, TRI_PRESETS[preset])
    raise PresetError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")


@dataclass
class Outcome:
    result: SolveResult
    polygon: Polygonization | None
    record: SolutionRecord
    preset: str
    stats: dict = field(default_factory=dict)


def solve(
    inst: Instance,
    objective: str,
    preset: str | None = None,
    start="greedy",
    time_limit: float = DEFAULT_TIME_LIMIT,
    node_limit: int | None = None,
    cut_log: list | None = None,
) -> Outcome:
    """Solve Min-Area or Max-Area polygonization exactly (or until a limit).

    ``start`` is ``"greedy"``, ``None``/``"none"``, or a vertex order to use as
    the warm-start incumbent.
    """
    preset = preset or DEFAULT_PRESET[objective]
    t0 = time.perf_counter()
    form = build_formulation(inst, objective, preset)
    warm = None
    if isinstance(start, str) and start == "greedy":
        try:
            poly = greedy(inst, objective)
        except HeuristicError:
            poly = None  # solve cold rather than fail
    elif start is None or (isinstance(start, str) and start == "none"):
        poly = None
    else:
        poly = validate_polygonization(inst, start)
    if poly is not None:
        warm = (form.char_vector(poly.order), poly)
    remaining = max(0.0, time_limit - (time.perf_counter() - t0))
    res = branch_and_cut(form.model, form.separators(), warm_start=warm, time_limit=remaining,
                         node_limit=node_limit, accept=form.accept, cut_log=cut_log)
    runtime = time.perf_counter() - t0
    return Outcome(res, res.payload, make_record(inst, objective, preset, res, runtime), preset, res.stats)


def make_record(inst: Instance, objective: str, preset: str, res: SolveResult, runtime: float) -> SolutionRecord:
    poly = res.payload
    bound = None if res.bound is None or not math.isfinite(res.bound) else int(res.bound)
    if poly is None:
        return SolutionRecord(inst.name, objective, (), None, res.status, bound, math.inf, runtime, preset,
                              {"nodes": res.stats.get("nodes", 0)})
    g = gap(poly.twice_area, bound) if bound is not None else math.inf
    extra = {"nodes": res.stats.get("nodes", 0), "cuts_by_family": res.stats.get("cuts_by_family", {})}
    return SolutionRecord(inst.name, objective, tuple(poly.order), poly.twice_area, res.status, bound, g,
                          runtime, preset, extra)
