"""Benchmark grid runner: instances x presets x objectives x repetitions -> CSV rows."""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .instance import Instance
from .solver import solve

COLUMNS = ["instance", "n", "objective", "preset", "status", "twice_area", "bound", "gap", "runtime_s", "nodes",
           "cuts_by_family"]


@dataclass(frozen=True)
class Cell:
    inst: Instance
    objective: str
    preset: str
    rep: int
    time_limit: float


def run_cell(cell: Cell) -> dict:
    out = solve(cell.inst, cell.objective, cell.preset, time_limit=cell.time_limit)
    rec = out.record
    return {
        "instance": cell.inst.name,
        "n": cell.inst.n,
        "objective": cell.objective,
        "preset": cell.preset,
        "status": rec.status,
        "twice_area": "" if rec.twice_area is None else rec.twice_area,
        "bound": "" if rec.bound is None else rec.bound,
        "gap": f"{rec.gap:.6g}",
        "runtime_s": f"{rec.runtime_s:.3f}",
        "nodes": out.stats.get("nodes", 0),
        "cuts_by_family": json.dumps(out.stats.get("cuts_by_family", {}), sort_keys=True),
    }


def worker_count(requested: int | None = None) -> int:
    cap = os.environ.get("POLYAREA_THREADS")
    n = requested or os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def grid(instances, presets, objectives=("min", "max"), repetitions: int = 1, time_limit: float = 1800.0) -> list[Cell]:
    return [Cell(inst, obj, p, r, time_limit)
            for inst in instances for p in presets for obj in objectives for r in range(repetitions)]


def run_grid(cells: list[Cell], workers: int | None = None) -> list[dict]:
    workers = worker_count(workers)
    if workers == 1 or len(cells) <= 1:
        return [run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_cell, cells))


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
