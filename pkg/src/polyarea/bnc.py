"""Best-first branch-and-cut over binary models with lazy separation.

Separators are plain objects with a ``family`` name and a ``trigger``:

* ``"integral"`` -- ``separate(x)`` on an integral LP solution, returning
  constraints. Integral separators carry a ``stage``; stages run in order and
  the first stage that yields new cuts re-solves before later stages run.
* ``"fractional"`` -- ``separate(x)`` on a fractional LP solution.
* ``"branching"`` -- ``on_branch(var, fixed)`` when a variable is branched to
  one; returns a :class:`BranchAction` with extra zero-fixings or a prune flag.
"""
from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .instance import gap
from .lp import DualSimplex
from .model import Constraint, Model

INT_TOL = 1e-6
BOUND_TOL = 1e-6


class SolverError(RuntimeError):
    pass


@dataclass
class BranchAction:
    fix_zero: set = field(default_factory=set)
    prune: bool = False


@dataclass
class SolveResult:
    status: str  # "optimal" | "feasible" | "infeasible" | "limit"
    objective: int | None
    bound: int | float | None
    x: np.ndarray | None
    payload: object = None
    stats: dict = field(default_factory=dict)

    @property
    def gap(self) -> float | None:
        if self.objective is None or self.bound is None or not math.isfinite(self.bound):
            return None
        return gap(self.objective, self.bound)


def safe_integer_bound(value: float, sense: str, tol: float = BOUND_TOL) -> float:
    """Round an LP bound to the nearest valid integer bound for an integral objective."""
    if not math.isfinite(value):
        return value
    if sense == "min":
        return math.ceil(value - tol)
    return math.floor(value + tol)


def _bound_tol(value: float) -> float:
    # LP bounds on objectives near 1e12 carry absolute float error well above 1e-6
    return BOUND_TOL + 1e-9 * abs(value)


@dataclass(order=True)
class _Node:
    priority: tuple
    fixed: dict = field(compare=False)
    bound: float = field(compare=False)
    basis: object = field(compare=False, default=None)
    depth: int = field(compare=False, default=0)


class BranchAndCut:
    def __init__(
        self,
        model: Model,
        separators: Sequence = (),
        accept: Callable | None = None,
        time_limit: float = math.inf,
        node_limit: int | None = None,
        cut_log: list | None = None,
        fractional_rounds: int = 10,
    ):
        self.model = model
        self.sense = model.sense
        self.integral_stages = self._stages([s for s in separators if s.trigger == "integral"])
        self.fractional = [s for s in separators if s.trigger == "fractional"]
        self.branching = [s for s in separators if s.trigger == "branching"]
        self.accept = accept
        self.time_limit = time_limit
        self.node_limit = node_limit
        self.cut_log = cut_log
        self.fractional_rounds = fractional_rounds

        n = model.n_vars
        self.lb = np.zeros(n)
        self.ub = np.ones(n)
        for j, v in model.fixings.items():
            self.lb[j] = self.ub[j] = v
        self.lp = DualSimplex(np.array(model.obj, dtype=float), self.lb, self.ub, model.sense)
        self._rows: dict[tuple, int] = {}
        self._pool: set = set()
        for con in model.constraints:
            self._add_row(con)

        self.incumbent: tuple | None = None  # (objective, x, payload)
        self.cuts_by_family: dict[str, int] = {}
        self.nodes = 0
        self.bound_trace: list[float] = []

    @staticmethod
    def _stages(seps):
        stages: dict[int, list] = {}
        for s in seps:
            stages.setdefault(getattr(s, "stage", 0), []).append(s)
        return [stages[k] for k in sorted(stages)]

    # -- helpers ---------------------------------------------------------------

    def _better(self, a: float, b: float) -> bool:
        return a < b if self.sense == "min" else a > b

    def _can_improve(self, bound: float) -> bool:
        if self.incumbent is None:
            return True
        return self._better(bound, self.incumbent[0])

    def _add_row(self, con: Constraint) -> bool:
        key = con.key()
        if key in self._pool:
            return False
        self._pool.add(key)
        lo, hi = con.bounds()
        rk = con.row_key()
        if rk in self._rows:
            self.lp.tighten_row(self._rows[rk], lo, hi)
        else:
            self._rows[rk] = self.lp.add_row(con.idx, con.coef, lo, hi)
        return True

    def _add_cuts(self, cuts: Sequence[Constraint]) -> int:
        added = 0
        for con in cuts:
            if self._add_row(con):
                added += 1
                self.cuts_by_family[con.family] = self.cuts_by_family.get(con.family, 0) + 1
                if self.cut_log is not None:
                    self.cut_log.append(con)
        return added

    def set_incumbent(self, x: Sequence[float], payload=None) -> None:
        x = np.asarray(x, dtype=float)
        value = int(round(self.model.objective(x)))
        if self.incumbent is None or self._better(value, self.incumbent[0]):
            self.incumbent = (value, x.copy(), payload)

    # -- main loop -------------------------------------------------------------

    def solve(self) -> SolveResult:
        t0 = time.perf_counter()
        seq = itertools.count()
        sign = 1 if self.sense == "min" else -1
        worst = math.inf * -sign  # a bound that prunes nothing
        root = _Node((0.0, 0, next(seq)), {}, worst)
        heap = [root]
        limit_hit = False
        while heap:
            if time.perf_counter() - t0 > self.time_limit or (
                self.node_limit is not None and self.nodes >= self.node_limit
            ):
                limit_hit = True
                break
            node = heapq.heappop(heap)
            if not self._can_improve(node.bound):
                continue
            self.bound_trace.append(self._global_bound(heap, node.bound))
            self.nodes += 1
            children = self._process(node)
            for child_fixed, child_basis, child_bound in children:
                prio = (sign * child_bound, -(node.depth + 1), next(seq))
                heapq.heappush(heap, _Node(prio, child_fixed, child_bound, child_basis, node.depth + 1))

        elapsed = time.perf_counter() - t0
        heap = [nd for nd in heap if self._can_improve(nd.bound)]
        heapq.heapify(heap)
        if limit_hit and heap:
            status = "limit"
            bound = self._global_bound(heap, None)
        elif self.incumbent is None:
            status = "limit" if limit_hit else "infeasible"
            bound = None if not limit_hit else self._global_bound(heap, None)
        else:
            status = "optimal"
            bound = self.incumbent[0]
        stats = {
            "nodes": self.nodes,
            "lp_iterations": self.lp.total_iterations,
            "cuts_by_family": dict(self.cuts_by_family),
            "wall_time": elapsed,
            "bound_trace": self.bound_trace,
            "lp_rows": self.lp.m,
        }
        if self.incumbent is None:
            return SolveResult(status, None, bound, None, None, stats)
        obj, x, payload = self.incumbent
        return SolveResult(status, obj, bound, x, payload, stats)

    def _global_bound(self, heap, current):
        # heap order starts with sign * bound, so the root holds the weakest open bound
        vals = [heap[0].bound] if heap else []
        if current is not None:
            vals.append(current)
        if not vals:
            return self.incumbent[0] if self.incumbent else None
        b = min(vals) if self.sense == "min" else max(vals)
        if self.incumbent is not None:
            b = min(b, self.incumbent[0]) if self.sense == "min" else max(b, self.incumbent[0])
        return b

    def _bounds_for(self, fixed: dict) -> tuple[np.ndarray, np.ndarray]:
        lb, ub = self.lb.copy(), self.ub.copy()
        for j, v in fixed.items():
            lb[j] = ub[j] = v
        return lb, ub

    def _process(self, node: _Node):
        lb, ub = self._bounds_for(node.fixed)
        if np.any(lb > ub):
            return []
        basis = node.basis
        frac_rounds = 0
        while True:
            res = self.lp.solve(lb, ub, basis=basis)
            basis = res.basis
            if res.status == "infeasible":
                return []
            raw = res.bound
            bound = safe_integer_bound(raw, self.sense, _bound_tol(raw))
            if math.isfinite(node.bound):
                bound = max(bound, node.bound) if self.sense == "min" else min(bound, node.bound)
            if not self._can_improve(bound):
                return []
            x = res.x
            dist = np.minimum(x, 1.0 - x)
            frac = np.nonzero(dist > INT_TOL)[0]
            if len(frac):
                limit = self.fractional_rounds if node.depth == 0 else 1
                if self.fractional and frac_rounds < limit:
                    frac_rounds += 1
                    cuts = [c for s in self.fractional for c in s.separate(x) if c.violation(x) > 1e-6]
                    if self._add_cuts(cuts):
                        continue
                return self._branch(node, x, frac, dist, basis, bound)
            xi = np.round(x)
            added = 0
            for stage in self.integral_stages:
                cuts = [c for s in stage for c in s.separate(xi)]
                added = self._add_cuts(cuts)
                if added:
                    break
            if added:
                continue
            payload = self.accept(xi) if self.accept is not None else None
            self.set_incumbent(xi, payload)
            return []

    def _branch(self, node, x, frac, dist, basis, bound):
        # most fractional: |x - 0.5| smallest, ties to the lowest index (argmax returns the first)
        j = int(frac[np.argmax(dist[frac])])
        children = []
        one = dict(node.fixed)
        one[j] = 1
        prune = False
        for s in self.branching:
            act = s.on_branch(j, one)
            if act.prune:
                prune = True
                break
            for k in act.fix_zero:
                if one.get(k) == 1 or self.lb[k] == 1:
                    prune = True
                    break
                one[k] = 0
            if prune:
                break
        if not prune:
            children.append((one, basis, bound))
        zero = dict(node.fixed)
        zero[j] = 0
        children.append((zero, basis, bound))
        return children


def branch_and_cut(model: Model, separators: Sequence = (), warm_start=None, time_limit: float = math.inf,
                   node_limit: int | None = None, accept: Callable | None = None,
                   cut_log: list | None = None) -> SolveResult:
    """Solve ``model`` to optimality (or until a limit) with lazy cuts.

    ``warm_start`` is an optional ``(x, payload)`` pair holding a feasible
    0/1 assignment; it must satisfy every static constraint.
    """
    bc = BranchAndCut(model, separators, accept, time_limit, node_limit, cut_log)
    if warm_start is not None:
        x, payload = warm_start
        bad = model.static_violations(x)
        if bad:
            raise SolverError(f"warm start violates {len(bad)} static constraints, e.g. {bad[0]}")
        bc.set_incumbent(x, payload)
    return bc.solve()
