"""Edge-based formulation: one binary per directed half-edge.

The objective sums signed twice-areas of the triangles each chosen half-edge
forms with a fixed reference point, which telescopes to the polygon's
twice-area. Degree, pairing and slab rows are static; subtour rows are
separated lazily, intersections statically (``edge-v1``) or lazily.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bnc import BranchAction
from .cutgraph import CallbackGraph, connected_components, gomory_hu_tree, grow_maximal_clique, stoer_wagner_min_cut
from .geom import Slab, build_slabs, convex_hull, edge_coefficient, hull_chords, segments_cross
from .instance import Instance, Polygonization, validate_polygonization
from .model import Constraint, Model

FRACTIONAL_CUT_TOL = 1e-6


@dataclass(frozen=True)
class EdgeConfig:
    intersections: str = "lazy"  # "static" | "lazy"
    branch_fix: bool = False
    fractional: bool = False
    gomory_hu: bool = False
    orientation_fallback: bool = False


EDGE_PRESETS = {
    "edge-v1": EdgeConfig(intersections="static"),
    "edge-v2": EdgeConfig(intersections="lazy"),
    "edge-v3": EdgeConfig(intersections="lazy", branch_fix=True),
    "edge-v4": EdgeConfig(intersections="lazy", branch_fix=True, fractional=True, gomory_hu=True),
}


class EdgeFormulation:
    def __init__(self, inst: Instance, objective: str, config: EdgeConfig = EdgeConfig(), ref: int = 0):
        self.inst = inst
        self.objective = objective
        self.config = config
        pts = self.pts = inst.points
        n = self.n = inst.n
        self.ref = ref
        self.hull = convex_hull(pts)
        chords = hull_chords(pts, self.hull)
        # undirected candidate edges (i < j) and their half-edge variables
        self.edges = [(i, j) for i, j in combinations(range(n), 2) if frozenset((i, j)) not in chords]
        self.model = Model(objective)
        self.var: dict[tuple[int, int], int] = {}
        for i, j in self.edges:
            for a, b in ((i, j), (j, i)):
                self.var[(a, b)] = self.model.add_var((a, b), edge_coefficient(a, b, pts[ref], pts))
        self.arcs = list(self.model.names)
        self._crossing = self._crossing_table()
        self._build_static()

    # -- construction --------------------------------------------------------

    def _crossing_table(self) -> dict[tuple[int, int], list[tuple[int, int]]]:
        pts = self.pts
        table: dict = {e: [] for e in self.edges}
        for e, f in combinations(self.edges, 2):
            if segments_cross(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]]):
                table[e].append(f)
                table[f].append(e)
        return table

    def crosses(self, e, f) -> bool:
        return tuple(sorted(f)) in self._crossing_set.get(tuple(sorted(e)), ())

    @property
    def _crossing_set(self):
        if not hasattr(self, "_cs"):
            self._cs = {e: set(fs) for e, fs in self._crossing.items()}
        return self._cs

    def _undirected_terms(self, e) -> list[tuple[int, float]]:
        i, j = e
        return [(self.var[(i, j)], 1.0), (self.var[(j, i)], 1.0)]

    def _build_static(self) -> None:
        m = self.model
        n = self.n
        outs = {i: [] for i in range(n)}
        ins = {i: [] for i in range(n)}
        for (a, b), k in self.var.items():
            outs[a].append(k)
            ins[b].append(k)
        for i in range(n):
            m.add(Constraint.build(((k, 1.0) for k in ins[i]), "==", 1, "degree-in"))
        for i in range(n):
            m.add(Constraint.build(((k, 1.0) for k in outs[i]), "==", 1, "degree-out"))
        for e in self.edges:
            m.add(Constraint.build(self._undirected_terms(e), "<=", 1, "pairing"))
        # a hull edge on a CCW polygon can only run in the hull's own direction
        h = len(self.hull)
        for k in range(h):
            m.fixings[self.var[(self.hull[(k + 1) % h], self.hull[k])]] = 0
        self.slabs = build_slabs(self.pts, self.edges)
        for con in slab_prefix_constraints(self.slabs, self.var):
            m.add(con)
        if self.config.intersections == "static":
            for e in self.edges:
                for f in self._crossing[e]:
                    if e < f:
                        m.add(Constraint.build(self._undirected_terms(e) + self._undirected_terms(f), "<=", 1,
                                               "intersection"))
        if self.config.orientation_fallback:
            m.add(Constraint.build(((k, float(c)) for k, c in enumerate(m.obj)), ">=", 0, "orientation"))

    # -- vectors and polygons ------------------------------------------------

    def char_vector(self, order) -> np.ndarray:
        """0/1 vector of the CCW directed boundary of ``order``."""
        poly = validate_polygonization(self.inst, order)
        ccw = poly.ccw_order()
        x = np.zeros(self.model.n_vars)
        for k in range(self.n):
            x[self.var[(ccw[k], ccw[(k + 1) % self.n])]] = 1.0
        return x

    def extract(self, x) -> Polygonization:
        succ = {}
        for k, (a, b) in enumerate(self.arcs):
            if x[k] > 0.5:
                if a in succ:
                    raise ValueError(f"point {a} has two successors")
                succ[a] = b
        order = [0]
        while len(order) < self.n:
            nxt = succ.get(order[-1])
            if nxt is None or nxt == 0:
                raise ValueError("selected half-edges do not form a single tour")
            order.append(nxt)
        if succ.get(order[-1]) != 0:
            raise ValueError("tour does not close at point 0")
        poly = validate_polygonization(self.inst, order)
        if poly.orientation != "ccw":
            raise ValueError("slab constraints should force a counterclockwise tour")
        return poly

    def accept(self, x) -> Polygonization:
        poly = self.extract(x)
        if poly.twice_area != int(round(self.model.objective(x))):
            raise ValueError("objective disagrees with the polygon's twice-area")
        return poly

    # -- separators ------------------------------------------------------------

    def separators(self) -> list:
        seps: list = [EdgeSubtourSeparator(self)]
        if self.config.intersections == "lazy":
            seps.append(EdgeCliqueSeparator(self))
        if self.config.branch_fix:
            seps.append(EdgeBranchFixer(self))
        if self.config.fractional:
            seps.append(EdgeFractionalSeparator(self, use_gomory_hu=self.config.gomory_hu))
        return seps

    def subtour_cuts(self, comp, family: str) -> list[Constraint]:
        inside = set(comp)
        out_terms, in_terms = [], []
        for k, (a, b) in enumerate(self.arcs):
            if a in inside and b not in inside:
                out_terms.append((k, 1.0))
            elif b in inside and a not in inside:
                in_terms.append((k, 1.0))
        return [
            Constraint.build(out_terms, ">=", 1, family),
            Constraint.build(in_terms, ">=", 1, family),
        ]

    def callback_graph(self, x) -> CallbackGraph:
        edges = {tuple(sorted(self.arcs[k])) for k in np.nonzero(np.asarray(x) > 0.5)[0]}
        return CallbackGraph.from_edges(range(self.n), edges)


def slab_prefix_constraints(slabs: list[Slab], var: dict) -> list[Constraint]:
    """Rows 0 <= sum_{i<=m} (z_lr,i - z_rl,i) <= 1 for every slab prefix."""
    out = []
    for slab in slabs:
        terms: list[tuple[int, float]] = []
        for i, j in slab.edges:
            if (i, j) not in var:
                continue
            terms = terms + [(var[(i, j)], 1.0), (var[(j, i)], -1.0)]
            out.append(Constraint.build(terms, ">=", 0, "slab"))
            out.append(Constraint.build(terms, "<=", 1, "slab"))
    return out


def slab_prefix_values(pattern) -> list[int]:
    """Prefix sums of a slab pattern given as 'lr' / 'rl' / None per edge (bottom to top)."""
    total = 0
    out = []
    for p in pattern:
        total += 1 if p == "lr" else -1 if p == "rl" else 0
        out.append(total)
    return out


class EdgeSubtourSeparator:
    family = "edge-subtour"
    trigger = "integral"
    stage = 0

    def __init__(self, form: EdgeFormulation):
        self.form = form

    def separate(self, x) -> list[Constraint]:
        comps = connected_components(self.form.callback_graph(x))
        if len(comps) <= 1:
            return []
        cuts = []
        for comp in comps:
            cuts.extend(self.form.subtour_cuts(comp, self.family))
        return cuts


class EdgeCliqueSeparator:
    family = "edge-clique"
    trigger = "integral"
    stage = 1

    def __init__(self, form: EdgeFormulation):
        self.form = form

    def separate(self, x) -> list[Constraint]:
        form = self.form
        chosen = sorted({tuple(sorted(form.arcs[k])) for k in np.nonzero(np.asarray(x) > 0.5)[0]})
        chosen_set = set(chosen)
        covered: set = set()
        cuts = []
        for e in chosen:
            for f in form._crossing[e]:
                if f not in chosen_set or f < e:
                    continue
                if (e, f) in covered:
                    continue
                clique = grow_maximal_clique((e, f), chosen, form.edges, form.crosses)
                for a, b in combinations(clique, 2):
                    covered.add((min(a, b), max(a, b)))
                terms = [t for g in clique for t in form._undirected_terms(g)]
                cuts.append(Constraint.build(terms, "<=", 1, self.family))
        return cuts


class EdgeBranchFixer:
    family = "edge-branch"
    trigger = "branching"

    def __init__(self, form: EdgeFormulation):
        self.form = form

    def on_branch(self, var: int, fixed: dict) -> BranchAction:
        return BranchAction(branch_fix_edges(self.form, var))


def branch_fix_edges(form: EdgeFormulation, var: int) -> set[int]:
    """Half-edges that must be zero once ``var`` is one."""
    a, b = form.arcs[var]
    out = set()
    for (i, j), k in form.var.items():
        if k == var:
            continue
        if i == a or j == b or (i, j) == (b, a):
            out.add(k)
    for f in form._crossing[tuple(sorted((a, b)))]:
        out.add(form.var[f])
        out.add(form.var[(f[1], f[0])])
    return out


class EdgeFractionalSeparator:
    family = "edge-fractional-subtour"
    trigger = "fractional"

    def __init__(self, form: EdgeFormulation, use_gomory_hu: bool = True):
        self.form = form
        self.use_gomory_hu = use_gomory_hu

    def candidate_sets(self, x) -> list[set]:
        form = self.form
        w: dict = {}
        for k, (a, b) in enumerate(form.arcs):
            if x[k] > 1e-9:
                key = (min(a, b), max(a, b))
                w[key] = w.get(key, 0.0) + float(x[k])
        g = CallbackGraph.from_edges(range(form.n), [(u, v, c) for (u, v), c in w.items()], weighted=True)
        comps = connected_components(g)
        if len(comps) > 1:
            return [set(c) for c in comps]
        sets = []
        side, value = stoer_wagner_min_cut(g)
        if value < 2 - FRACTIONAL_CUT_TOL:
            sets.append(set(side))
        if self.use_gomory_hu:
            tree = gomory_hu_tree(g)
            for v, s in tree.sides.items():
                if tree.weight[v] < 2 - FRACTIONAL_CUT_TOL:
                    sets.append(set(s))
        uniq = []
        for s in sets:
            canon = s if 0 not in s else set(range(form.n)) - s
            if 0 < len(canon) < form.n and canon not in uniq:
                uniq.append(canon)
        return uniq

    def separate(self, x) -> list[Constraint]:
        cuts = []
        for d in self.candidate_sets(x):
            pair = self.form.subtour_cuts(d, self.family)
            if min(c.activity(x) for c in pair) < 1 - FRACTIONAL_CUT_TOL:
                cuts.extend(pair)
        return cuts
