"""Graph routines used by the separators.

Graphs are plain adjacency dicts ``{u: {v: weight}}`` (undirected, symmetric,
no self-loops). Unweighted callers just use weight 1.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

Graph = dict


@dataclass
class CallbackGraph:
    adj: dict = field(default_factory=dict)

    @classmethod
    def from_edges(cls, vertices: Iterable[Hashable], edges: Iterable[tuple], weighted: bool = False) -> "CallbackGraph":
        g = cls({v: {} for v in vertices})
        for e in edges:
            u, v = e[0], e[1]
            w = e[2] if weighted else 1.0
            if u == v:
                raise ValueError("self-loop")
            if w < 0:
                raise ValueError("negative weight")
            g.adj.setdefault(u, {})
            g.adj.setdefault(v, {})
            g.adj[u][v] = g.adj[u].get(v, 0.0) + w
            g.adj[v][u] = g.adj[v].get(u, 0.0) + w
        return g

    @property
    def vertices(self) -> list:
        return list(self.adj)

    def weight(self, u, v) -> float:
        return self.adj[u].get(v, 0.0)

    def cut_weight(self, side: set) -> float:
        return sum(w for u in side for v, w in self.adj[u].items() if v not in side)


def connected_components(g: CallbackGraph) -> list[list]:
    """Components in order of their first vertex (iterative DFS)."""
    seen = set()
    comps = []
    for s in g.adj:
        if s in seen:
            continue
        seen.add(s)
        stack = [s]
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in g.adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        comps.append(comp)
    return comps


def grow_maximal_clique(
    seed: tuple,
    solution_items: Sequence,
    all_items: Sequence,
    conflicts: Callable[[object, object], bool],
) -> list:
    """Extend a conflicting pair to a maximal clique, trying solution items first."""
    a, b = seed
    if not conflicts(a, b):
        raise ValueError("seed pair does not conflict")
    clique = [a, b]
    members = {a, b}
    for pool in (solution_items, all_items):
        for item in pool:
            if item in members:
                continue
            if all(conflicts(item, c) for c in clique):
                clique.append(item)
                members.add(item)
    return clique


def stoer_wagner_min_cut(g: CallbackGraph) -> tuple[set, float]:
    """Global minimum cut (one side, weight)."""
    verts = list(g.adj)
    if len(verts) < 2:
        raise ValueError("need at least two vertices")
    comps = connected_components(g)
    if len(comps) > 1:
        return set(comps[0]), 0.0
    # merged supervertices: representative -> member set
    groups = {v: {v} for v in verts}
    w = {u: dict(nb) for u, nb in g.adj.items()}
    best_side, best_w = None, float("inf")
    order_key = {v: k for k, v in enumerate(verts)}
    while len(w) > 1:
        start = min(w, key=order_key.__getitem__)
        attached = {start}
        conn = {v: 0.0 for v in w}
        heap = []
        for v, c in w[start].items():
            conn[v] += c
            heapq.heappush(heap, (-conn[v], order_key[v], v))
        prev, last = None, start
        while len(attached) < len(w):
            while True:
                negc, _, v = heapq.heappop(heap)
                if v not in attached and -negc == conn[v]:
                    break
                if not heap:
                    # unreachable in a connected graph; pick any remaining vertex
                    v = next(u for u in w if u not in attached)
                    break
            attached.add(v)
            prev, last = last, v
            for u, c in w[v].items():
                if u not in attached:
                    conn[u] += c
                    heapq.heappush(heap, (-conn[u], order_key[u], u))
        cut_of_phase = conn[last]
        if cut_of_phase < best_w:
            best_w = cut_of_phase
            best_side = set(groups[last])
        # merge last into prev
        groups[prev] |= groups.pop(last)
        for u, c in w.pop(last).items():
            if u == prev:
                w[prev].pop(last, None)
                continue
            w[u].pop(last)
            w[prev][u] = w[prev].get(u, 0.0) + c
            w[u][prev] = w[u].get(prev, 0.0) + c
    return best_side, best_w


def _max_flow_min_cut(g: CallbackGraph, s, t) -> tuple[float, set]:
    """Edmonds-Karp on the undirected graph; returns flow value and the source side."""
    res = {u: dict(nb) for u, nb in g.adj.items()}
    flow = 0.0
    while True:
        parent = {s: None}
        q = deque([s])
        while q and t not in parent:
            u = q.popleft()
            for v, c in res[u].items():
                if c > 1e-12 and v not in parent:
                    parent[v] = u
                    q.append(v)
        if t not in parent:
            break
        aug = float("inf")
        v = t
        while parent[v] is not None:
            u = parent[v]
            aug = min(aug, res[u][v])
            v = u
        v = t
        while parent[v] is not None:
            u = parent[v]
            res[u][v] -= aug
            res[v][u] = res[v].get(u, 0.0) + aug
            v = u
        flow += aug
    return flow, set(parent)


@dataclass
class GomoryHuTree:
    parent: dict
    weight: dict  # vertex -> weight of edge to its parent
    sides: dict = field(default_factory=dict)  # vertex -> source side of the cut that created the edge

    def edges(self) -> list[tuple]:
        return [(v, p, self.weight[v]) for v, p in self.parent.items() if p is not None]

    def min_cut_value(self, u, v) -> float:
        """Minimum edge weight on the tree path between u and v."""
        adj: dict = {}
        for a, b, w in self.edges():
            adj.setdefault(a, []).append((b, w))
            adj.setdefault(b, []).append((a, w))
        best = {u: float("inf")}
        stack = [u]
        while stack:
            x = stack.pop()
            for y, w in adj.get(x, []):
                if y not in best:
                    best[y] = min(best[x], w)
                    stack.append(y)
        return best[v]


def gomory_hu_tree(g: CallbackGraph) -> GomoryHuTree:
    """Gusfield's variant: n-1 max-flow computations on the original graph."""
    verts = list(g.adj)
    if not verts:
        raise ValueError("empty graph")
    root = verts[0]
    parent = {v: root for v in verts}
    parent[root] = None
    weight = {root: 0.0}
    sides = {}
    for i, s in enumerate(verts[1:], start=1):
        t = parent[s]
        f, side = _max_flow_min_cut(g, s, t)
        weight[s] = f
        sides[s] = side
        for v in verts[i + 1:]:
            if v in side and parent[v] == t:
                parent[v] = s
    return GomoryHuTree(parent, weight, sides)
