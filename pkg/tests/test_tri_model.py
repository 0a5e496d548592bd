import math

import numpy as np
import pytest
from hypothesis import given, settings

from polyarea.geom import Point
from polyarea.oracle import enumerate_polygonizations, oracle_optimum
from polyarea.solver import solve
from polyarea.tri_model import (
    TRI_PRESETS,
    AngleSeparator,
    NoGoodSeparator,
    PointSubtourSeparator,
    TriangleFormulation,
    TriCliqueSeparator,
    TriSubtourSeparator,
    angle_cut,
    angle_gaps,
    branch_fix_triangles,
    compute_triangle_fans,
    dual_callback_graph,
    ear_clip,
    extract_triangle_polygon,
    pick_angle_pair,
    point_cuts,
    polygon_triangulations,
    round_down,
    round_up,
)

from conftest import PENTAGON, SQUARE, convex_instance, instances, make, random_instance


def form_of(inst, preset="tri-v3", objective="min"):
    return TriangleFormulation(inst, objective, TRI_PRESETS[preset])


def all_triangulation_vectors(form):
    out = []
    for p in enumerate_polygonizations(form.inst):
        for tri in polygon_triangulations(form.inst, p.order):
            out.append(form.vector(tri))
    return out


def test_p4i_model(p4i):
    form = form_of(p4i)
    m = form.model
    assert form.triangles == [(0, 1, 3), (0, 2, 3), (1, 2, 3)] and m.obj == [6, 6, 24]
    assert m.count("count") == 1 and m.constraints[0].rhs == 2
    assert m.count("coverage") == 4
    assert m.count("hull-chord") == 0
    # each of the 6 point pairs bounds at most one triangle per side, so no halfspace row is needed
    assert len(form.at_edge) == 6 and m.count("halfspace") == 0
    out = solve(p4i, "min", "tri-v1", start=None)
    assert out.result.objective == 12
    assert sorted(form.triangles[k] for k in form.selected(out.result.x)) == [(0, 1, 3), (0, 2, 3)]


def test_pentagon_model(pentagon):
    form = form_of(pentagon)
    assert form.model.n_vars == 10 and form.model.constraints[0].rhs == 3
    # each hull chord gets a balance row and each side of it a halfspace row
    assert form.model.count("hull-chord") == 5
    assert form.model.count("halfspace") == 10


def test_objective_is_twice_area():
    inst = random_instance(7, 4)
    form = form_of(inst)
    for p in enumerate_polygonizations(inst):
        for tri in polygon_triangulations(inst, p.order):
            assert form.model.objective(form.vector(tri)) == p.twice_area


def test_dual_graph_and_fans(p4i):
    g = dual_callback_graph([(0, 1, 3), (0, 2, 3)])
    assert sum(len(v) for v in g.adj.values()) // 2 == 1
    assert dual_callback_graph([(0, 1, 2), (2, 3, 4)]).adj == {0: {}, 1: {}}
    assert list(dual_callback_graph([(0, 1, 2)]).adj) == [0]
    fans = compute_triangle_fans([(0, 1, 3), (0, 2, 3)], 4)
    assert fans[3] == [[0, 1]] and fans[1] == [[0]]
    fans = compute_triangle_fans([(0, 1, 2), (2, 3, 4)], 6)
    assert fans[2] == [[0], [1]] and fans[5] == []


FIVE = [(0, 0), (100, 0), (50, 90), (40, 30), (60, 35)]
# interior-disjoint but split: a two-triangle piece and a lone triangle (1,2,4)
SPLIT = [(0, 1, 3), (0, 2, 3), (1, 2, 4)]


def test_subtour_separator():
    inst = make(FIVE)
    form = form_of(inst)
    sep = TriSubtourSeparator(form)
    x = form.vector(SPLIT)
    cuts = sep.separate(x)
    assert len(cuts) == 2 and all(not c.satisfied(x) for c in cuts)
    lone = form.index[(1, 2, 4)]
    single = next(c for c in cuts if c.rhs == 0)
    coef = dict(zip(single.idx, single.coef))
    assert coef[lone] == 1 and all(v == -1 for k, v in coef.items() if k != lone)
    assert sep.separate(form.char_vector(oracle_optimum(inst, "min")[1])) == []
    vectors = all_triangulation_vectors(form)
    assert all(c.satisfied(v) for c in cuts for v in vectors)


def test_full_component_is_not_cut():
    inst = make(FIVE)
    form = form_of(inst)
    x = form.char_vector(oracle_optimum(inst, "max")[1])
    assert TriSubtourSeparator(form).separate(x) == []


def test_clique_separator():
    form = form_of(make(SQUARE))
    a, b = form.index[(0, 1, 2)], form.index[(0, 1, 3)]
    assert form.conflicts(a, b)
    x = form.vector([(0, 1, 2), (0, 1, 3)])
    cuts = TriCliqueSeparator(form).separate(x)
    assert len(cuts) == 1 and {a, b} <= set(cuts[0].idx) and cuts[0].rhs == 1
    members = cuts[0].idx
    assert all(form.conflicts(p, q) for p in members for q in members if p < q)
    assert TriCliqueSeparator(form).separate(form.vector([(0, 1, 2), (0, 2, 3)])) == []


def test_angle_gap_example():
    pts = [Point(0, 0), Point(-1, 2), Point(1, 2), Point(1, -2), Point(-1, -2)]
    al, ar = angle_gaps((0, 1, 2), (0, 3, 4), 0, pts)
    expected = math.pi - 2 * math.atan2(1, 2)
    assert al == pytest.approx(expected) and ar == pytest.approx(expected)
    assert expected == pytest.approx(2.2143, abs=1e-4)
    assert round_down(expected) <= expected <= round_up(expected)
    assert round_up(expected) - round_down(expected) <= 1e-9 * 1.0001


def test_angle_separator_and_validity():
    # two triangles touching only at point 4 (the middle)
    inst = make([(0, 0), (10, 1), (20, 0), (19, 12), (10, 5), (1, 11)])
    form = form_of(inst, "tri-v2")
    s = 4
    top, bottom = form.index[(0, 1, 4)], form.index[(3, 4, 5)]
    fans = form.fans([top, bottom])
    assert len(fans[s]) == 2
    assert pick_angle_pair(form, s, fans[s]) == (top, bottom)
    cut = angle_cut(form, s, top, bottom)
    coef = dict(zip(cut.idx, cut.coef))
    assert coef[top] == coef[bottom] == cut.rhs > 0
    assert all(coef[k] < 0 for k in cut.idx if k not in (top, bottom))
    x = form.vector([(0, 1, 4), (3, 4, 5), (1, 2, 3)])
    cuts = AngleSeparator(form).separate(x)
    assert cuts and all(not c.satisfied(x) for c in cuts)
    for v in all_triangulation_vectors(form):
        assert all(c.satisfied(v) for c in cuts + [cut])
    assert AngleSeparator(form).separate(form.char_vector(oracle_optimum(inst, "min")[1])) == []


def test_point_cuts_structure(pentagon):
    form = form_of(pentagon)
    X = {0, 1, 2}
    attach, spread = point_cuts(form, X)
    assert attach.sense == spread.sense == ">=" and attach.rhs == 2 and spread.rhs == 3
    corners = {k: sum(i in X for i in form.triangles[k]) for k in range(len(form.triangles))}
    coef = dict(zip(spread.idx, spread.coef))
    assert all(coef[k] == (1 if corners[k] == 1 else 2) for k in spread.idx)
    assert set(attach.idx) == {k for k, c in corners.items() if c in (1, 2)}
    # with no two-corner triangle chosen the spread row needs three one-corner triangles
    one = [k for k, c in corners.items() if c == 1]
    x = np.zeros(len(form.triangles))
    x[one[:2]] = 1
    assert not spread.satisfied(x)
    two = next(k for k, c in corners.items() if c == 2)
    x[two] = 1
    assert spread.satisfied(x) and attach.satisfied(x)


def test_point_separator_validity():
    inst = random_instance(8, 2)
    form = form_of(inst)
    vectors = all_triangulation_vectors(form)
    sep = PointSubtourSeparator(form)
    rng = np.random.default_rng(0)
    emitted = 0
    for _ in range(200):
        x = np.zeros(len(form.triangles))
        x[rng.choice(len(form.triangles), inst.n - 2, replace=False)] = 1
        for cut in sep.separate(x):
            emitted += 1
            assert all(cut.satisfied(v) for v in vectors)
    assert emitted > 0


def test_nogood_only_fires_on_non_polygons(p4i):
    form = form_of(p4i)
    sep = NoGoodSeparator(form)
    assert sep.separate(form.char_vector([0, 1, 3, 2])) == []
    x = form.vector([(0, 1, 3), (1, 2, 3)])
    # valid: these two triangles tile the polygon [0,1,2,3]
    assert sep.separate(x) == []
    bad = form.vector([(0, 1, 3), (0, 2, 3), (1, 2, 3)])
    cut = sep.separate(bad)
    assert len(cut) == 1 and not cut[0].satisfied(bad)


def test_branch_fix(p4i):
    form = form_of(p4i)
    act = branch_fix_triangles(form, form.index[(0, 1, 3)], {form.index[(0, 1, 3)]: 1})
    assert act.fix_zero == set() and not act.prune
    sq = form_of(make(SQUARE))
    k = sq.index[(0, 1, 2)]
    act = branch_fix_triangles(sq, k, {k: 1})
    assert {sq.triangles[j] for j in act.fix_zero} == {(0, 1, 3), (1, 2, 3)}
    f5 = form_of(make(FIVE))
    a, b = f5.index[(0, 1, 3)], f5.index[(2, 3, 4)]
    fixed = {j: 0 for j in range(len(f5.triangles)) if j not in (a, b)}
    fixed.update({a: 1, b: 1})
    assert branch_fix_triangles(f5, b, fixed).prune


def test_extract_examples(p4i, pentagon):
    poly = extract_triangle_polygon(p4i, [(0, 1, 3), (0, 2, 3)])
    assert poly.order == (0, 1, 3, 2) and poly.twice_area == 12
    poly = extract_triangle_polygon(pentagon, [(0, 3, 4), (0, 2, 3), (0, 1, 2)])
    assert poly.orientation == "ccw" and sorted(poly.order) == [0, 1, 2, 3, 4]
    assert poly.twice_area == 8
    with pytest.raises(ValueError):
        extract_triangle_polygon(make(FIVE), SPLIT)


@pytest.mark.parametrize("n", range(3, 9))
def test_triangulation_count_is_catalan(n):
    inst = convex_instance(n)
    count = sum(1 for _ in polygon_triangulations(inst, list(range(n))))
    assert count == math.comb(2 * (n - 2), n - 2) // (n - 1)


@settings(max_examples=20, deadline=None)
@given(instances(min_n=4, max_n=7))
def test_ear_clip_is_a_triangulation(inst):
    for p in enumerate_polygonizations(inst):
        tris = ear_clip(inst, p.order)
        assert sorted(tris) in list(polygon_triangulations(inst, p.order))
        assert extract_triangle_polygon(inst, tris).twice_area == p.twice_area


@settings(max_examples=10, deadline=None)
@given(instances(min_n=4, max_n=7))
def test_logged_cuts_are_valid(inst):
    vectors = None
    for preset in ("tri-v1", "tri-v3"):
        for objective in ("min", "max"):
            log = []
            out = solve(inst, objective, preset, start=None, cut_log=log)
            assert out.result.objective == oracle_optimum(inst, objective)[0]
            if vectors is None:
                vectors = all_triangulation_vectors(form_of(inst, preset, objective))
            for cut in log:
                if cut.family == "tri-nogood":
                    continue
                assert all(cut.satisfied(v, 1e-9) for v in vectors), cut
