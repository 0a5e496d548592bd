import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from polyarea.instance import (
    InstanceError,
    PolygonError,
    SolutionRecord,
    area_from_twice,
    gap,
    parse_instance,
    parse_solution,
    render_svg,
    validate_polygonization,
    write_instance,
    write_solution,
)
from polyarea.oracle import enumerate_polygonizations

from conftest import instances, make, SQUARE

P4I_JSON = ('{"name":"p4i","points":[{"i":0,"x":0,"y":0},{"i":1,"x":6,"y":0},'
            '{"i":2,"x":0,"y":6},{"i":3,"x":1,"y":1}]}')


def test_parse_p4i():
    inst = parse_instance(P4I_JSON)
    assert inst.name == "p4i" and inst.n == 4
    assert inst.points[3] == (1, 1)


@pytest.mark.parametrize("text,code", [
    (P4I_JSON.replace('"x":6,"y":0', '"x":0,"y":0'), "duplicate"),
    (P4I_JSON.replace('"i":0', '"i":5'), "index-mismatch"),
    ('{"points": [', "malformed"),
    ('{"name": "x"}', "malformed"),
    ('{"points":[{"x":0,"y":0},{"x":1,"y":1},{"x":2,"y":2}]}', "collinear"),
    ('{"points":[{"x":0,"y":0},{"x":1.5,"y":1},{"x":2,"y":0}]}', "malformed"),
    ('{"points":[{"x":0,"y":0},{"x":1,"y":1}]}', "too-small"),
    ('{"points":[{"x":0,"y":0},{"x":1,"y":4},{"x":%d,"y":0}]}' % 2**31, "bound"),
])
def test_parse_errors(text, code):
    with pytest.raises(InstanceError) as err:
        parse_instance(text)
    assert err.value.code == code


@given(instances(min_n=3, max_n=9))
def test_instance_round_trip(inst):
    assert parse_instance(write_instance(inst)).points == inst.points


def test_validate_examples(p4i):
    poly = validate_polygonization(p4i, [0, 1, 3, 2])
    assert (poly.twice_area, poly.orientation) == (12, "ccw")
    sq = make(SQUARE)
    with pytest.raises(PolygonError) as err:
        validate_polygonization(sq, [0, 1, 3, 2])
    assert err.value.code == "crossing"
    assert {frozenset(e) for e in err.value.detail} == {frozenset((1, 3)), frozenset((2, 0))}
    with pytest.raises(PolygonError) as err:
        validate_polygonization(p4i, [0, 1, 2])
    assert err.value.code == "missing-index"
    with pytest.raises(PolygonError) as err:
        validate_polygonization(p4i, [0, 1, 1, 2])
    assert err.value.code == "repeated-index"
    with pytest.raises(PolygonError) as err:
        validate_polygonization(p4i, [0, 1, 3, 7])
    assert err.value.code in ("missing-index", "unknown-index")


@given(instances(min_n=3, max_n=7), st.randoms(use_true_random=False))
def test_reversal_flips_orientation(inst, rnd):
    order = list(range(inst.n))
    rnd.shuffle(order)
    try:
        a = validate_polygonization(inst, order)
    except PolygonError:
        return
    b = validate_polygonization(inst, order[::-1])
    assert a.twice_area == b.twice_area
    assert {a.orientation, b.orientation} == {"ccw", "cw"}
    assert b.ccw_order()[0] == b.order[0]


@settings(max_examples=25, deadline=None)
@given(instances(min_n=4, max_n=7))
def test_validator_accepts_exactly_the_oracle_orders(inst):
    from itertools import permutations

    oracle = {p.order for p in enumerate_polygonizations(inst)}
    accepted = set()
    for rest in permutations(range(1, inst.n)):
        try:
            poly = validate_polygonization(inst, (0,) + rest)
        except PolygonError:
            continue
        if poly.orientation == "ccw":
            accepted.add(poly.order)
    assert accepted == oracle


def test_svg(p4i):
    bare = render_svg(p4i)
    assert bare.count("<circle") == 4 and "<path" not in bare
    svg = render_svg(p4i, validate_polygonization(p4i, [0, 1, 3, 2]))
    assert svg.count("<path") == 1
    path = svg.split('d="')[1].split('"')[0]
    assert path.count("L") == 3 and path.endswith("Z")
    assert svg == render_svg(p4i, [0, 1, 3, 2])


def _record(**kw):
    base = dict(instance="p4i", objective="min", order=(0, 1, 3, 2), twice_area=12, status="optimal",
                bound=12, gap=0.0, runtime_s=0.25, preset="tri-v1")
    base.update(kw)
    return SolutionRecord(**base)


def test_solution_round_trip():
    rec = _record()
    assert parse_solution(write_solution(rec)) == rec
    lim = _record(status="limit", bound=10, gap=gap(12, 10))
    assert parse_solution(write_solution(lim)) == lim


def test_solution_invariants():
    with pytest.raises(ValueError):
        write_solution(_record(bound=11))
    text = json.loads(write_solution(_record(status="feasible", bound=10, gap=gap(12, 10))))
    text["gap"] = 0.5
    with pytest.raises(ValueError):
        parse_solution(json.dumps(text))


def test_gap_formula():
    assert gap(100, 110) == pytest.approx(0.1, abs=1e-12)
    assert gap(7, 7) == 0
    assert gap(0, 1) == pytest.approx(1e10)
    assert math.isclose(gap(100, 90), 0.1)


def test_area_from_twice():
    assert area_from_twice(12) == "6"
    assert area_from_twice(13) == "6.5"
