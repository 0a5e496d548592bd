import pytest
from hypothesis import given, settings

from polyarea.geom import convex_hull, twice_signed_area
from polyarea.instance import validate_polygonization
from polyarea.oracle import (
    OracleRefused,
    count_by_permutation_filter,
    enumerate_polygonizations,
    oracle_optimum,
    oracle_summary,
)

from conftest import convex_instance, instances, random_instance


def test_t3(t3):
    polys = list(enumerate_polygonizations(t3))
    assert [(p.order, p.twice_area) for p in polys] == [((0, 1, 2), 16)]


def test_p4i(p4i):
    polys = list(enumerate_polygonizations(p4i))
    assert sorted(p.twice_area for p in polys) == [12, 30, 30]
    assert oracle_optimum(p4i, "min") == (12, (0, 1, 3, 2))
    assert oracle_optimum(p4i, "max")[0] == 30


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_convex_has_one_polygonization(n):
    inst = convex_instance(n)
    polys = list(enumerate_polygonizations(inst))
    assert len(polys) == 1
    hull = twice_signed_area([inst.points[i] for i in convex_hull(inst.points)])
    assert oracle_optimum(inst, "min")[0] == oracle_optimum(inst, "max")[0] == hull


def test_refuses_large(p4i):
    big = random_instance(11, 0)
    with pytest.raises(OracleRefused):
        next(enumerate_polygonizations(big))
    with pytest.raises(OracleRefused):
        list(enumerate_polygonizations(p4i, max_n=3))


@settings(max_examples=40, deadline=None)
@given(instances(min_n=3, max_n=7))
def test_count_matches_permutation_filter(inst):
    polys = list(enumerate_polygonizations(inst))
    assert len(polys) == count_by_permutation_filter(inst)
    assert len({p.order for p in polys}) == len(polys)
    for p in polys:
        assert p.order[0] == 0
        assert validate_polygonization(inst, p.order).orientation == "ccw"


@settings(max_examples=30, deadline=None)
@given(instances(min_n=3, max_n=7))
def test_min_le_max(inst):
    s = oracle_summary(inst)
    assert s["min"] <= s["max"]
    if s["count"] == 1:
        assert s["min"] == s["max"]
