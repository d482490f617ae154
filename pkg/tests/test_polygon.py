from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from asnp.cyclo import INF
from asnp.errors import HypothesisError
from asnp.polygon import (SlopeMultiset, dilate, hull_from_values, lies_above,
                          polygon_from_slopes, slopes, to_csv, to_svg, truncate_lt_one,
                          union_slopes)

F = Fraction
values = st.lists(st.fractions(min_value=0, max_value=20, max_denominator=12),
                  min_size=2, max_size=9)


def test_simple_hull():
    np_ = hull_from_values([(0, 0), (1, 2), (2, 1), (3, 3)])
    assert np_.vertices == ((0, 0), (2, 1), (3, 3))
    assert slopes(np_).items == ((F(1, 2), 2), (F(2), 1))


def test_infinite_values_are_skipped():
    np_ = hull_from_values([(0, 0), (1, INF), (2, 1)])
    assert np_.vertices == ((0, 0), (2, 1))


def test_single_vertex_is_degenerate():
    np_ = hull_from_values([(0, 0), (1, INF)])
    assert np_.degenerate and np_.vertices == ((0, 0),)


def test_needs_origin():
    with pytest.raises(HypothesisError):
        hull_from_values([(1, 0), (2, 1)])


@settings(max_examples=200, deadline=None)
@given(values)
def test_hull_is_below_points_and_convex(vs):
    pts = list(enumerate(vs))
    np_ = hull_from_values(pts)
    for x, y in pts:
        assert np_(x) <= y
    ss = [s for s, _ in slopes(np_).items]
    assert ss == sorted(ss) and len(set(ss)) == len(ss)


@settings(max_examples=200, deadline=None)
@given(values)
def test_slopes_round_trip(vs):
    np_ = hull_from_values(list(enumerate(vs)))
    back = polygon_from_slopes(slopes(np_))
    assert [(x, y - np_.vertices[0][1]) for x, y in np_.vertices] == list(back.vertices)


@settings(max_examples=100, deadline=None)
@given(values, st.integers(1, 5))
def test_dilation_scales_multiplicities(vs, k):
    np_ = hull_from_values(list(enumerate(vs)))
    assert slopes(dilate(np_, k)) == slopes(np_).scaled(k)


def test_lies_above_and_truncation():
    a = polygon_from_slopes(SlopeMultiset.from_list([F(1, 3), F(2, 3), F(3, 2)]))
    b = polygon_from_slopes(SlopeMultiset.from_list([F(1, 4), F(3, 4), F(3, 2)]))
    assert lies_above(a, b) and not lies_above(b, a)
    assert truncate_lt_one(a).vertices == ((0, 0), (1, F(1, 3)), (2, 1))


def test_union_and_multiset():
    u = union_slopes([SlopeMultiset.from_list([F(1, 2)] * 2), SlopeMultiset.from_list([F(1, 3)])])
    assert u.items == ((F(1, 3), 1), (F(1, 2), 2))
    assert u.width == 3 and u.multiplicity(F(1, 2)) == 2


def test_emitters():
    np_ = hull_from_values([(0, 0), (1, F(1, 3)), (2, 1)])
    assert to_csv(np_).splitlines()[2] == "1,1,3"
    svg = to_svg(np_, title="demo")
    assert svg.startswith("<svg") and "demo" in svg
