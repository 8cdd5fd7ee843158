import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matmeasure import borel
from matmeasure.borel import BorelSet, Interval, parse_set, to_text
from matmeasure.errors import ParseError, UnsupportedFunction
from matmeasure.multop import PiecewiseScalarFn

# endpoints on a half-integer grid so that shared endpoints are common
coord = st.integers(-8, 8).map(lambda k: k / 2)


@st.composite
def intervals(draw, infinite=True):
    a, b = sorted(draw(st.lists(coord, min_size=2, max_size=2, unique=True)))
    if infinite and draw(st.integers(0, 9)) == 0:
        a = -math.inf
    if infinite and draw(st.integers(0, 9)) == 0:
        b = math.inf
    return Interval(a, b, draw(st.booleans()) and math.isfinite(a), draw(st.booleans()) and math.isfinite(b))


def sets(infinite=True):
    return st.builds(lambda ivs, pts: BorelSet.from_parts(ivs, pts),
                     st.lists(intervals(infinite), max_size=6), st.lists(coord, max_size=4))


def raw_contains(ivs, pts, x):
    """Membership straight from the unreduced description."""
    if x in pts:
        return True
    for iv in ivs:
        if iv.lo < x < iv.hi or (x == iv.lo and iv.lo_closed) or (x == iv.hi and iv.hi_closed):
            return True
    return False


PROBES = [k / 4 for k in range(-40, 41)] + [-1e9, 1e9]


@settings(max_examples=200, deadline=None)
@given(st.lists(intervals(), max_size=6), st.lists(coord, max_size=4))
def test_canonical_form_keeps_membership(ivs, pts):
    s = BorelSet.from_parts(ivs, pts)
    for x in PROBES:
        assert (x in s) == raw_contains(ivs, pts, x)
    assert BorelSet.from_parts(s.intervals, s.points) == s
    for a, b in zip(s.intervals, s.intervals[1:]):
        assert a.hi < b.lo or (a.hi == b.lo and not (a.hi_closed or b.lo_closed))
    for p in s.points:
        assert not any(p in BorelSet((iv,)) for iv in s.intervals)


@settings(max_examples=200, deadline=None)
@given(sets(), sets())
def test_operations_pointwise(a, b):
    u, i, m = a | b, a & b, a - b
    c = borel.complement(a)
    for x in PROBES:
        assert (x in u) == (x in a or x in b)
        assert (x in i) == (x in a and x in b)
        assert (x in m) == (x in a and x not in b)
        assert (x in c) == (x not in a)


@settings(max_examples=200, deadline=None)
@given(sets(), sets())
def test_de_morgan(a, b):
    comp = borel.complement
    assert comp(a | b) == comp(a) & comp(b)
    assert comp(a & b) == comp(a) | comp(b)
    assert comp(comp(a)) == a


@settings(max_examples=200, deadline=None)
@given(sets(infinite=False), sets(infinite=False))
def test_inclusion_exclusion(a, b):
    lhs = borel.leb_measure(a | b) + borel.leb_measure(a & b)
    assert lhs == pytest.approx(borel.leb_measure(a) + borel.leb_measure(b), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(sets())
def test_leb_closure_laws(g):
    lc = borel.leb_closure(g)
    assert lc.issubset(borel.closure(g))
    assert not lc.points
    # neighbourhood definition at probe points
    for x in PROBES[:-2]:
        nb = borel.leb_measure(g & BorelSet.interval(x - 1e-3, x + 1e-3, False, False))
        assert (x in lc) == (nb > 0)


def test_leb_closure_examples():
    assert borel.leb_closure(parse_set("(0,1)u{2}")) == parse_set("[0,1]")
    assert borel.leb_closure(parse_set("[0,1]")) == parse_set("[0,1]")
    assert borel.leb_closure(parse_set("{1,2,3}")).is_empty()


def test_endpoint_cases():
    assert borel.union(parse_set("[0,1]"), parse_set("{2}")) == parse_set("[0,1]u{2}")
    assert borel.intersect(parse_set("(0,2)"), parse_set("[1,3]")) == parse_set("[1,2)")
    assert borel.complement(BorelSet.real_line()).is_empty()
    assert parse_set("[0,1)u{1}") == parse_set("[0,1]")
    assert parse_set("[0,1)u(1,2]") != parse_set("[0,2]")


def test_lebesgue_measure():
    assert borel.leb_measure(parse_set("[0,1]u{5}")) == 1
    assert borel.leb_measure(BorelSet.empty()) == 0
    assert borel.leb_measure(parse_set("(-inf,0]")) == math.inf


def test_preimages():
    x = PiecewiseScalarFn.identity()
    assert borel.preimage(x, parse_set("[0,0.5]"), parse_set("[0,1]")) == parse_set("[0,0.5]")
    F = PiecewiseScalarFn.polynomial([1, 2])
    assert borel.preimage(F, parse_set("[1,3]")) == parse_set("[0,1]")
    assert borel.preimage(x, BorelSet.empty()).is_empty()
    with pytest.raises(UnsupportedFunction):
        borel.preimage(PiecewiseScalarFn.polynomial([0, 0, 1]), parse_set("[0,1]"), parse_set("[-1,1]"))


def test_affine_preimage_reverses_orientation():
    s = borel.affine_preimage(parse_set("[1,3)"), -2.0, 1.0)
    assert s == parse_set("(-1,0]")
    assert borel.affine_image(s, -2.0, 1.0) == parse_set("[1,3)")


@pytest.mark.parametrize("text", ["[0,1]u(2,3)u{5}", "{}", "R", "(-inf,0)u[1,inf)", "{1,2,3}"])
def test_text_round_trip(text):
    s = parse_set(text)
    assert parse_set(to_text(s)) == s


@pytest.mark.parametrize("bad", ["[1,0]", "[0,1", "{a}", "[0,1]v[2,3]", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_set(bad)


def test_random_sets_are_canonical():
    rng = np.random.default_rng(0)
    from matmeasure.fuzz import random_set
    for _ in range(100):
        s = random_set(rng)
        assert BorelSet.from_parts(s.intervals, s.points) == s
