import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from planesep.arrangement import Box
from planesep.geometry import INTERIOR, HalfPlane, Line, Point, Segment, Strip, classify_point, side
from planesep.oracles import (
    DEPTH,
    UNCOVERED_IN_REGION,
    OracleRefused,
    oracle_3_points_on_line,
    oracle_3sum,
    oracle_coverage,
    oracle_point_on_3_lines,
    oracle_sightlines,
)

Y = Line.nonvertical


def test_point_on_3_lines_examples():
    r = oracle_point_on_3_lines([Y(1, 0), Y(-1, 0), Y(0, 0)])
    assert r.positive and r.witness == ((0, 1, 2), Point(0, 0))
    assert not oracle_point_on_3_lines([Y(1, 0), Y(-1, 2), Y(0, -1)]).positive
    pencil = [Y(a, 3 - 2 * a) for a in range(5)]
    r = oracle_point_on_3_lines(pencil)
    assert r.positive and r.witness[1] == Point(2, 3)
    with pytest.raises(OracleRefused):
        oracle_point_on_3_lines([Y(a, 0) for a in range(61)])


def test_3_points_on_line_and_3sum():
    assert oracle_3_points_on_line([Point(0, 0), Point(1, 2), Point(2, 4)]).positive
    assert not oracle_3_points_on_line([Point(0, 0), Point(1, 2), Point(2, 5)]).positive
    assert oracle_3sum([0, 0, 0]).positive
    assert not oracle_3sum([1, 2, 4]).positive
    assert oracle_3sum([5, -2, -3]).positive


def test_coverage_examples():
    box = Box(0, 0, 4, 4).corners()
    r = oracle_coverage([], UNCOVERED_IN_REGION, region=box)
    assert r.positive and r.witness in box
    assert not oracle_coverage([Strip(Y(0, -1), Y(0, 5))], UNCOVERED_IN_REGION, region=box).positive
    hps = [HalfPlane(Y(a, -1), 1) for a in range(-3, 4)]  # all hold the origin
    assert oracle_coverage(hps, DEPTH, t=len(hps)).positive


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=0, max_size=10, unique=True))
def test_witnesses_reverify(coeffs):
    lines = [Y(a, b) for a, b in coeffs]
    r = oracle_point_on_3_lines(lines)
    if r.positive:
        ids, p = r.witness
        assert len(set(ids)) == 3 and all(lines[i].contains(p) for i in ids)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_coverage_witness_is_uncovered(seed):
    rng = random.Random(seed)
    strips = []
    for _ in range(rng.randint(0, 6)):
        a = F(rng.randint(-3, 3), rng.randint(1, 2))
        b0 = rng.randint(-6, 5)
        strips.append(Strip(Y(a, b0), Y(a, b0 + rng.randint(1, 4))))
    region = Box(-3, -3, 3, 3).corners()
    r = oracle_coverage(strips, UNCOVERED_IN_REGION, region=region)
    if r.positive:
        assert all(classify_point(r.witness, s) != INTERIOR for s in strips)
        assert -3 <= r.witness.x <= 3 and -3 <= r.witness.y <= 3


def _vseg(x, y0, y1):
    return Segment(Point(x, y0), Point(x, y1))


def test_sightline_examples():
    s1, s2 = _vseg(0, 0, 1), _vseg(10, 0, 1)
    assert oracle_sightlines([], s1, s2).positive
    assert not oracle_sightlines([_vseg(5, -50, 50)], s1, s2).positive
    assert oracle_sightlines([_vseg(0, 0, 1), _vseg(5, 10, 11)], separator=True).positive


def _random_vsegs(rng, n):
    segs = []
    for _ in range(n):
        x = rng.randint(1, 9)
        y0 = rng.randint(-6, 5)
        segs.append(_vseg(x, y0, y0 + rng.randint(1, 4)))
    return segs


def _blocked(line, segs):
    return any(side(line, s.p) * side(line, s.q) < 0 for s in segs)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_sightline_candidates_are_complete(seed):
    # any valid sightline found by random search implies the oracle finds one
    rng = random.Random(seed)
    s1, s2 = _vseg(0, rng.randint(-4, 0), rng.randint(1, 4)), _vseg(10, rng.randint(-4, 0), rng.randint(1, 4))
    obst = _random_vsegs(rng, rng.randint(1, 5))
    found = False
    for _ in range(300):
        a, b = F(rng.randint(-400, 400), 97), F(rng.randint(-400, 400), 89)
        line = Y(a, b)
        if side(line, s1.p) * side(line, s1.q) <= 0 and side(line, s2.p) * side(line, s2.q) <= 0 and not _blocked(line, obst):
            found = True
            break
    r = oracle_sightlines(obst, s1, s2)
    if found:
        assert r.positive
    if r.positive:
        w = r.witness
        assert side(w, s1.p) * side(w, s1.q) <= 0 and not _blocked(w, obst)
