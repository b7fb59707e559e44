import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from planesep.arrangement import Box
from planesep.geometry import Angle, GeometryError, HalfPlane, Line, Point, Strip, Triangle, clip_polygon, orientation, polygon_area2, side
from planesep.sampling import FULL, NONE, PARTIAL, _classify, random_plane_separation, size_bound


def _rq(rng, lo=-8, hi=8):
    return F(rng.randint(lo, hi), rng.randint(1, 3))


def _lines(rng, n):
    out = set()
    while len(out) < n:
        out.add(Line.vertical_at(_rq(rng)) if rng.random() < 0.1 else Line.nonvertical(_rq(rng), _rq(rng)))
    return list(out)


def _meets_closed(line, region):
    s = {side(line, v) for v in region.vertices}
    return not (s == {1} or s == {-1})


def test_size_bound_values():
    assert size_bound(500, 60, 0.1).threshold == math.ceil(3 * (500 / 60) * (5 * math.log(500) + math.log(20))) == 852
    assert size_bound(500, 60, 0.01).threshold >= size_bound(500, 60, 0.1).threshold
    assert size_bound(7, 7, 0.5).threshold >= 1
    with pytest.raises(ValueError):
        size_bound(3, 5, 0.1)


@pytest.mark.parametrize("seed", range(3))
def test_line_crossing_sets_match_direct_oracle(seed):
    rng = random.Random(seed)
    lines = _lines(rng, 100)
    sep = random_plane_separation(lines, 10, 0.1, rng)
    assert len(set(sep.sample)) == 10
    for r, reg in enumerate(sep.regions.regions):
        want = [i for i, l in enumerate(lines) if _meets_closed(l, reg)]
        assert sep.crossing_sets[r].tolist() == want


def test_concurrent_point_on_sample_boundary_is_reported():
    lines = [Line.nonvertical(1, 0), Line.nonvertical(-1, 0), Line.nonvertical(0, 0)]
    for seed in range(5):
        sep = random_plane_separation(lines, 2, 0.1, random.Random(seed))
        assert Point(0, 0) in [p for p, _ in sep.boundary_witnesses]
        p, ids = sep.boundary_witnesses[0]
        assert sorted(ids) == [0, 1, 2]


def test_strip_containing_box_is_full_everywhere():
    box = Box(-10, -10, 10, 10)
    wide = Strip(Line.nonvertical(0, -100), Line.nonvertical(0, 100))
    other = Strip(Line.nonvertical(0, 0), Line.nonvertical(0, 3))
    for k in (1, 2, 3, 4):
        sep = random_plane_separation([wide, other], k, 0.1, random.Random(k), box=box)
        assert all(0 in f.tolist() for f in sep.fully_covering)
        assert all(0 not in c.tolist() for c in sep.crossing_sets)


def test_k_out_of_range():
    with pytest.raises(ValueError):
        random_plane_separation([Line.nonvertical(0, 0)], 2, 0.1, random.Random(0))


def _random_object(rng):
    while True:
        try:
            kind = rng.randrange(4)
            if kind == 0:
                return Triangle(Point(_rq(rng), _rq(rng)), Point(_rq(rng), _rq(rng)), Point(_rq(rng), _rq(rng)))
            if kind == 1:
                return Angle(Line.nonvertical(_rq(rng), _rq(rng)), Line.nonvertical(_rq(rng), _rq(rng)),
                             rng.choice((1, -1)), rng.choice((1, -1)))
            if kind == 2:
                a = _rq(rng)
                return Strip(Line.nonvertical(a, _rq(rng)), Line.nonvertical(a, _rq(rng)))
            return HalfPlane(Line.nonvertical(_rq(rng), _rq(rng)), rng.choice((1, -1)))
        except GeometryError:
            continue


def _relation(obj, reg):
    vals = [[a * v.x + b * v.y + c for v in reg.vertices] for a, b, c in obj.constraints]
    if isinstance(obj, HalfPlane):
        # closed half-plane against a closed region
        return FULL if min(vals[0]) >= 0 else (NONE if max(vals[0]) < 0 else PARTIAL)
    if all(min(row) > 0 for row in vals):
        return FULL
    poly = list(reg.vertices)
    for c in obj.constraints:
        poly = clip_polygon(poly, c)
    return PARTIAL if len(poly) >= 3 and polygon_area2(poly) != 0 else NONE


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_region_classification_matches_clipping(seed):
    rng = random.Random(seed)
    objs = [_random_object(rng) for _ in range(6)]
    sep = random_plane_separation(objs, min(4, len({l for o in objs for l in o.lines()})), 0.1, rng)
    rel = _classify(objs, sep.regions)
    for o, obj in enumerate(objs):
        for r, reg in enumerate(sep.regions.regions):
            assert rel[o][r] == _relation(obj, reg), (o, r)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_planted_triple_is_never_lost(seed):
    rng = random.Random(seed)
    x = Point(_rq(rng), _rq(rng))
    slopes = rng.sample(range(-9, 10), 3)
    planted = [Line.nonvertical(a, x.y - a * x.x) for a in slopes]
    lines = list(set(planted + _lines(rng, 25)))
    ids = sorted(lines.index(l) for l in planted)
    sep = random_plane_separation(lines, 6, 0.1, rng)
    if any(p == x for p, _ in sep.boundary_witnesses):
        return
    hits = sep.regions.locate(x)
    assert any(set(ids) <= set(sep.crossing_sets[r].tolist()) for r in hits)
