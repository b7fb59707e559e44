import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from planesep.arrangement import Box, build_arrangement, compute_clip_box, triangulate
from planesep.geometry import GeometryError, Line, Point, intersect, side


def _random_lines(rng, count, vertical=0.15):
    out = set()
    while len(out) < count:
        if rng.random() < vertical:
            out.add(Line.vertical_at(F(rng.randint(-5, 5), rng.randint(1, 3))))
        else:
            out.add(Line.nonvertical(F(rng.randint(-5, 5), rng.randint(1, 3)), F(rng.randint(-5, 5), rng.randint(1, 2))))
    return sorted(out, key=lambda l: l.coeffs)


def test_clip_box_examples():
    box = compute_clip_box([Line.nonvertical(1, 0), Line.nonvertical(-1, 0)])
    assert box.contains(Point(0, 0), strict=True) and box.xmax >= 1
    ints = [Line.nonvertical(a, b) for a in (-10, 3, 10) for b in (-10, 7)]
    assert compute_clip_box(ints).xmax >= 21
    assert compute_clip_box([Line.nonvertical(0, 0)]).area > 0
    with pytest.raises(GeometryError):
        compute_clip_box([])


@settings(max_examples=80)
@given(st.integers(0, 10**6))
def test_clip_box_contains_every_crossing(seed):
    lines = _random_lines(random.Random(seed), 6)
    box = compute_clip_box(lines)
    for i, a in enumerate(lines):
        for b in lines[:i]:
            p = intersect(a, b)
            if isinstance(p, Point):
                assert box.contains(p, strict=True)


def _box():
    return Box(-10, -10, 10, 10)


def test_face_counts():
    assert len(build_arrangement([Line.nonvertical(1, 0), Line.nonvertical(-1, 0)], _box()).faces) == 4
    pencil = [Line.nonvertical(1, 0), Line.nonvertical(-1, 0), Line.nonvertical(0, 0)]
    assert len(build_arrangement(pencil, _box()).faces) == 6
    general = [Line.nonvertical(1, 0), Line.nonvertical(-1, 2), Line.nonvertical(0, -1)]
    assert len(build_arrangement(general, _box()).faces) == 1 + 3 + 3


def test_duplicate_lines_rejected():
    with pytest.raises(GeometryError):
        build_arrangement([Line.nonvertical(1, 0), Line.nonvertical(1, 0)], _box())


def test_triangulation_of_quadrilateral_and_triangle():
    # one vertical line splits the box into two quadrilaterals, two triangles each
    rs = triangulate(build_arrangement([Line.vertical_at(0)], _box()))
    assert len(rs) == 4
    # a diagonal of the box leaves two triangles untouched
    rs = triangulate(build_arrangement([Line.nonvertical(1, 0)], _box()))
    assert len(rs) == 2
    assert all(len(r.vertices) == 3 for r in rs.regions)


@pytest.mark.parametrize("seed", range(10))
def test_region_count_bound(seed):
    lines = _random_lines(random.Random(seed), 10)
    rs = triangulate(build_arrangement(lines, compute_clip_box(lines)))
    assert len(rs) <= 200


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 9))
def test_euler_tiling_and_convexity(seed, count):
    lines = _random_lines(random.Random(seed), count)
    box = compute_clip_box(lines)
    arr = build_arrangement(lines, box)
    assert arr.euler_characteristic() == 2
    for f in range(len(arr.faces)):
        poly = arr.face_polygon(f)
        m = len(poly)
        turns = {(poly[(i + 1) % m].x - poly[i].x) * (poly[(i + 2) % m].y - poly[i].y)
                 - (poly[(i + 1) % m].y - poly[i].y) * (poly[(i + 2) % m].x - poly[i].x) > 0 for i in range(m)}
        assert turns == {True}
    rs = triangulate(arr)
    assert all(r.area2() > 0 for r in rs.regions)
    assert sum(r.area2() for r in rs.regions) == 2 * box.area
    assert len(rs) <= 2 * count * count


def test_locate_examples():
    single = triangulate(build_arrangement([Line.nonvertical(1, 0)], _box()))
    lower = next(i for i, r in enumerate(single.regions) if r.contains(Point(5, -5)))
    assert single.locate(Point(5, -5)) == [lower]
    pencil = [Line.nonvertical(1, 0), Line.nonvertical(-1, 0), Line.vertical_at(0)]
    rs = triangulate(build_arrangement(pencil, _box()))
    assert len(rs.locate(Point(0, 0))) == 6
    with pytest.raises(GeometryError):
        rs.locate(Point(100, 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_locate_matches_sign_oracle(seed):
    rng = random.Random(seed)
    lines = _random_lines(rng, 6)
    box = compute_clip_box(lines)
    rs = triangulate(build_arrangement(lines, box))
    x = Point(F(rng.randint(-400, 400), 9), F(rng.randint(-400, 400), 9))
    assert box.contains(x)
    got = rs.locate(x)
    assert got == sorted(got) and got
    # every located region sits on one consistent side of each input line
    for r in got:
        reg = rs.regions[r]
        for l in lines:
            sides = {side(l, v) for v in reg.vertices} - {0}
            if side(l, x) != 0:
                assert sides <= {side(l, x)}


def test_dump_has_one_record_per_item():
    arr = build_arrangement([Line.nonvertical(1, 0)], _box())
    text = arr.dump().splitlines()
    assert len(text) == len(arr.vertices) + len(arr.edges) + len(arr.faces)
