import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from planesep.arrangement import Box
from planesep.geometry import Angle, HalfPlane, Line, Point, Segment, Strip, Triangle, orientation
from planesep.harness import gen_instance
from planesep.oracles import oracle_point_on_3_lines, oracle_sightlines
from planesep.quantum import CHARGED, SAMPLING, CostLedger, ExecMode
from planesep.solvers import (
    CoveringInstance,
    SolverConfig,
    choose_parameters,
    convex_hull,
    is_separator,
    solve_3_points_on_line,
    solve_general_covering,
    solve_point_covering,
    solve_point_on_3_lines,
    solve_segment_separator,
    solve_strips_cover_box,
    solve_triangles_cover_triangle,
    solve_visibility_between_segments,
    visibility_witness_ok,
)

Y = Line.nonvertical
V = Line.vertical_at


# --- parameters --------------------------------------------------------------

def test_small_n_signals_base_case():
    assert choose_parameters(10, 0.1).use_base
    assert choose_parameters(63, 0.1).use_base
    assert not choose_parameters(64, 0.1).use_base


def test_asymptotic_formulas_at_one_million():
    n, eps, c2 = 10**6, 0.1, 8
    p = choose_parameters(n, eps, c2)
    alpha = math.sqrt(2 * math.log(n) / (math.log(c2) + math.log(math.log(n))))
    assert p.alpha == pytest.approx(alpha, rel=1e-12)
    raw = math.ceil(n ** (1 / alpha) * 3 * (5 * math.log(n) + math.log(2 / eps)))
    assert p.k_paper == max(4, min(raw, n - 1))
    assert p.alpha >= 1 and p.k >= 4


@given(st.integers(64, 10**7), st.floats(0.001, 0.5), st.floats(0.001, 0.5))
def test_k_non_decreasing_as_eps_shrinks(n, e1, e2):
    lo, hi = sorted((e1, e2))
    assert choose_parameters(n, lo).k_paper >= choose_parameters(n, hi).k_paper


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(base_cutoff=2)
    with pytest.raises(ValueError):
        SolverConfig(c2=1)
    with pytest.raises(ValueError):
        choose_parameters(1, 0.1)


# --- point on three lines ----------------------------------------------------

def test_three_concurrent_lines():
    w = solve_point_on_3_lines([Y(1, 0), Y(-1, 2), V(1)])
    assert w.indices == (0, 1, 2) and w.point == Point(1, 1)


def test_parallel_lines_have_no_witness():
    assert solve_point_on_3_lines([Y(2, b) for b in range(100)]) is None


def test_coincident_lines():
    assert solve_point_on_3_lines([Y(1, 1), Y(1, 1), Y(1, 1)]) is not None
    w = solve_point_on_3_lines([Y(1, 1), Y(0, 5), Y(1, 1)])
    assert w.indices == (0, 1, 2) and w.point == Point(4, 5)
    assert solve_point_on_3_lines([Y(1, 1), Y(1, 2), Y(1, 1)]) is None


def test_planted_two_hundred_agrees_with_oracle():
    inst = gen_instance("point-on-3-lines", 200, True, 3)
    w = solve_point_on_3_lines(inst.objects, 0.1, rng=1)
    assert w is not None and w.verify(inst.objects)
    small = gen_instance("point-on-3-lines", 60, True, 3).objects
    assert oracle_point_on_3_lines(small).positive


@pytest.mark.parametrize("planted", [True, False])
def test_forced_recursion_agrees_with_oracle(planted):
    cfg = SolverConfig(base_cutoff=8, k_scale=1.5)
    depths = []
    for seed in range(6):
        inst = gen_instance("point-on-3-lines", 50, planted, seed)
        led = CostLedger()
        w = solve_point_on_3_lines(inst.objects, 0.05, ledger=led, rng=seed, config=cfg)
        assert (w is not None) == oracle_point_on_3_lines(inst.objects).positive
        depths.append(led.max_recursion_depth)
    # a boundary witness may end the run at the root; most runs recurse
    assert max(depths) >= 1


def test_charged_mode_is_deterministic():
    inst = gen_instance("point-on-3-lines", 300, True, 11)
    totals = set()
    for _ in range(2):
        led = CostLedger()
        solve_point_on_3_lines(inst.objects, 0.1, ExecMode(CHARGED), led, rng=5)
        totals.add((led.quantum_queries, led.classical_steps, tuple(led.per_level())))
    assert len(totals) == 1


def test_sampling_mode_finds_planted_triple():
    inst = gen_instance("point-on-3-lines", 150, True, 2)
    w = solve_point_on_3_lines(inst.objects, 0.1, ExecMode(SAMPLING), rng=9)
    assert w is not None and w.verify(inst.objects)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=0, max_size=12, unique=True))
def test_small_random_sets_match_oracle(coeffs):
    lines = [Y(a, b) for a, b in coeffs]
    w = solve_point_on_3_lines(lines, 0.1, rng=0)
    assert (w is not None) == oracle_point_on_3_lines(lines).positive
    if w is not None:
        assert w.verify(lines)


# --- general covering and its reductions --------------------------------------

def test_general_covering_examples():
    assert solve_general_covering(CoveringInstance([])) is None
    a = Strip(Y(0, 0), Y(0, 1))
    b = Strip(V(0), V(1))
    w = solve_general_covering(CoveringInstance([a, b]))
    assert w in {Point(x, y) for x in (0, 1) for y in (0, 1)}
    # four half-plane-like strips whose union is the whole plane
    cover = [Strip(Y(0, -10**6), Y(0, 1)), Strip(Y(0, 0), Y(0, 10**6)),
             Strip(Y(1, -10**6), Y(1, 10**6))]
    assert solve_general_covering(CoveringInstance(cover, region=Box(-5, -5, 5, 5).corners())) is None


def test_angle_apex_counts_as_candidate():
    # the only crossing of boundary lines is the apex, which the open wedge misses
    wedge = Angle(Y(1, 0), Y(-1, 0), 1, 1)
    assert solve_general_covering(CoveringInstance([wedge])) == Point(0, 0)


def test_strips_cover_box_examples():
    box = Box(0, 0, 4, 4)
    assert solve_strips_cover_box([Strip(Y(0, -1), Y(0, 5))], box) is None
    assert solve_strips_cover_box([], box) in box.corners()
    w = solve_strips_cover_box([Strip(Y(0, -1), Y(0, 3))], box)
    assert w is not None and w.y >= 3


def test_triangles_cover_triangle_examples():
    target = Triangle(Point(0, 0), Point(4, 0), Point(0, 4))
    big = Triangle(Point(-1, -1), Point(10, -1), Point(-1, 10))
    assert solve_triangles_cover_triangle([big], target) is None
    assert solve_triangles_cover_triangle([], target) in target.vertices
    # an identical triangle is open, so its closed boundary stays uncovered
    assert solve_triangles_cover_triangle([target], target) is not None


def test_point_covering_examples():
    h = HalfPlane(Y(0, 0), 1)
    w = solve_point_covering([h], 1)
    assert w is not None and h.contains(w)
    apart = [HalfPlane(Y(0, 0), -1), HalfPlane(Y(0, 1), 1)]
    assert solve_point_covering(apart, 2) is None
    around = [HalfPlane(Y(a, 1), -1) for a in range(-3, 4)]
    w = solve_point_covering(around, 7)
    assert w is not None and all(hp.contains(w) for hp in around)
    with pytest.raises(ValueError):
        solve_point_covering(apart, 3)


def test_three_points_on_line_examples():
    assert solve_3_points_on_line([Point(0, 0), Point(1, 1), Point(2, 2)]) == (0, 1, 2)
    assert solve_3_points_on_line([Point(0, 0), Point(0, 1), Point(0, 2)]) == (0, 1, 2)
    inst = gen_instance("3-points-on-line", 50, False, 4)
    assert solve_3_points_on_line(inst.objects) is None


def _vseg(x, y0, y1):
    return Segment(Point(x, y0), Point(x, y1))


def test_visibility_examples():
    s1, s2 = _vseg(0, 0, 1), _vseg(10, 5, 6)
    w = solve_visibility_between_segments([], s1, s2)
    assert w is not None and visibility_witness_ok(w, [], s1, s2)
    wall = _vseg(5, -100, 100)
    assert solve_visibility_between_segments([wall], s1, s2) is None
    assert not oracle_sightlines([wall], s1, s2).positive


def test_separator_examples():
    two = [_vseg(0, 0, 1), _vseg(1, 5, 6)]
    w = solve_segment_separator(two)
    assert w is not None and is_separator(w, two)
    assert solve_segment_separator([_vseg(0, 0, 1)]) is None
    # overlapping ranges plus a tall middle segment: a steep line still
    # passes between the abscissae
    blocked = [_vseg(0, 0, 10), _vseg(2, 0, 10), _vseg(1, -100, 100)]
    assert oracle_sightlines(blocked, separator=True).positive
    w = solve_segment_separator(blocked)
    assert w is not None and is_separator(w, blocked)
    same_x = [_vseg(0, 0, 2), _vseg(0, 1, 3)]
    assert solve_segment_separator(same_x) is None
    w = solve_segment_separator([_vseg(0, 0, 1), _vseg(0, 2, 3)])
    assert w is not None and is_separator(w, [_vseg(0, 0, 1), _vseg(0, 2, 3)])


# --- convex hull ---------------------------------------------------------------

def test_hull_examples():
    tri = [Point(0, 0), Point(1, 0), Point(0, 1)]
    assert sorted(convex_hull(tri)) == sorted(tri)
    square = [Point(0, 0), Point(2, 0), Point(2, 2), Point(0, 2), Point(1, 1), Point(1, 0)]
    assert sorted(convex_hull(square)) == sorted(square[:4])


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50)), min_size=3, max_size=100, unique=True))
def test_hull_contains_everything_on_the_left(coords):
    pts = [Point(x, y) for x, y in coords]
    hull = convex_hull(pts)
    if len(hull) < 3:
        assert all(orientation(pts[0], pts[1], p) == 0 for p in pts)
        return
    m = len(hull)
    for i in range(m):
        a, b = hull[i], hull[(i + 1) % m]
        assert all(orientation(a, b, p) >= 0 for p in pts)
        # no collinear vertex kept
        assert orientation(hull[i - 1], a, b) > 0
