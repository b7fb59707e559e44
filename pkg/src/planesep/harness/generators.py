"""Planted and unplanted instance generators.

Planted instances are positive by construction; unplanted ones are negative
by construction where a construction exists and otherwise rejection-sampled.
Every instance within the oracle cap is checked by its oracle and tagged
``verified``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from ..arrangement import Box
from ..geometry import Angle, GeometryError, HalfPlane, Line, Point, Segment, Strip, Triangle, eval_hom, orientation
from .. import oracles as O
from .instances import (
    GENERAL_COVERING,
    POINT_COVERING,
    POINT_ON_3_LINES,
    PROBLEMS,
    SEPARATOR,
    STRIPS_COVER_BOX,
    THREE_POINTS_ON_LINE,
    THREE_SUM,
    TRIANGLES_COVER_TRIANGLE,
    VISIBILITY,
    Instance,
)

GENERATOR = "rational-v1"
ORACLE_CAP = {THREE_SUM: 400, POINT_ON_3_LINES: 60, THREE_POINTS_ON_LINE: 60, VISIBILITY: 60, SEPARATOR: 60}
DEFAULT_CAP = 40
MIN_N = {POINT_ON_3_LINES: 3, THREE_POINTS_ON_LINE: 3, THREE_SUM: 3, SEPARATOR: 2,
         GENERAL_COVERING: 2, POINT_COVERING: 1}
RETRIES = 50


class GenerationError(RuntimeError):
    pass


def _q(rng: random.Random, num: int, den: int = 97) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def _interior(p: Point, obj) -> bool:
    if isinstance(obj, Angle) and obj.double:
        return any(_interior(p, piece) for piece in obj.pieces())
    return all(eval_hom(c, p) > 0 for c in obj.constraints)


def _rand_line(rng: random.Random, slope: int = 10 ** 4, icpt: int = 10 ** 6) -> Line:
    return Line.nonvertical(_q(rng, slope), _q(rng, icpt))


# --- point-on-3-lines / 3-points-on-line --------------------------------------

def _p3l(n: int, planted: bool, rng: random.Random) -> list:
    seen: set[Line] = set()
    out: list[Line] = []
    if planted:
        px, py = _q(rng, 10 ** 3), _q(rng, 10 ** 5)
        while len(out) < 3:
            a = _q(rng, 10 ** 4)
            line = Line.nonvertical(a, py - a * px)
            if line not in seen:
                seen.add(line)
                out.append(line)
    while len(out) < n:
        line = _rand_line(rng)
        if line not in seen:
            seen.add(line)
            out.append(line)
    rng.shuffle(out)
    return out


def _3pl(n: int, planted: bool, rng: random.Random) -> list:
    seen: set[Point] = set()
    out: list[Point] = []
    if planted:
        a, b = _q(rng, 10 ** 2), _q(rng, 10 ** 4)
        while len(out) < 3:
            x = _q(rng, 10 ** 4)
            p = Point(x, a * x + b)
            if p not in seen:
                seen.add(p)
                out.append(p)
    while len(out) < n:
        p = Point(_q(rng, 10 ** 4), _q(rng, 10 ** 6))
        if p not in seen:
            seen.add(p)
            out.append(p)
    rng.shuffle(out)
    return out


# --- coverings ---------------------------------------------------------------

def _rand_strip(rng: random.Random, span: int) -> Strip:
    if rng.random() < 0.1:
        x = _q(rng, span, 7)
        return Strip(Line.vertical_at(x), Line.vertical_at(x + Fraction(rng.randint(1, 4 * span), 7)))
    a, b = _q(rng, 5, 7), _q(rng, span, 7)
    w = Fraction(rng.randint(1, 4 * span), 7)
    return Strip(Line.nonvertical(a, b), Line.nonvertical(a, b + w))


def _avoiding(make: Callable[[], object], p: Point) -> object:
    for _ in range(10 * RETRIES):
        obj = make()
        if not _interior(p, obj):
            return obj
    raise GenerationError("could not place an object avoiding the planted point")


def _covering_strips(box: Box, count: int, rng: random.Random) -> list[Strip]:
    """``count`` parallel open strips whose union contains the closed box."""
    a = _q(rng, 5, 7)
    vals = [c.y - a * c.x for c in box.corners()]
    lo, hi = min(vals) - 1, max(vals) + 1
    cuts = sorted({lo, hi, *(lo + (hi - lo) * Fraction(rng.randint(1, 999), 1000) for _ in range(count - 1))})
    while len(cuts) < count + 1:
        cuts.append(cuts[-1] + 1)
    pad = (hi - lo) / 100
    return [Strip(Line.nonvertical(a, cuts[i] - pad), Line.nonvertical(a, cuts[i + 1] + pad))
            for i in range(count)]


def _strips_box(n: int, planted: bool, rng: random.Random):
    half = Fraction(rng.randint(20, 100), rng.randint(1, 3))
    box = Box(-half, -half, half, half)
    span = int(half) + 1
    if planted:
        x = Point(_q(rng, int(half) - 1, 1), _q(rng, int(half) - 1, 1))
        return [_avoiding(lambda: _rand_strip(rng, span), x) for _ in range(n)], [box]
    k = max(1, min(n, 1 + n // 3))
    objs = _covering_strips(box, k, rng) + [_rand_strip(rng, span) for _ in range(n - k)]
    rng.shuffle(objs)
    return objs, [box]


def _rand_triangle(rng: random.Random, span: int) -> Triangle:
    while True:
        pts = [Point(_q(rng, span, 3), _q(rng, span, 3)) for _ in range(3)]
        if orientation(*pts) != 0:
            return Triangle(*pts)


def _triangles(n: int, planted: bool, rng: random.Random):
    target = _rand_triangle(rng, 60)
    if planted:
        w = [Fraction(rng.randint(1, 20)) for _ in range(3)]
        s = sum(w)
        v = target.vertices
        x = Point(sum(wi * p.x for wi, p in zip(w, v)) / s, sum(wi * p.y for wi, p in zip(w, v)) / s)
        return [_avoiding(lambda: _rand_triangle(rng, 90), x) for _ in range(n)], [target]
    if n == 0:
        raise GenerationError("an unplanted triangle instance needs at least one triangle")
    c = Point(sum(p.x for p in target.vertices) / 3, sum(p.y for p in target.vertices) / 3)
    f = Fraction(rng.randint(21, 40), 10)
    big = Triangle(*(Point(c.x + f * (p.x - c.x), c.y + f * (p.y - c.y)) for p in target.vertices))
    objs = [big] + [_rand_triangle(rng, 90) for _ in range(n - 1)]
    rng.shuffle(objs)
    return objs, [target]


def _rand_halfplane(rng: random.Random) -> HalfPlane:
    if rng.random() < 0.1:
        return HalfPlane(Line.vertical_at(_q(rng, 50, 7)), rng.choice((1, -1)))
    return HalfPlane(Line.nonvertical(_q(rng, 5, 7), _q(rng, 50, 7)), rng.choice((1, -1)))


def _point_covering(n: int, planted: bool, rng: random.Random):
    if planted:
        x = Point(_q(rng, 40, 7), _q(rng, 40, 7))
        t = rng.randint(1, n)
        objs = []
        for i in range(n):
            h = _rand_halfplane(rng)
            if i < t and not h.contains(x):
                h = HalfPlane(h.boundary, -h.side)
            objs.append(h)
        rng.shuffle(objs)
        return objs, {"t": t}
    objs = [_rand_halfplane(rng) for _ in range(n)]
    if n <= DEFAULT_CAP:
        d = O.oracle_coverage(objs, O.DEPTH, t=0).witness
        depth = sum(1 for h in objs if h.contains(d))
        if depth < n:
            return objs, {"t": depth + 1}
    if n < 2:
        raise GenerationError("an unplanted point-covering instance needs two half-planes")
    a, b = _q(rng, 5, 7), _q(rng, 50, 7)
    objs[0] = HalfPlane(Line.nonvertical(a, b + 1), 1)
    objs[1] = HalfPlane(Line.nonvertical(a, b), -1)
    rng.shuffle(objs)
    return objs, {"t": n}


def _general(n: int, planted: bool, rng: random.Random):
    if not planted:
        # parallel boundaries never cross
        a = _q(rng, 5, 7)
        objs = []
        for _ in range(n):
            b = _q(rng, 50, 7)
            objs.append(Strip(Line.nonvertical(a, b), Line.nonvertical(a, b + Fraction(rng.randint(1, 60), 7))))
        return objs
    x = Point(_q(rng, 40, 7), _q(rng, 40, 7))
    a1 = _q(rng, 5, 7)
    l1 = Line.nonvertical(a1, x.y - a1 * x.x)
    a2 = a1
    while a2 == a1:
        a2 = _q(rng, 5, 7)
    l2 = Line.nonvertical(a2, x.y - a2 * x.x)
    first = Strip(l1, Line.nonvertical(a1, l1.b + rng.choice((1, -1)) * Fraction(rng.randint(1, 60), 7)))
    other = l2
    while other.parallel_to(l2):
        other = Line.nonvertical(_q(rng, 5, 7), _q(rng, 50, 7))
    second = Angle(l2, other, rng.choice((1, -1)), rng.choice((1, -1)))

    def make():
        if rng.random() < 0.5:
            return _rand_strip(rng, 50)
        while True:
            p, q = _rand_line(rng, 5, 50), _rand_line(rng, 5, 50)
            if not p.parallel_to(q):
                return Angle(p, q, rng.choice((1, -1)), rng.choice((1, -1)), rng.random() < 0.2)

    objs = [first, second] + [_avoiding(make, x) for _ in range(n - 2)]
    rng.shuffle(objs)
    return objs


# --- sightlines --------------------------------------------------------------

def _vseg(x: Fraction, y1: Fraction, y2: Fraction) -> Segment:
    return Segment(Point(x, min(y1, y2)), Point(x, max(y1, y2)))


def _visibility(n: int, planted: bool, rng: random.Random):
    x1, x2 = Fraction(-50), Fraction(50)
    lo1, lo2 = _q(rng, 30, 3), _q(rng, 30, 3)
    s1 = _vseg(x1, lo1, lo1 + 40)
    s2 = _vseg(x2, lo2, lo2 + 40)

    def rand_obstacle() -> Segment:
        x = Fraction(rng.randint(-69, 69), rng.randint(1, 3)) + Fraction(1, 7)
        lo = _q(rng, 60, 3)
        return _vseg(x, lo, lo + Fraction(rng.randint(1, 60), 3))

    objs: list[Segment] = []
    if planted:
        p1 = Point(x1, s1.p.y + (s1.q.y - s1.p.y) * Fraction(rng.randint(0, 10), 10))
        p2 = Point(x2, s2.p.y + (s2.q.y - s2.p.y) * Fraction(rng.randint(0, 10), 10))
        sight = Line.through(p1, p2)
        while len(objs) < n:
            o = rand_obstacle()
            y = sight.y_at(o.p.x)
            if not (o.low.y < y < o.high.y):
                objs.append(o)
    else:
        if n == 0:
            raise GenerationError("an unplanted visibility instance needs an obstacle")
        ys = [s1.p.y, s1.q.y, s2.p.y, s2.q.y]
        xb = Fraction(rng.randint(-49 * 7, 49 * 7), 7)
        objs = [_vseg(xb, min(ys) - 1, max(ys) + 1)] + [rand_obstacle() for _ in range(n - 1)]
        rng.shuffle(objs)
    return objs, [s1, s2]


def _separator(n: int, planted: bool, rng: random.Random):
    objs: list[Segment] = []
    if planted:
        sep = Line.nonvertical(_q(rng, 3, 7), _q(rng, 20, 7))
        sides = [1, -1] + [rng.choice((1, -1)) for _ in range(n - 2)]
        for s in sides:
            x = _q(rng, 60, 7)
            y = sep.y_at(x)
            g, h = Fraction(rng.randint(1, 40), 7), Fraction(rng.randint(1, 60), 7)
            objs.append(_vseg(x, y + g, y + g + h) if s > 0 else _vseg(x, y - g, y - g - h))
        rng.shuffle(objs)
        return objs
    x = _q(rng, 60, 7)
    y = _q(rng, 20, 7)
    for _ in range(n):
        h = Fraction(rng.randint(2, 40), 7)
        objs.append(_vseg(x, y, y + h))
        y += h * Fraction(rng.randint(1, 9), 10)
    rng.shuffle(objs)
    return objs


# --- 3sum --------------------------------------------------------------------

def _3sum(n: int, planted: bool, rng: random.Random) -> list[int]:
    # three odd numbers never sum to zero
    vals = [2 * rng.randint(-10 ** 6, 10 ** 6) + 1 for _ in range(n)]
    if planted:
        a, b = rng.randint(-10 ** 6, 10 ** 6), rng.randint(-10 ** 6, 10 ** 6)
        vals[:3] = [a, b, -(a + b)]
        rng.shuffle(vals)
    return vals


# --- dispatch ----------------------------------------------------------------

def oracle_answer(inst: Instance) -> O.OracleReport:
    """Brute-force answer for ``inst``; raises OracleRefused above the caps."""
    p, objs = inst.problem, inst.objects
    if p == POINT_ON_3_LINES:
        return O.oracle_point_on_3_lines(objs)
    if p == THREE_POINTS_ON_LINE:
        return O.oracle_3_points_on_line(objs)
    if p == STRIPS_COVER_BOX:
        return O.oracle_coverage(objs, O.UNCOVERED_IN_REGION, region=inst.targets[0].corners())
    if p == TRIANGLES_COVER_TRIANGLE:
        return O.oracle_coverage(objs, O.UNCOVERED_IN_REGION, region=list(inst.targets[0].vertices))
    if p == POINT_COVERING:
        return O.oracle_coverage(objs, O.DEPTH, t=inst.params["t"])
    if p == GENERAL_COVERING:
        return O.oracle_coverage(objs, O.CROSSINGS)
    if p == VISIBILITY:
        return O.oracle_sightlines(objs, inst.targets[0], inst.targets[1])
    if p == SEPARATOR:
        return O.oracle_sightlines(objs, separator=True)
    if p == THREE_SUM:
        return O.oracle_3sum(objs)
    raise ValueError(f"unknown problem {p!r}")


def gen_instance(problem: str, n: int, planted: bool, seed: int) -> Instance:
    """Instance of ``problem`` with ``n`` objects; oracle-checked when small."""
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    if n < MIN_N.get(problem, 0):
        raise ValueError(f"{problem} needs n >= {MIN_N[problem]}")
    rng = random.Random(f"{problem}/{n}/{int(planted)}/{seed}")
    for _ in range(RETRIES):
        targets, params = [], {}
        if problem == POINT_ON_3_LINES:
            objs = _p3l(n, planted, rng)
        elif problem == THREE_POINTS_ON_LINE:
            objs = _3pl(n, planted, rng)
        elif problem == STRIPS_COVER_BOX:
            objs, targets = _strips_box(n, planted, rng)
        elif problem == TRIANGLES_COVER_TRIANGLE:
            objs, targets = _triangles(n, planted, rng)
        elif problem == POINT_COVERING:
            objs, params = _point_covering(n, planted, rng)
        elif problem == GENERAL_COVERING:
            objs = _general(n, planted, rng)
        elif problem == VISIBILITY:
            objs, targets = _visibility(n, planted, rng)
        elif problem == SEPARATOR:
            objs = _separator(n, planted, rng)
        else:
            objs = _3sum(n, planted, rng)
        inst = Instance(problem, objs, targets, params, seed=seed, planted=planted,
                        generator=GENERATOR, verified=False)
        if n > ORACLE_CAP.get(problem, DEFAULT_CAP):
            return inst
        try:
            ans = oracle_answer(inst)
        except (O.OracleRefused, GeometryError):
            return inst
        if ans.positive == planted:
            inst.verified = True
            return inst
    raise GenerationError(f"no {'planted' if planted else 'unplanted'} {problem} instance after {RETRIES} tries")
