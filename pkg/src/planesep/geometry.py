"""Exact rational geometry primitives.

Every coordinate is a :class:`fractions.Fraction`.  Predicates are evaluated on
integer homogeneous forms (``Point.hom`` and ``Line.coeffs``), so nothing here
ever compares floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Literal, Sequence, Union

Scalar = Fraction

PARALLEL = "parallel"
COINCIDENT = "coincident"

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTERIOR = "exterior"


class GeometryError(ValueError):
    """Malformed geometric input (degenerate segment, duplicate lines, ...)."""


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # floats are exact binary rationals; accepted but never produced
        return Fraction(value)
    raise TypeError(f"cannot convert {value!r} to an exact scalar")


def sign(v: int | Fraction) -> int:
    return (v > 0) - (v < 0)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _reduce3(a: int, b: int, c: int) -> tuple[int, int, int]:
    g = gcd(gcd(a, b), c)
    if g > 1:
        return a // g, b // g, c // g
    return a, b, c


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_scalar(self.x))
        object.__setattr__(self, "y", as_scalar(self.y))

    @classmethod
    def from_hom(cls, X: int, Y: int, W: int) -> "Point":
        if W == 0:
            raise GeometryError("point at infinity")
        return cls(Fraction(X, W), Fraction(Y, W))

    @cached_property
    def hom(self) -> tuple[int, int, int]:
        """Integer homogeneous coordinates ``(X, Y, W)`` with ``W > 0``."""
        qx, qy = self.x.denominator, self.y.denominator
        w = _lcm(qx, qy)
        return self.x.numerator * (w // qx), self.y.numerator * (w // qy), w

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.x, self.y))
            object.__setattr__(self, "_hash", h)
        return h

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True)
class Line:
    """Either ``y = a*x + b`` or, when ``vertical`` is set, ``x = x0``.

    Unused fields are zeroed so that dataclass equality is structural on the
    canonical form.  Build instances through :meth:`nonvertical`,
    :meth:`vertical_at` or :meth:`through` rather than the raw constructor.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    vertical: bool = False
    x0: Fraction = Fraction(0)

    def __post_init__(self):
        if self.vertical:
            object.__setattr__(self, "a", Fraction(0))
            object.__setattr__(self, "b", Fraction(0))
            object.__setattr__(self, "x0", as_scalar(self.x0))
        else:
            object.__setattr__(self, "a", as_scalar(self.a))
            object.__setattr__(self, "b", as_scalar(self.b))
            object.__setattr__(self, "x0", Fraction(0))

    @classmethod
    def nonvertical(cls, a, b) -> "Line":
        return cls(a=a, b=b)

    @classmethod
    def vertical_at(cls, x0) -> "Line":
        return cls(vertical=True, x0=x0)

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        if p == q:
            raise GeometryError("a line needs two distinct points")
        if p.x == q.x:
            return cls.vertical_at(p.x)
        a = (q.y - p.y) / (q.x - p.x)
        return cls.nonvertical(a, p.y - a * p.x)

    @classmethod
    def from_coeffs(cls, A: int, B: int, C: int) -> "Line":
        """Line ``A*x + B*y + C = 0``."""
        if B == 0:
            if A == 0:
                raise GeometryError("degenerate line equation")
            return cls.vertical_at(Fraction(-C, A))
        return cls.nonvertical(Fraction(-A, B), Fraction(-C, B))

    @cached_property
    def coeffs(self) -> tuple[int, int, int]:
        """Reduced integers ``(A, B, C)`` with ``A*x + B*y + C`` having the sign
        of :func:`side` (positive above a non-vertical line, right of a
        vertical one)."""
        if self.vertical:
            q, p = self.x0.denominator, self.x0.numerator
            return _reduce3(q, 0, -p)
        p, q = self.a.numerator, self.a.denominator
        r, s = self.b.numerator, self.b.denominator
        return _reduce3(-p * s, q * s, -r * q)

    def y_at(self, x) -> Fraction:
        if self.vertical:
            raise GeometryError("vertical line has no y(x)")
        return self.a * as_scalar(x) + self.b

    def contains(self, p: Point) -> bool:
        return side(self, p) == 0

    def parallel_to(self, other: "Line") -> bool:
        if self.vertical or other.vertical:
            return self.vertical and other.vertical
        return self.a == other.a

    def anchor(self) -> Point:
        """A canonical point on the line (its y- or x-axis crossing)."""
        if self.vertical:
            return Point(self.x0, 0)
        return Point(0, self.b)

    def direction(self) -> tuple[Fraction, Fraction]:
        if self.vertical:
            return Fraction(0), Fraction(1)
        return Fraction(1), self.a

    def __repr__(self) -> str:
        if self.vertical:
            return f"Line(x = {self.x0})"
        return f"Line(y = {self.a}*x + {self.b})"


def side(line: Line, p: Point) -> int:
    """Sign of ``p`` relative to ``line``: +1 above (or right of a vertical line)."""
    A, B, C = line.coeffs
    X, Y, W = p.hom
    return sign(A * X + B * Y + C * W)


def eval_hom(coeffs: tuple[int, int, int], p: Point) -> int:
    A, B, C = coeffs
    X, Y, W = p.hom
    return A * X + B * Y + C * W


def intersect(l1: Line, l2: Line) -> Union[Point, Literal["parallel", "coincident"]]:
    """Intersection of two lines; total function."""
    A1, B1, C1 = l1.coeffs
    A2, B2, C2 = l2.coeffs
    W = A1 * B2 - A2 * B1
    X = B1 * C2 - B2 * C1
    Y = C1 * A2 - C2 * A1
    if W == 0:
        return COINCIDENT if X == 0 and Y == 0 else PARALLEL
    if W < 0:
        X, Y, W = -X, -Y, -W
    return Point.from_hom(X, Y, W)


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product ``(q - p) x (r - p)``; +1 for a left turn."""
    return sign((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))


def concurrent(l1: Line, l2: Line, l3: Line) -> Point | None:
    """Common point of three pairwise distinct lines, or None."""
    if l1 == l2 or l1 == l3 or l2 == l3:
        raise GeometryError("concurrency test needs pairwise distinct lines")
    p = intersect(l1, l2)
    if not isinstance(p, Point):
        return None
    return p if l3.contains(p) else None


# --- duality -------------------------------------------------------------


def dual_of_line(line: Line) -> Point:
    """``y = a*x + b`` maps to the point ``(a, -b)``."""
    if line.vertical:
        raise GeometryError("vertical lines have no dual point under y = ax + b")
    return Point(line.a, -line.b)


def dual_of_point(p: Point) -> Line:
    """``(a, b)`` maps to the line ``y = a*x - b``."""
    return Line.nonvertical(p.x, -p.y)


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self):
        if self.p == self.q:
            raise GeometryError("degenerate segment")

    @property
    def vertical(self) -> bool:
        return self.p.x == self.q.x

    @property
    def low(self) -> Point:
        return min(self.p, self.q, key=lambda v: (v.y, v.x))

    @property
    def high(self) -> Point:
        return max(self.p, self.q, key=lambda v: (v.y, v.x))

    def line(self) -> Line:
        return Line.through(self.p, self.q)


# --- regions -------------------------------------------------------------
#
# Convex objects expose ``constraints``: integer triples (A, B, C) whose open
# intersection {A*x + B*y + C > 0} is the object's interior.


def _oriented(line: Line, toward: int) -> tuple[int, int, int]:
    A, B, C = line.coeffs
    return (A, B, C) if toward > 0 else (-A, -B, -C)


@dataclass(frozen=True)
class Strip:
    """Open region strictly between two distinct parallel lines."""

    boundary1: Line
    boundary2: Line

    def __post_init__(self):
        if not self.boundary1.parallel_to(self.boundary2) or self.boundary1 == self.boundary2:
            raise GeometryError("strip boundaries must be distinct parallel lines")

    @cached_property
    def constraints(self) -> tuple[tuple[int, int, int], ...]:
        s12 = side(self.boundary1, self.boundary2.anchor())
        s21 = side(self.boundary2, self.boundary1.anchor())
        return (_oriented(self.boundary1, s12), _oriented(self.boundary2, s21))

    def lines(self) -> tuple[Line, ...]:
        return (self.boundary1, self.boundary2)


@dataclass(frozen=True)
class Angle:
    """One wedge of two crossing lines: ``side1*side(boundary1, X) > 0`` and
    ``side2*side(boundary2, X) > 0``.  With ``double`` the opposite wedge is
    included too (the dual of a non-vertical segment is such a double wedge).
    """

    boundary1: Line
    boundary2: Line
    side1: int = 1
    side2: int = 1
    double: bool = False

    def __post_init__(self):
        if self.boundary1.parallel_to(self.boundary2):
            raise GeometryError("angle boundaries must cross")
        if self.side1 not in (-1, 1) or self.side2 not in (-1, 1):
            raise GeometryError("wedge selector signs must be +1 or -1")

    @cached_property
    def constraints(self) -> tuple[tuple[int, int, int], ...]:
        if self.double:
            raise GeometryError("a double wedge is not convex; use pieces()")
        return (_oriented(self.boundary1, self.side1), _oriented(self.boundary2, self.side2))

    def pieces(self) -> tuple["Angle", ...]:
        if not self.double:
            return (self,)
        return (
            Angle(self.boundary1, self.boundary2, self.side1, self.side2),
            Angle(self.boundary1, self.boundary2, -self.side1, -self.side2),
        )

    @cached_property
    def apex(self) -> Point:
        return intersect(self.boundary1, self.boundary2)  # type: ignore[return-value]

    def lines(self) -> tuple[Line, ...]:
        return (self.boundary1, self.boundary2)


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane ``side*side(boundary, X) >= 0``."""

    boundary: Line
    side: int = 1

    def __post_init__(self):
        if self.side not in (-1, 1):
            raise GeometryError("half-plane side must be +1 or -1")

    @cached_property
    def constraints(self) -> tuple[tuple[int, int, int], ...]:
        return (_oriented(self.boundary, self.side),)

    def contains(self, p: Point) -> bool:
        return self.side * side(self.boundary, p) >= 0

    def lines(self) -> tuple[Line, ...]:
        return (self.boundary,)


@dataclass(frozen=True)
class Triangle:
    a: Point
    b: Point
    c: Point
    vertices: tuple[Point, Point, Point] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        o = orientation(self.a, self.b, self.c)
        if o == 0:
            raise GeometryError("triangle vertices are collinear")
        ccw = (self.a, self.b, self.c) if o > 0 else (self.a, self.c, self.b)
        object.__setattr__(self, "vertices", ccw)

    @cached_property
    def constraints(self) -> tuple[tuple[int, int, int], ...]:
        out = []
        v = self.vertices
        for i in range(3):
            p, q, r = v[i], v[(i + 1) % 3], v[(i + 2) % 3]
            line = Line.through(p, q)
            out.append(_oriented(line, side(line, r)))
        return tuple(out)

    def edges(self) -> tuple[Segment, ...]:
        v = self.vertices
        return tuple(Segment(v[i], v[(i + 1) % 3]) for i in range(3))

    def lines(self) -> tuple[Line, ...]:
        return tuple(e.line() for e in self.edges())

    def contains(self, p: Point) -> bool:
        """Closed containment."""
        return all(eval_hom(c, p) >= 0 for c in self.constraints)


def _classify_convex(p: Point, constraints: Sequence[tuple[int, int, int]]) -> str:
    vals = [eval_hom(c, p) for c in constraints]
    if all(v > 0 for v in vals):
        return INTERIOR
    if any(v < 0 for v in vals):
        return EXTERIOR
    return BOUNDARY


def classify_point(p: Point, obj) -> str:
    """Exact interior/boundary/exterior classification against a region."""
    if isinstance(obj, Angle) and obj.double:
        labels = {_classify_convex(p, piece.constraints) for piece in obj.pieces()}
        if INTERIOR in labels:
            return INTERIOR
        return BOUNDARY if BOUNDARY in labels else EXTERIOR
    if isinstance(obj, (Strip, Angle, HalfPlane, Triangle)):
        return _classify_convex(p, obj.constraints)
    raise TypeError(f"cannot classify against {type(obj).__name__}")


def dual_of_segment(s: Segment) -> Strip | Angle:
    """Region of dual points whose primal lines meet the closed segment ``s``.

    A vertical segment gives a strip between the duals of its endpoints; a
    non-vertical one gives a double wedge.  Closed membership (interior or
    boundary) of ``X`` matches "the line dual to ``X`` meets ``s``".
    """
    lp, lq = dual_of_point(s.p), dual_of_point(s.q)
    if s.vertical:
        return Strip(lp, lq)
    # the dual line of X passes below p exactly when X lies above p*
    return Angle(lp, lq, side1=1, side2=-1, double=True)


def polygon_area2(poly: Sequence[Point]) -> Fraction:
    """Twice the signed area (positive when counter-clockwise)."""
    total = Fraction(0)
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        total += p.x * q.y - q.x * p.y
    return total


def clip_polygon(poly: Sequence[Point], coeffs: tuple[int, int, int]) -> list[Point]:
    """Keep the part of a convex polygon where ``A*x + B*y + C >= 0``."""
    if not poly:
        return []
    A, B, C = coeffs
    vals = [A * p.x + B * p.y + C for p in poly]
    out: list[Point] = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        vp, vq = vals[i], vals[(i + 1) % n]
        if vp >= 0:
            out.append(p)
        if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
            t = vp / (vp - vq)
            out.append(Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)))
    # drop repeated vertices introduced by touching clips
    dedup: list[Point] = []
    for v in out:
        if not dedup or dedup[-1] != v:
            dedup.append(v)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def convex_contains(poly: Sequence[Point], p: Point) -> bool:
    """Closed containment in a counter-clockwise convex polygon."""
    n = len(poly)
    if n == 0:
        return False
    if n == 1:
        return poly[0] == p
    if n == 2:
        a, b = poly
        return orientation(a, b, p) == 0 and min(a, b) <= p <= max(a, b)
    return all(orientation(poly[i], poly[(i + 1) % n], p) >= 0 for i in range(n))
