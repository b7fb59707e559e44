"""Instance records and their line-oriented text format.

A file looks like::

    planesep-instance 1
    problem point-on-3-lines
    seed 7
    planted true
    generator rational-v1
    verified true
    object line y 3/2 -1/7
    object line x 5
    end

Scalars are written as ``num/den`` (or a bare integer).  A line is ``y a b``
for ``y = a*x + b`` or ``x x0`` for a vertical line.  Object records:

* ``line L`` / ``point X Y`` / ``segment X1 Y1 X2 Y2`` / ``int V``
* ``strip L L`` / ``angle L L S1 S2 single|double`` / ``halfplane L S``
* ``triangle X1 Y1 X2 Y2 X3 Y3``

Targets: ``target box XMIN YMIN XMAX YMAX``, ``target triangle ...``,
``target segment ...`` (visibility lists s1 then s2).  Integer parameters:
``param t 4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from ..arrangement import Box
from ..geometry import Angle, HalfPlane, Line, Point, Segment, Strip, Triangle, as_scalar

MAGIC = "planesep-instance 1"

POINT_ON_3_LINES = "point-on-3-lines"
THREE_POINTS_ON_LINE = "3-points-on-line"
STRIPS_COVER_BOX = "strips-cover-box"
TRIANGLES_COVER_TRIANGLE = "triangles-cover-triangle"
POINT_COVERING = "point-covering"
VISIBILITY = "visibility-between-segments"
SEPARATOR = "segment-separator"
GENERAL_COVERING = "general-covering"
THREE_SUM = "3sum"

PROBLEMS = (
    POINT_ON_3_LINES,
    THREE_POINTS_ON_LINE,
    STRIPS_COVER_BOX,
    TRIANGLES_COVER_TRIANGLE,
    POINT_COVERING,
    VISIBILITY,
    SEPARATOR,
    GENERAL_COVERING,
    THREE_SUM,
)


class InstanceFormatError(ValueError):
    pass


@dataclass
class Instance:
    problem: str
    objects: list = field(default_factory=list)
    targets: list = field(default_factory=list)
    params: dict[str, int] = field(default_factory=dict)
    seed: Optional[int] = None
    planted: Optional[bool] = None
    generator: str = ""
    # True: oracle-checked; False: rejection-sampled only
    verified: Optional[bool] = None

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise InstanceFormatError(f"unknown problem {self.problem!r}")

    @property
    def n(self) -> int:
        return len(self.objects)


# --- writing -----------------------------------------------------------------

def fmt(v) -> str:
    v = as_scalar(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _line(l: Line) -> list[str]:
    return ["x", fmt(l.x0)] if l.vertical else ["y", fmt(l.a), fmt(l.b)]


def _pt(p: Point) -> list[str]:
    return [fmt(p.x), fmt(p.y)]


def _record(obj) -> list[str]:
    if isinstance(obj, bool):
        raise InstanceFormatError("booleans are not instance objects")
    if isinstance(obj, int):
        return ["int", str(obj)]
    if isinstance(obj, Line):
        return ["line", *_line(obj)]
    if isinstance(obj, Point):
        return ["point", *_pt(obj)]
    if isinstance(obj, Segment):
        return ["segment", *_pt(obj.p), *_pt(obj.q)]
    if isinstance(obj, Strip):
        return ["strip", *_line(obj.boundary1), *_line(obj.boundary2)]
    if isinstance(obj, Angle):
        return ["angle", *_line(obj.boundary1), *_line(obj.boundary2), str(obj.side1), str(obj.side2),
                "double" if obj.double else "single"]
    if isinstance(obj, HalfPlane):
        return ["halfplane", *_line(obj.boundary), str(obj.side)]
    if isinstance(obj, Triangle):
        return ["triangle", *_pt(obj.a), *_pt(obj.b), *_pt(obj.c)]
    if isinstance(obj, Box):
        return ["box", fmt(obj.xmin), fmt(obj.ymin), fmt(obj.xmax), fmt(obj.ymax)]
    raise InstanceFormatError(f"cannot serialize {type(obj).__name__}")


def dumps(inst: Instance) -> str:
    out = [MAGIC, f"problem {inst.problem}"]
    if inst.seed is not None:
        out.append(f"seed {inst.seed}")
    if inst.planted is not None:
        out.append(f"planted {'true' if inst.planted else 'false'}")
    if inst.generator:
        out.append(f"generator {inst.generator}")
    if inst.verified is not None:
        out.append(f"verified {'true' if inst.verified else 'false'}")
    for key in sorted(inst.params):
        out.append(f"param {key} {inst.params[key]}")
    for t in inst.targets:
        out.append("target " + " ".join(_record(t)))
    for o in inst.objects:
        out.append("object " + " ".join(_record(o)))
    out.append("end")
    return "\n".join(out) + "\n"


# --- reading -----------------------------------------------------------------

class _Tokens:
    def __init__(self, toks: list[str], where: str):
        self.toks = toks
        self.i = 0
        self.where = where

    def next(self) -> str:
        if self.i >= len(self.toks):
            raise InstanceFormatError(f"{self.where}: record ends early")
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def scalar(self) -> Fraction:
        tok = self.next()
        try:
            if "/" in tok:
                num, den = tok.split("/")
                if int(den) <= 0:
                    raise ValueError
                return Fraction(int(num), int(den))
            return Fraction(int(tok))
        except ValueError:
            raise InstanceFormatError(f"{self.where}: bad scalar {tok!r}") from None

    def sign(self) -> int:
        tok = self.next()
        if tok not in ("1", "-1", "+1"):
            raise InstanceFormatError(f"{self.where}: bad sign {tok!r}")
        return int(tok)

    def point(self) -> Point:
        return Point(self.scalar(), self.scalar())

    def line(self) -> Line:
        kind = self.next()
        if kind == "y":
            return Line.nonvertical(self.scalar(), self.scalar())
        if kind == "x":
            return Line.vertical_at(self.scalar())
        raise InstanceFormatError(f"{self.where}: line must start with 'y' or 'x', got {kind!r}")

    def done(self) -> None:
        if self.i != len(self.toks):
            raise InstanceFormatError(f"{self.where}: trailing tokens {self.toks[self.i:]}")


def _parse_record(tk: _Tokens):
    kind = tk.next()
    if kind == "int":
        try:
            return int(tk.next())
        except ValueError:
            raise InstanceFormatError(f"{tk.where}: bad integer") from None
    if kind == "line":
        return tk.line()
    if kind == "point":
        return tk.point()
    if kind == "segment":
        return Segment(tk.point(), tk.point())
    if kind == "strip":
        return Strip(tk.line(), tk.line())
    if kind == "angle":
        b1, b2, s1, s2 = tk.line(), tk.line(), tk.sign(), tk.sign()
        d = tk.next()
        if d not in ("single", "double"):
            raise InstanceFormatError(f"{tk.where}: expected single|double, got {d!r}")
        return Angle(b1, b2, s1, s2, d == "double")
    if kind == "halfplane":
        return HalfPlane(tk.line(), tk.sign())
    if kind == "triangle":
        return Triangle(tk.point(), tk.point(), tk.point())
    if kind == "box":
        return Box(tk.scalar(), tk.scalar(), tk.scalar(), tk.scalar())
    raise InstanceFormatError(f"{tk.where}: unknown record kind {kind!r}")


def _bool(tok: str, where: str) -> bool:
    if tok not in ("true", "false"):
        raise InstanceFormatError(f"{where}: expected true|false, got {tok!r}")
    return tok == "true"


def loads(text: str) -> Instance:
    lines = [l.strip() for l in text.splitlines()]
    lines = [l for l in lines if l and not l.startswith("#")]
    if not lines or lines[0] != MAGIC:
        raise InstanceFormatError(f"missing header {MAGIC!r}")
    if lines[-1] != "end":
        raise InstanceFormatError("missing 'end' record")
    head: dict = {}
    objects, targets, params = [], [], {}
    for no, raw in enumerate(lines[1:-1], start=2):
        where = f"record {no}"
        key, _, rest = raw.partition(" ")
        toks = rest.split()
        if key in ("object", "target"):
            tk = _Tokens(toks, where)
            try:
                rec = _parse_record(tk)
            except InstanceFormatError:
                raise
            except ValueError as exc:
                raise InstanceFormatError(f"{where}: {exc}") from None
            tk.done()
            (objects if key == "object" else targets).append(rec)
        elif key == "param":
            if len(toks) != 2:
                raise InstanceFormatError(f"{where}: param needs a name and an integer")
            try:
                params[toks[0]] = int(toks[1])
            except ValueError:
                raise InstanceFormatError(f"{where}: bad integer") from None
        elif key in ("problem", "generator", "seed", "planted", "verified"):
            if len(toks) != 1 or key in head:
                raise InstanceFormatError(f"{where}: malformed or repeated {key!r}")
            head[key] = toks[0]
        else:
            raise InstanceFormatError(f"{where}: unknown record {key!r}")
    if "problem" not in head:
        raise InstanceFormatError("missing 'problem' record")
    try:
        seed = int(head["seed"]) if "seed" in head else None
    except ValueError:
        raise InstanceFormatError("bad seed") from None
    return Instance(
        problem=head["problem"],
        objects=objects,
        targets=targets,
        params=params,
        seed=seed,
        planted=_bool(head["planted"], "planted") if "planted" in head else None,
        generator=head.get("generator", ""),
        verified=_bool(head["verified"], "verified") if "verified" in head else None,
    )


def load(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(inst))


def iter_problems() -> Iterator[str]:
    return iter(PROBLEMS)
