"""Vectorised exact integer predicates.

Arrays hold integer homogeneous data.  ``int64`` is used when a magnitude
bound proves every intermediate fits; otherwise the arrays fall back to
``dtype=object`` (Python ints), which is slower but still exact.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .geometry import Line, Point

_LIMIT = 1 << 62


def _maxabs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(v)) for v in arr.ravel())
    return int(np.abs(arr).max())


def _as_array(rows: Iterable[tuple[int, int, int]]) -> np.ndarray:
    rows = list(rows)
    if not rows:
        return np.zeros((0, 3), dtype=np.int64)
    m = max(max(abs(a), abs(b), abs(c)) for a, b, c in rows)
    if m < _LIMIT:
        return np.array(rows, dtype=np.int64)
    out = np.empty((len(rows), 3), dtype=object)
    for i, r in enumerate(rows):
        out[i] = r
    return out


def line_array(lines: Sequence[Line]) -> np.ndarray:
    return _as_array(l.coeffs for l in lines)


def point_array(points: Sequence[Point]) -> np.ndarray:
    return _as_array(p.hom for p in points)


def _common(*arrays: np.ndarray, bound: int) -> tuple[np.ndarray, ...]:
    if bound < _LIMIT and all(a.dtype != object for a in arrays):
        return tuple(a.astype(np.int64, copy=False) for a in arrays)
    return tuple(a.astype(object) for a in arrays)


def evaluate(lines: np.ndarray, points: np.ndarray) -> np.ndarray:
    """``A*X + B*Y + C*W`` for every (line, point) pair, shape ``(n, m)``."""
    bound = 3 * _maxabs(lines) * _maxabs(points)
    L, P = _common(lines, points, bound=bound)
    if L.dtype == object:
        return np.dot(L, P.T)
    # broadcasting beats numpy's non-BLAS integer matmul by a wide margin
    return L[:, 0:1] * P[:, 0] + L[:, 1:2] * P[:, 1] + L[:, 2:3] * P[:, 2]


# forward error of a 3-term float dot product, with slack for input rounding;
# rows are scaled by powers of two so every entry is below 1 in magnitude,
# which caps the error of any product at a single constant
_GAMMA = 8 * 2.0 ** -53
_TOL = 3 * _GAMMA
_FLOAT_SAFE = 1e300


def _row_dots(L: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Exact ``L[i] . P[i]`` for paired rows."""
    bound = 3 * _maxabs(L) * _maxabs(P)
    a, b = _common(L, P, bound=bound)
    return (a * b).sum(axis=1)


def _unit_rows(arr: np.ndarray) -> np.ndarray:
    f = arr.astype(np.float64)
    _, e = np.frexp(np.abs(f).max(axis=1))
    return np.ldexp(f, -e[:, None])


class PointBlock:
    """Homogeneous points prepared once for repeated sign queries."""

    def __init__(self, points: np.ndarray):
        self.points = points
        self.maxabs = _maxabs(points)
        self.fast = self.maxabs <= _FLOAT_SAFE
        if self.fast and points.shape[0]:
            self.pf = _unit_rows(points)

    def _masks(self, lines: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """``sign > 0`` and ``sign < 0`` masks, vertex-major ``(len(points), len(lines))``."""
        points = self.points
        if not self.fast or _maxabs(lines) > _FLOAT_SAFE:
            v = evaluate(lines, points).T
            return v > 0, v < 0
        v = self.pf @ _unit_rows(lines).T
        pos, neg = v > _TOL, v < -_TOL
        if np.count_nonzero(pos) + np.count_nonzero(neg) != v.size:
            r, c = np.nonzero(~(pos | neg))
            exact = _row_dots(lines[c], points[r])
            pos[r, c], neg[r, c] = exact > 0, exact < 0
        return pos, neg

    def signs(self, lines: np.ndarray) -> np.ndarray:
        """Exact sign matrix as ``int8``, shape ``(len(lines), len(points))``;
        points must carry ``W > 0``.

        Float64 decides entries clear of the error bound; the rest are
        recomputed in integer arithmetic.
        """
        if lines.shape[0] == 0 or self.points.shape[0] == 0:
            return np.zeros((lines.shape[0], self.points.shape[0]), dtype=np.int8)
        pos, neg = self._masks(lines)
        return (pos.astype(np.int8) - neg.astype(np.int8)).T

    def sign_bits(self, lines: np.ndarray, chunk: int = 1 << 24) -> tuple[np.ndarray, np.ndarray]:
        """Bit-packed ``sign > 0`` and ``sign < 0`` masks, each of shape
        ``(len(points), ceil(len(lines) / 8))``; padding bits are zero."""
        n, V = lines.shape[0], self.points.shape[0]
        if n == 0 or V == 0:
            empty = np.zeros((V, (n + 7) // 8), dtype=np.uint8)
            return empty, empty.copy()
        step = max(8, (chunk // V) // 8 * 8)
        pos, neg = [], []
        for start in range(0, n, step):
            p, q = self._masks(lines[start:start + step])
            pos.append(np.packbits(p, axis=1))
            neg.append(np.packbits(q, axis=1))
        return np.concatenate(pos, axis=1), np.concatenate(neg, axis=1)


def signs(lines: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Exact sign matrix, shape ``(len(lines), len(points))``."""
    return PointBlock(points).signs(lines)


def cross_rows(L1: np.ndarray, L2: np.ndarray) -> np.ndarray:
    """Row-wise homogeneous intersection ``L1 x L2`` (W may be zero or negative)."""
    bound = 2 * _maxabs(L1) * _maxabs(L2)
    a, b = _common(L1, L2, bound=bound)
    X = a[:, 1] * b[:, 2] - b[:, 1] * a[:, 2]
    Y = a[:, 2] * b[:, 0] - b[:, 2] * a[:, 0]
    W = a[:, 0] * b[:, 1] - b[:, 0] * a[:, 1]
    return np.stack([X, Y, W], axis=1)


def normalize(P: np.ndarray) -> np.ndarray:
    """Canonical homogeneous rows: ``W > 0`` and ``gcd(X, Y, W) = 1``.

    Rows with ``W == 0`` are returned unchanged.
    """
    if P.shape[0] == 0:
        return P
    if P.dtype == object:
        from math import gcd

        out = P.copy()
        for i in range(out.shape[0]):
            X, Y, W = (int(v) for v in out[i])
            if W == 0:
                continue
            if W < 0:
                X, Y, W = -X, -Y, -W
            g = gcd(gcd(X, Y), W)
            out[i] = (X // g, Y // g, W // g)
        return out
    P = P.copy()
    neg = P[:, 2] < 0
    P[neg] = -P[neg]
    g = np.gcd(np.gcd(P[:, 0], P[:, 1]), P[:, 2])
    g[g == 0] = 1
    return P // g[:, None]


def rows_to_keys(P: np.ndarray) -> list[tuple[int, int, int]]:
    return [tuple(int(v) for v in row) for row in P]


def duplicate_groups(keys: np.ndarray) -> list[np.ndarray]:
    """Index groups of identical rows (size >= 2) in a 2-d integer array."""
    n = keys.shape[0]
    if n < 2:
        return []
    if keys.dtype == object:
        seen: dict[tuple, list[int]] = {}
        for i, row in enumerate(keys):
            seen.setdefault(tuple(int(v) for v in row), []).append(i)
        return [np.array(v) for v in seen.values() if len(v) >= 2]
    # sort on a wrapping 64-bit hash, then confirm runs row by row
    mult = np.array([0x9E3779B97F4A7C15, 0xC2B2AE3D27D4EB4F, 0x165667B19E3779F9, 0x27D4EB2F165667C5],
                    dtype=np.uint64)[: keys.shape[1]]
    with np.errstate(over="ignore"):
        h = (keys.astype(np.uint64) * mult).sum(axis=1, dtype=np.uint64)
    order = np.argsort(h, kind="stable")
    hs = h[order]
    cand = np.flatnonzero(hs[1:] == hs[:-1])
    if cand.size == 0:
        return []
    seen: dict[tuple, list[int]] = {}
    for pos in np.unique(np.concatenate((cand, cand + 1))):
        i = int(order[pos])
        seen.setdefault(tuple(int(v) for v in keys[i]), []).append(i)
    return [np.array(sorted(v)) for v in seen.values() if len(v) >= 2]


def _exact_int(v) -> int:
    return int(v)


def same_point_groups(owner: np.ndarray, pts: np.ndarray, along_y: np.ndarray) -> list[np.ndarray]:
    """Groups (size >= 2) of rows with equal ``owner`` and equal projective point.

    Every row's point lies on its owner's line, so one affine coordinate
    identifies it: ``x`` normally, ``y`` where ``along_y`` is set (vertical
    owner lines).  Rows are bucketed by a float key and confirmed exactly
    by cross-multiplication.  All ``W`` must be non-zero.
    """
    m = pts.shape[0]
    if m < 2:
        return []
    num = np.where(along_y, pts[:, 1], pts[:, 0])
    den = pts[:, 2]
    key = num.astype(np.float64) / den.astype(np.float64)
    # two-pass stable sort; much faster than lexsort on mixed dtypes
    order = np.argsort(key, kind="quicksort")
    order = order[np.argsort(owner[order], kind="stable")]
    k_s, o_s = key[order], owner[order]
    tol = 1e-12 * np.maximum(np.abs(k_s[1:]), np.abs(k_s[:-1])) + 1e-300
    near = np.flatnonzero((o_s[1:] == o_s[:-1]) & (np.abs(k_s[1:] - k_s[:-1]) <= tol))
    if near.size == 0:
        return []
    # union adjacent confirmed pairs into runs
    groups: list[list[int]] = []
    last = -2
    for p in near:
        a, b = int(order[p]), int(order[p + 1])
        if _exact_int(num[a]) * _exact_int(den[b]) != _exact_int(num[b]) * _exact_int(den[a]):
            last = -2
            continue
        if p == last + 1 and groups:
            groups[-1].append(b)
        else:
            groups.append([a, b])
        last = p
    return [np.array(sorted(g)) for g in groups]
