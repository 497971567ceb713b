"""Finite lattice-point sets in Z^r and the polygon families used to build codes."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import InvalidFamilyParams, NonConvex, NotInsideH, RankMismatch, SizeOverflow

MAX_POINTS = 2**22


@dataclass(frozen=True)
class PointSet:
    """Deduplicated, lexicographically sorted set of integer r-tuples."""

    rank: int
    points: tuple[tuple[int, ...], ...]

    def __init__(self, rank: int, points: Iterable[Sequence[int]] = ()):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        pts = {tuple(int(c) for c in pt) for pt in points}
        for pt in pts:
            if len(pt) != rank:
                raise RankMismatch(f"point {pt} does not have length {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "points", tuple(sorted(pts)))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt):
        return tuple(pt) in set(self.points)

    def to_json(self) -> dict:
        return {"rank": self.rank, "points": [list(pt) for pt in self.points]}

    @classmethod
    def from_json(cls, data) -> "PointSet":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["rank"]), data["points"])

    def __repr__(self):
        return f"PointSet(rank={self.rank}, n={len(self)})"


def _check_size(n: int, cap: int = MAX_POINTS):
    if n > cap:
        raise SizeOverflow(f"{n} points exceeds the cap of {cap}")


def hypercube(q: int, rank: int, cap: int = MAX_POINTS) -> PointSet:
    """All exponent vectors with entries in ``{0, ..., q-2}``."""
    if q < 3 or rank < 1:
        raise ValueError("hypercube needs q >= 3 and rank >= 1")
    _check_size((q - 1) ** rank, cap)
    return PointSet(rank, itertools.product(range(q - 1), repeat=rank))


def translate(U: PointSet, v: Sequence[int]) -> PointSet:
    if len(v) != U.rank:
        raise RankMismatch(f"vector of length {len(v)} against rank {U.rank}")
    return PointSet(U.rank, (tuple(a + b for a, b in zip(u, v)) for u in U))


def negate(U: PointSet) -> PointSet:
    return PointSet(U.rank, (tuple(-a for a in u) for u in U))


def reduce_mod(U: PointSet, q: int) -> PointSet:
    """Reduce every coordinate into ``{0, ..., q-2}``; duplicates merge."""
    if q < 3:
        raise ValueError("reduction needs q >= 3")
    m = q - 1
    return PointSet(U.rank, (tuple(a % m for a in u) for u in U))


def minkowski_sum(U: PointSet, W: PointSet, cap: int = MAX_POINTS) -> PointSet:
    if U.rank != W.rank:
        raise RankMismatch(f"ranks {U.rank} and {W.rank} differ")
    _check_size(len(U) * len(W), cap)
    return PointSet(U.rank, (tuple(a + b for a, b in zip(u, w)) for u in U for w in W))


def is_inside_h(U: PointSet, q: int) -> bool:
    return all(0 <= a <= q - 2 for u in U for a in u)


def dual_support(U: PointSet, q: int) -> PointSet:
    """Reduced representatives of ``-H \\ -U``.

    The exponent set whose evaluation code is the dual of the code of ``U``
    on the full torus.
    """
    if not is_inside_h(U, q):
        raise NotInsideH("dual_support expects U inside the hypercube H")
    H = hypercube(q, U.rank)
    neg_u = set(negate(U).points)
    rest = (pt for pt in negate(H).points if pt not in neg_u)
    return reduce_mod(PointSet(U.rank, rest), q)


# polygon families

@dataclass(frozen=True)
class Hirzebruch:
    d: int
    e: int
    twist: int

    def vertices(self):
        d, e, t = self.d, self.e, self.twist
        return [(0, 0), (d, 0), (d, e + t * d), (0, e)]

    def validate(self):
        if min(self.d, self.e, self.twist) < 1:
            raise InvalidFamilyParams("Hirzebruch parameters must be positive integers")


@dataclass(frozen=True)
class Trapezoid:
    a: int
    b: int
    q: int

    def vertices(self):
        return [(0, 0), (self.a, 0), (self.b, self.q - 2), (0, self.q - 2)]

    def validate(self):
        if self.q < 3 or not 0 <= self.b <= self.a <= self.q - 2:
            raise InvalidFamilyParams(
                f"trapezoid needs 0 <= b <= a <= q-2, got a={self.a}, b={self.b}, q={self.q}"
            )


@dataclass(frozen=True)
class Hypercube:
    q: int
    rank: int = 2

    def validate(self):
        if self.q < 3 or self.rank < 1:
            raise InvalidFamilyParams("hypercube needs q >= 3 and rank >= 1")


@dataclass(frozen=True)
class Explicit:
    vertices_: tuple[tuple[int, int], ...]

    def vertices(self):
        return list(self.vertices_)

    def validate(self):
        if not self.vertices_:
            raise InvalidFamilyParams("explicit polygon needs at least one vertex")


PolytopeFamily = Union[Hirzebruch, Trapezoid, Hypercube, Explicit]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_order(vertices):
    """Counterclockwise vertex order with collinear vertices dropped.

    Raises NonConvex if some given vertex is not a corner or edge point of
    the convex hull of the others.
    """
    pts = sorted(set((int(x), int(y)) for x, y in vertices))
    if len(pts) <= 2:
        return pts
    # monotone chain hull, dropping collinear points
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return [pts[0], pts[-1]]
    for p in pts:
        if p in hull:
            continue
        on_edge = any(
            _cross(hull[i], hull[(i + 1) % len(hull)], p) == 0 for i in range(len(hull))
        )
        if not on_edge:
            raise NonConvex(f"vertex {p} lies inside the polygon")
    return hull


def polygon_lattice_points(vertices, cap: int = MAX_POINTS) -> PointSet:
    """Integer points of the closed convex polygon spanned by ``vertices``.

    Vertices may come in any order; segments and single points are allowed.
    """
    hull = _convex_order(vertices)
    if not hull:
        raise NonConvex("empty vertex list")
    if len(hull) == 1:
        return PointSet(2, hull)
    if len(hull) == 2:
        (x0, y0), (x1, y1) = hull
        g = gcd(x1 - x0, y1 - y0)
        dx, dy = (x1 - x0) // g, (y1 - y0) // g
        return PointSet(2, [(x0 + i * dx, y0 + i * dy) for i in range(g + 1)])
    xs = [v[0] for v in hull]
    ys = [v[1] for v in hull]
    _check_size((max(xs) - min(xs) + 1) * (max(ys) - min(ys) + 1), cap)
    edges = [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]
    pts = [
        (x, y)
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
        if all(_cross(a, b, (x, y)) >= 0 for a, b in edges)
    ]
    return PointSet(2, pts)


def family_points(f: PolytopeFamily) -> PointSet:
    f.validate()
    if isinstance(f, Hypercube):
        return hypercube(f.q, f.rank)
    return polygon_lattice_points(f.vertices())


def hirzebruch_count(d: int, e: int, twist: int) -> int:
    return (d + 1) * (e + 1) + twist * d * (d + 1) // 2
