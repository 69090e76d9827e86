"""Points of the projective plane and lines through them."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Sequence

from .field import QQ, Field, GF
from .poly import HomogPoly, ParseError, split_modulus


class Point:
    """A point ``[a:b:c]`` stored with its first nonzero coordinate equal to 1."""

    __slots__ = ("field", "coords")

    def __init__(self, coords: Sequence, field: Field = QQ):
        if len(coords) != 3:
            raise ValueError("a plane point needs three coordinates")
        vals = [field(c) for c in coords]
        for i, v in enumerate(vals):
            if v != 0:
                inv = field.inv(v)
                vals = [field.mul(u, inv) for u in vals]
                break
        else:
            raise ValueError("[0:0:0] is not a projective point")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Point) and self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __lt__(self, other: "Point") -> bool:
        return self.coords < other.coords

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self) -> str:
        return f"Point({self.to_str()}, {self.field!r})"

    def to_str(self) -> str:
        return "[" + ":".join(self.field.to_str(c) for c in self.coords) + "]"

    __str__ = to_str


_POINT_RE = re.compile(r"^\s*\[\s*([^:\]]+):([^:\]]+):([^:\]]+)\]\s*$")


def parse_point(text: str, field: Field | None = None) -> Point:
    body, p = split_modulus(text)
    if field is None:
        field = GF(p) if p is not None else QQ
    m = _POINT_RE.match(body)
    if not m:
        raise ParseError("expected a point like [a:b:c]", text, 0)
    try:
        coords = [field(Fraction(g.strip())) for g in m.groups()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coordinate ({exc})", text, m.start(1)) from None
    try:
        return Point(coords, field)
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from None


def cross(K: Field, u: Sequence, v: Sequence) -> tuple:
    return (
        K.sub(K.mul(u[1], v[2]), K.mul(u[2], v[1])),
        K.sub(K.mul(u[2], v[0]), K.mul(u[0], v[2])),
        K.sub(K.mul(u[0], v[1]), K.mul(u[1], v[0])),
    )


def det3(K: Field, rows: Sequence[Sequence]) -> object:
    a, b, c = rows
    return K.add(
        K.sub(K.mul(a[0], K.mul(b[1], c[2])), K.mul(a[0], K.mul(b[2], c[1]))),
        K.add(
            K.sub(K.mul(a[1], K.mul(b[2], c[0])), K.mul(a[1], K.mul(b[0], c[2]))),
            K.sub(K.mul(a[2], K.mul(b[0], c[1])), K.mul(a[2], K.mul(b[1], c[0]))),
        ),
    )


def collinear(P: Point, Q: Point, R: Point) -> bool:
    return det3(P.field, (P.coords, Q.coords, R.coords)) == 0


def line_through(P: Point, Q: Point) -> HomogPoly:
    """The line joining two distinct points, scaled so its first nonzero coefficient is 1."""
    if P == Q:
        raise ValueError("line through a single point is undetermined")
    K = P.field
    a, b, c = cross(K, P.coords, Q.coords)
    return HomogPoly.linear(K, a, b, c).normalized()


def line_coeffs(line: HomogPoly) -> tuple:
    K = line.field
    return tuple(line.coeffs.get(e, K.zero) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def meet(l1: HomogPoly, l2: HomogPoly) -> Point:
    """Intersection point of two distinct lines."""
    K = l1.field
    v = cross(K, line_coeffs(l1), line_coeffs(l2))
    if all(c == 0 for c in v):
        raise ValueError("lines coincide")
    return Point(v, K)


def on_line(line: HomogPoly, P: Point) -> bool:
    return line.evaluate(P) == 0


def projective_points(K: Field) -> Iterator[Point]:
    """All points of the projective plane over a finite field, in a fixed order."""
    q = K.characteristic
    if not q:
        raise ValueError("point enumeration needs a finite field")
    for a in range(q):
        for b in range(q):
            yield Point((1, a, b), K)
    for a in range(q):
        yield Point((0, 1, a), K)
    yield Point((0, 0, 1), K)


def projective_lines(K: Field) -> Iterator[HomogPoly]:
    for P in projective_points(K):
        yield HomogPoly.linear(K, *P.coords)


def line_points(line: HomogPoly) -> tuple[Point, Point]:
    """Two distinct points spanning ``line``."""
    K = line.field
    a, b, c = line_coeffs(line)
    cands = [(K.zero, c, K.neg(b)), (c, K.zero, K.neg(a)), (b, K.neg(a), K.zero)]
    pts = []
    for v in cands:
        if any(t != 0 for t in v):
            P = Point(v, K)
            if P not in pts:
                pts.append(P)
    return pts[0], pts[1]
