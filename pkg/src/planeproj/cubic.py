"""Weierstrass cubics over GF(p): chord-tangent group law and degree-3 functions.

A degree-3 function with zeros ``z_i`` and poles ``p_i`` is rewritten as
``P -> l1(P + P0) / l2(P + P0)`` where ``3 P0 = -(p_1 + p_2 + p_3)``: the
translated triples then sum to zero, so each lies on a line.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .binary import binary_form_roots, coefficients_in
from .errors import FalsificationError, PreconditionError
from .field import Field
from .points import Point, line_points, line_through, meet
from .poly import HomogPoly


class WeierstrassCurve:
    """``y^2 z = x^3 + a x z^2 + b z^3`` with origin ``[0:1:0]``."""

    def __init__(self, a, b, field: Field):
        if field.characteristic in (2, 3):
            raise PreconditionError("Weierstrass form needs characteristic other than 2 and 3")
        self.field = K = field
        self.a, self.b = K(a), K(b)
        disc = K.add(K.mul(K(4), K.pow(self.a, 3)), K.mul(K(27), K.mul(self.b, self.b)))
        if disc == 0:
            raise PreconditionError("4a^3 + 27b^2 = 0: the cubic is singular")
        self.O = Point((0, 1, 0), K)
        x, y, z = (HomogPoly.variable(K, v) for v in "xyz")
        self.F = y * y * z - x * x * x - (x * z * z).scale(self.a) - (z * z * z).scale(self.b)
        self._points = None

    def __repr__(self) -> str:
        return f"WeierstrassCurve(a={self.a}, b={self.b}, {self.field!r})"

    def rhs(self, x):
        K = self.field
        return K.add(K.add(K.pow(x, 3), K.mul(self.a, x)), self.b)

    def contains(self, P: Point) -> bool:
        return self.F.evaluate(P) == 0

    def point(self, x, y) -> Point:
        K = self.field
        P = Point((K(x), K(y), K.one), K)
        if not self.contains(P):
            raise PreconditionError(f"({x}, {y}) is not on {self}")
        return P

    def affine(self, P: Point):
        if P.coords[2] == 0:
            return None
        K = self.field
        zi = K.inv(P.coords[2])
        return K.mul(P.coords[0], zi), K.mul(P.coords[1], zi)

    def points(self) -> tuple[Point, ...]:
        """``C(F_p)``: the origin first, then affine points by increasing ``x`` then ``y``."""
        if self._points is None:
            K = self.field
            if not K.characteristic:
                raise PreconditionError("point enumeration needs a finite field")
            squares: dict = {}
            for y in K.elements():
                squares.setdefault(K.mul(y, y), []).append(y)
            pts = [self.O]
            for x in K.elements():
                for y in squares.get(self.rhs(x), []):
                    pts.append(Point((x, y, K.one), K))
            self._points = tuple(pts)
        return self._points

    def _check(self, *pts) -> None:
        for P in pts:
            self.field.check_same(P.field)
            if not self.contains(P):
                raise PreconditionError(f"{P} is not on the curve")

    def neg(self, P: Point) -> Point:
        A = self.affine(P)
        if A is None:
            return P
        K = self.field
        return Point((A[0], K.neg(A[1]), K.one), K)

    def add(self, P: Point, Q: Point) -> Point:
        K = self.field
        A, B = self.affine(P), self.affine(Q)
        if A is None:
            return Q
        if B is None:
            return P
        (x1, y1), (x2, y2) = A, B
        if x1 == x2:
            if K.add(y1, y2) == 0:
                return self.O
            lam = K.div(K.add(K.mul(K(3), K.mul(x1, x1)), self.a), K.mul(K(2), y1))
        else:
            lam = K.div(K.sub(y2, y1), K.sub(x2, x1))
        x3 = K.sub(K.sub(K.mul(lam, lam), x1), x2)
        y3 = K.sub(K.mul(lam, K.sub(x1, x3)), y1)
        return Point((x3, y3, K.one), K)

    def mul(self, n: int, P: Point) -> Point:
        if n < 0:
            return self.mul(-n, self.neg(P))
        acc, base = self.O, P
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def sum(self, pts) -> Point:
        acc = self.O
        for P in pts:
            acc = self.add(acc, P)
        return acc

    def tangent(self, P: Point) -> HomogPoly:
        g = [G.evaluate(P) for G in self.F.gradient()]
        return HomogPoly.linear(self.field, *g)


def ec_add(E: WeierstrassCurve, P: Point, Q: Point) -> Point:
    E._check(P, Q)
    return E.add(P, Q)


# -- lines and intersection divisors ----------------------------------------

def intersection_divisor(E: WeierstrassCurve, line: HomogPoly) -> Counter:
    """``line . C`` as a multiset of rational points; raises if some intersection is not rational."""
    K = E.field
    A, B = line_points(line)
    # F(s*A + t*B) as a binary cubic in (s, t)
    M = [[a, b, K.zero] for a, b in zip(A.coords, B.coords)]
    form = coefficients_in(E.F.substitute_linear(M), 2)[0]
    if form.is_zero():
        raise FalsificationError("line is a component of a smooth cubic", {"line": line.to_str()})
    out: Counter = Counter()
    for f in binary_form_roots(form):
        if f.point is None:
            raise PreconditionError(f"line {line.to_str()} meets the curve outside the base field")
        s, t = f.point
        P = Point([K.add(K.mul(s, a), K.mul(t, b)) for a, b in zip(A.coords, B.coords)], K)
        out[P] += f.multiplicity
    return out


def line_for(E: WeierstrassCurve, triple) -> HomogPoly | None:
    """The line cutting out ``triple`` (with tangency for repeats), or ``None``."""
    P, Q, R = triple
    if P != Q:
        L = line_through(P, Q)
    elif P != R:
        L = line_through(P, R)
    else:
        L = E.tangent(P)
    try:
        div = intersection_divisor(E, L)
    except PreconditionError:
        return None
    return L if div == Counter(triple) else None


def points_sum_zero_iff_collinear(E: WeierstrassCurve, P: Point, Q: Point, R: Point) -> tuple[bool, bool]:
    """Group-law and geometric answers, computed separately and required to agree."""
    E._check(P, Q, R)
    sum_zero = E.sum((P, Q, R)) == E.O
    collinear = line_for(E, (P, Q, R)) is not None
    if sum_zero != collinear:
        raise FalsificationError("chord law violated",
                                 {"curve": repr(E), "points": [X.to_str() for X in (P, Q, R)]})
    return sum_zero, collinear


def trisect(E: WeierstrassCurve, S: Point) -> list[Point]:
    """All ``P0`` in ``C(F_p)`` with ``3 P0 = -S`` (the origin first when it qualifies)."""
    E._check(S)
    target = E.neg(S)
    return [P for P in E.points() if E.mul(3, P) == target]


# -- degree-3 functions -----------------------------------------------------

@dataclass(frozen=True)
class ShiftProjection:
    curve: WeierstrassCurve
    P0: Point
    l1: HomogPoly
    l2: HomogPoly
    anchor: Point
    constant: object

    @property
    def center(self) -> Point:
        return meet(self.l1, self.l2)

    def __call__(self, P: Point):
        """``c * l1(P + P0) / l2(P + P0)``, ``None`` at a pole; normalised so the anchor maps to 1."""
        E = self.curve
        K = E.field
        T = E.add(P, self.P0)
        den = self.l2.evaluate(T)
        if den == 0:
            return None
        return K.mul(self.constant, K.div(self.l1.evaluate(T), den))

    def to_json(self) -> dict:
        K = self.curve.field
        return {"P0": self.P0.to_str(), "l1": self.l1.to_str(), "l2": self.l2.to_str(),
                "center": self.center.to_str(), "anchor": self.anchor.to_str(), "constant": K.to_json(self.constant)}


@dataclass(frozen=True)
class Decomposition:
    witness: ShiftProjection
    zeros: tuple[Point, ...]
    poles: tuple[Point, ...]
    Q: tuple[Point, ...]
    R: tuple[Point, ...]
    trisection_choices: int
    checked_points: int

    def to_json(self) -> dict:
        out = self.witness.to_json()
        out.update({
            "zeros": [P.to_str() for P in self.zeros],
            "poles": [P.to_str() for P in self.poles],
            "Q": [P.to_str() for P in self.Q],
            "R": [P.to_str() for P in self.R],
            "trisection_choices": self.trisection_choices,
            "checked_points": self.checked_points,
        })
        return out


def decompose_degree3(E: WeierstrassCurve, zeros, poles, choice: int = 0) -> Decomposition:
    """Write the function with divisor ``zeros - poles`` as a shift followed by a projection."""
    zeros, poles = tuple(zeros), tuple(poles)
    if len(zeros) != 3 or len(poles) != 3:
        raise PreconditionError("need three zeros and three poles")
    E._check(*zeros, *poles)
    if Counter(zeros) == Counter(poles):
        raise PreconditionError("zero and polar divisors coincide")
    if set(zeros) & set(poles):
        raise PreconditionError("zeros and poles share a point")
    if E.sum(zeros) != E.sum(poles):
        raise PreconditionError("zeros and poles do not sum to the same point: not linearly equivalent")
    cands = trisect(E, E.sum(poles))
    if not cands:
        raise PreconditionError("no trisection point over this field; try a larger prime")
    P0 = cands[choice % len(cands)]
    Q = tuple(E.add(p, P0) for p in poles)
    R = tuple(E.add(z, P0) for z in zeros)
    l2, l1 = line_for(E, Q), line_for(E, R)
    if l1 is None or l2 is None:
        raise FalsificationError("translated triple is not a line section",
                                 {"curve": repr(E), "P0": P0.to_str(), "Q": [P.to_str() for P in Q], "R": [P.to_str() for P in R]})
    if l1.is_proportional(l2):
        raise FalsificationError("both triples on one line", {"curve": repr(E), "P0": P0.to_str()})

    K = E.field
    # divisor of the reconstructed function, translated back by -P0
    mP0 = E.neg(P0)
    zero_div = Counter({E.add(P, mP0): m for P, m in intersection_divisor(E, l1).items()})
    pole_div = Counter({E.add(P, mP0): m for P, m in intersection_divisor(E, l2).items()})
    if zero_div != Counter(zeros) or pole_div != Counter(poles):
        raise FalsificationError("reconstructed divisor differs from the input", {"curve": repr(E), "P0": P0.to_str()})
    anchor, constant = None, None
    n = 0
    for P in E.points():
        T = E.add(P, P0)
        v1, v2 = l1.evaluate(T), l2.evaluate(T)
        if (v1 == 0) != (P in zero_div) or (v2 == 0) != (P in pole_div):
            raise FalsificationError("pointwise zero/pole set disagrees", {"curve": repr(E), "point": P.to_str()})
        if anchor is None and v1 != 0 and v2 != 0:
            anchor, constant = P, K.div(v2, v1)
        n += 1
    if anchor is None:
        raise PreconditionError("every rational point is a zero or pole; no anchor for the constant")
    return Decomposition(ShiftProjection(E, P0, l1, l2, anchor, constant), zeros, poles, Q, R, len(cands), n)
