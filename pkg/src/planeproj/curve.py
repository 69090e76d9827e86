"""Plane curves, their linear projections, and the group fixing every line through a center."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from . import upoly
from .binary import (BinaryForm, DegenerateLeadingCoefficient, FormFactor, PencilRestriction,
                     binary_form_roots, coefficients_in, discriminant_wrt, form_resultant,
                     is_squarefree, multiplicity_type, pencil_matrix, restrict_to_pencil)
from .errors import FalsificationError, PreconditionError
from .field import Field
from .linalg import inverse3, mat_mul, mat_vec
from .points import Point, projective_points
from .poly import HomogPoly, monomials


@dataclass(frozen=True)
class PlaneCurve:
    F: HomogPoly

    def __post_init__(self):
        if self.F.is_zero():
            raise ValueError("zero polynomial does not define a curve")
        if self.F.degree < 1:
            raise ValueError("curve degree must be positive")

    @property
    def field(self) -> Field:
        return self.F.field

    @property
    def d(self) -> int:
        return self.F.degree

    @property
    def genus(self) -> int:
        return (self.d - 1) * (self.d - 2) // 2

    def contains(self, P: Point) -> bool:
        return self.F.evaluate(P) == 0

    @cached_property
    def smoothness(self) -> "Smoothness":
        return is_smooth(self)

    @cached_property
    def rational_points(self) -> tuple[Point, ...]:
        return tuple(P for P in projective_points(self.field) if self.F.evaluate(P) == 0)

    def __str__(self) -> str:
        return self.F.to_str()


# -- smoothness -------------------------------------------------------------

SMOOTH, SINGULAR, UNKNOWN = "smooth", "singular", "unknown"


@dataclass(frozen=True)
class Smoothness:
    status: str
    point: Point | None = None
    method: str = ""

    def __bool__(self) -> bool:
        return self.status == SMOOTH

    def to_json(self) -> dict:
        return {"status": self.status, "point": self.point.to_str() if self.point else None, "method": self.method}


def _coordinate_changes(K: Field, seed: int = 0x5EED):
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    yield [[K(v) for v in r] for r in I]
    yield [[K(v) for v in r] for r in ([0, 1, 0], [0, 0, 1], [1, 0, 0])]
    yield [[K(v) for v in r] for r in ([0, 0, 1], [1, 0, 0], [0, 1, 0])]
    rng = random.Random(seed)
    made = 0
    while made < 3:
        if K.characteristic:
            M = [[K(rng.randrange(K.characteristic)) for _ in range(3)] for _ in range(3)]
        else:
            M = [[K(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        try:
            inverse3(K, M)
        except ZeroDivisionError:
            continue
        made += 1
        yield M


def _roots_in_field(K: Field, f: list) -> list:
    if K.characteristic:
        return [a for a, _ in upoly.roots_fp(K, f)]
    return upoly.rational_roots(f)


def _is_singular_at(polys, v) -> bool:
    return all(P.evaluate(v) == 0 for P in polys)


def is_smooth(C: PlaneCurve) -> Smoothness:
    """Decide smoothness.

    Over GF(p) every rational point is scanned first.  Then singular points over
    the algebraic closure are eliminated: in coordinates where ``[0:0:1]`` is
    not singular, every singular point projects to a common root of the
    z-resultants of pairs among ``F, F_x, F_y, F_z``; a constant gcd certifies
    smoothness.  Candidate roots are lifted and checked; if some candidate can
    neither be lifted nor discarded in any coordinate system the answer is
    ``unknown``.
    """
    F = C.F
    K = F.field
    grads = F.gradient()
    polys = (F,) + grads
    if K.characteristic:
        for P in projective_points(K):
            if _is_singular_at(polys, P):
                return Smoothness(SINGULAR, P, "rational scan")
    for T in _coordinate_changes(K):
        G = F.substitute_linear(T)
        gpolys = (G,) + G.gradient()
        origin = (K.zero, K.zero, K.one)
        if _is_singular_at(gpolys, origin):
            return Smoothness(SINGULAR, Point(mat_vec(K, T, origin), K), "elimination")
        coeffs = [coefficients_in(P, 2) for P in gpolys]
        degs = [P.degree for P in gpolys]
        g = None
        pairs = [(1, 2), (1, 3), (2, 3), (0, 1), (0, 2), (0, 3)]
        for a, b in pairs:
            if gpolys[a].is_zero() or gpolys[b].is_zero():
                continue
            R = form_resultant(coeffs[a], coeffs[b], degs[a] * degs[b])
            if R.is_zero():
                continue
            g = R if g is None else _form_gcd(g, R)
            if g.degree == 0:
                break
        if g is None:
            continue
        if g.degree == 0:
            return Smoothness(SMOOTH, None, "elimination")
        point = _lift(K, g, gpolys)
        if point is not None:
            return Smoothness(SINGULAR, Point(mat_vec(K, T, point), K), "elimination")
    return Smoothness(UNKNOWN, None, "elimination inconclusive")


def _form_gcd(A: BinaryForm, B: BinaryForm) -> BinaryForm:
    """gcd of binary forms (the factor t is tracked through the degree drop)."""
    K = A.field
    fa, fb = A.upoly(), B.upoly()
    g = upoly.gcd(K, fa, fb)
    inf = min(A.degree - upoly.deg(fa), B.degree - upoly.deg(fb))
    return BinaryForm(K, upoly.deg(g) + inf, g)


def _lift(K: Field, g: BinaryForm, gpolys):
    f = g.upoly()
    cands = [(a, K.one) for a in _roots_in_field(K, f)] if upoly.deg(f) > 0 else []
    if g.degree > upoly.deg(f):
        cands.append((K.one, K.zero))
    for a, b in cands:
        unis = []
        for P in gpolys:
            unis.append(upoly.trim([c.evaluate(a, b) for c in coefficients_in(P, 2)]))
        h = []
        for u in unis:
            h = upoly.gcd(K, h, u)
        if not h:
            v = (a, b, K.zero)
            if _is_singular_at(gpolys, v):
                return v
            continue
        for z in _roots_in_field(K, h) if upoly.deg(h) > 0 else []:
            v = (a, b, z)
            if _is_singular_at(gpolys, v):
                return v
    return None


def random_curve(K: Field, d: int, rng: random.Random, smooth: bool = True, max_tries: int = 200) -> PlaneCurve:
    """A random curve of degree ``d``; with ``smooth`` set, rejection-sampled until certified smooth."""
    for _ in range(max_tries):
        if K.characteristic:
            vec = [rng.randrange(K.characteristic) for _ in monomials(d)]
        else:
            vec = [rng.randint(-5, 5) for _ in monomials(d)]
        F = HomogPoly.from_vector(K, d, vec)
        if F.is_zero():
            continue
        C = PlaneCurve(F)
        if not smooth or C.smoothness.status == SMOOTH:
            return C
    raise RuntimeError("no smooth curve found")


# -- projections ------------------------------------------------------------

@dataclass(frozen=True)
class BranchDivisor:
    center: Point
    degree: int
    discriminant: BinaryForm
    factors: tuple[FormFactor, ...]
    fiber_types: dict = dc_field(compare=False)
    restriction: PencilRestriction = dc_field(compare=False, repr=False)

    @property
    def total(self) -> int:
        return sum(f.slots for f in self.factors)

    @property
    def split_points(self) -> list[tuple[tuple, int]]:
        return [(f.point, f.multiplicity) for f in self.factors if f.point is not None]

    @property
    def simple_count(self) -> int:
        return sum(1 for f in self.factors if f.point is not None and f.multiplicity == 1)

    def to_json(self) -> dict:
        K = self.center.field
        rows = []
        for f in self.factors:
            row = {"multiplicity": f.multiplicity, "degree": f.factor.degree,
                   "factor": f.factor.to_str()}
            if f.point is not None:
                row["point"] = "[" + ":".join(K.to_str(c) for c in f.point) + "]"
                row["fiber_type"] = list(self.fiber_types[f.point])
            rows.append(row)
        return {
            "center": self.center.to_str(),
            "degree": self.degree,
            "discriminant": self.discriminant.to_str(),
            "total": self.total,
            "simple_count": self.simple_count,
            "roots": rows,
            "pencil_matrix": [[K.to_json(v) for v in r] for r in self.restriction.matrix],
            "pencil_convention": "parameter [s:t] is the line through the center and M*(s,0,t)",
        }


def _require_center(C: PlaneCurve, p: Point, check_smooth: bool) -> None:
    C.field.check_same(p.field)
    if C.F.evaluate(p) == 0:
        raise PreconditionError(f"center {p} lies on the curve")
    if check_smooth:
        s = C.smoothness
        if s.status == SINGULAR:
            raise PreconditionError(f"curve is singular at {s.point}")
        if s.status == UNKNOWN:
            raise PreconditionError("smoothness could not be certified")


def project_branch_divisor(C: PlaneCurve, p: Point, check_smooth: bool = True) -> BranchDivisor:
    """Branch data of the projection from ``p``: discriminant roots with multiplicities and fiber types."""
    _require_center(C, p, check_smooth)
    r = restrict_to_pencil(C.F, p)
    try:
        disc = discriminant_wrt(r.y_coeffs)
    except DegenerateLeadingCoefficient as exc:
        raise PreconditionError(str(exc)) from None
    if disc.is_zero():
        raise PreconditionError("discriminant vanishes identically (inseparable projection)")
    factors = tuple(binary_form_roots(disc))
    K = C.field
    fibers = {}
    for f in factors:
        if f.point is not None:
            fibers[f.point] = multiplicity_type(K, r.fiber_polynomial(*f.point))
    bd = BranchDivisor(p, C.d, disc, factors, fibers, r)
    if bd.total != C.d * (C.d - 1):
        raise FalsificationError("branch divisor degree differs from d(d-1)",
                                 {"curve": C.F.to_str(), "center": p.to_str()})
    return bd


def is_generic_center(C: PlaneCurve, p: Point, check_smooth: bool = True) -> bool:
    """Only simple branch points: squarefree discriminant and every split fiber of type (2,1,...,1)."""
    bd = project_branch_divisor(C, p, check_smooth)
    simple = (2,) + (1,) * (C.d - 2)
    return is_squarefree(bd.discriminant) and all(t == simple for t in bd.fiber_types.values())


def riemann_hurwitz_w(d: int) -> int:
    """Number of simple branch points of a generic projection of a smooth degree-``d`` curve."""
    if d < 1:
        raise PreconditionError("degree must be positive")
    g = (d - 1) * (d - 2) // 2
    w = 2 * g + 2 * d - 2
    assert w == d * (d - 1)
    return w


# -- the group fixing each line through the center --------------------------

@dataclass(frozen=True)
class GpElement:
    """``[[g0,0,0],[g1,g2,g3],[0,0,g0]]`` in pencil coordinates of ``center``, conjugated back."""

    g0: object
    g1: object
    g2: object
    g3: object
    center: Point

    def __post_init__(self):
        K = self.center.field
        for name in ("g0", "g1", "g2", "g3"):
            object.__setattr__(self, name, K(getattr(self, name)))
        if K.mul(self.g0, self.g2) == 0:
            raise PreconditionError("g0*g2 must be nonzero")

    @classmethod
    def identity(cls, center: Point) -> "GpElement":
        return cls(1, 0, 1, 0, center)

    @property
    def field(self) -> Field:
        return self.center.field

    def local_matrix(self) -> list[list]:
        K = self.field
        z = K.zero
        return [[self.g0, z, z], [self.g1, self.g2, self.g3], [z, z, self.g0]]

    def matrix(self) -> list[list]:
        """The transformation in the original coordinates."""
        K = self.field
        M = pencil_matrix(self.center)
        return mat_mul(K, mat_mul(K, M, self.local_matrix()), inverse3(K, M))

    def __mul__(self, other: "GpElement") -> "GpElement":
        if other.center != self.center:
            raise ValueError("elements fix different centers")
        K = self.field
        g0 = K.mul(self.g0, other.g0)
        g1 = K.add(K.mul(self.g1, other.g0), K.mul(self.g2, other.g1))
        g2 = K.mul(self.g2, other.g2)
        g3 = K.add(K.mul(self.g2, other.g3), K.mul(self.g3, other.g0))
        return GpElement(g0, g1, g2, g3, self.center)

    def normalized(self) -> "GpElement":
        K = self.field
        inv = K.inv(self.g0)
        return GpElement(K.one, K.mul(self.g1, inv), K.mul(self.g2, inv), K.mul(self.g3, inv), self.center)

    def apply_point(self, P: Point) -> Point:
        return Point(mat_vec(self.field, self.matrix(), P.coords), self.field)

    def to_json(self) -> dict:
        K = self.field
        return {"g": [K.to_json(v) for v in (self.g0, self.g1, self.g2, self.g3)], "center": self.center.to_str()}


def gp_apply(g: GpElement, C: PlaneCurve) -> PlaneCurve:
    """The image curve ``g(C)``, cut out by ``F o g^{-1}``."""
    g.field.check_same(C.field)
    K = C.field
    return PlaneCurve(C.F.substitute_linear(inverse3(K, g.matrix())))


def projections_equivalent(C1: PlaneCurve, C2: PlaneCurve, p: Point, max_field: int = 31) -> GpElement | None:
    """Search the group for ``g`` with ``g(C1) = C2``; ``None`` if the projections are inequivalent."""
    K = C1.field
    K.check_same(C2.field)
    if not K.characteristic:
        raise PreconditionError("exhaustive search needs a finite field; use gp_apply to verify over QQ")
    q = K.characteristic
    if q > max_field:
        raise PreconditionError(f"field GF({q}) exceeds search cap {max_field}")
    if C1.d != C2.d:
        return None
    for C in (C1, C2):
        if C.F.evaluate(p) == 0:
            raise PreconditionError(f"center {p} lies on the curve")
    r1 = restrict_to_pencil(C1.F, p)
    r2 = restrict_to_pencil(C2.F, p)
    if not discriminant_wrt(r1.y_coeffs).is_proportional(discriminant_wrt(r2.y_coeffs)):
        return None
    G1, G2 = r1.transformed, r2.transformed
    one, zero = K.one, K.zero
    for g2 in range(1, q):
        for g1 in range(q):
            for g3 in range(q):
                A = [[one, zero, zero], [g1, g2, g3], [zero, zero, one]]
                if G2.substitute_linear(A).is_proportional(G1):
                    g = GpElement(1, g1, g2, g3, p)
                    if not gp_apply(g, C1).F.is_proportional(C2.F):
                        raise FalsificationError("search witness does not map C1 to C2",
                                                 {"C1": C1.F.to_str(), "C2": C2.F.to_str(), "g": g.to_json()})
                    return g
    return None
