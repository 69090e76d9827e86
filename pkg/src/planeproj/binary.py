"""Binary forms, restriction of a plane curve to the pencil through a point, and discriminants.

Pencil convention.  For a center ``p`` we build the matrix ``M`` whose middle
column is ``p`` and whose outer columns are the two standard basis vectors
other than ``e_k``, where ``k`` is the first nonzero coordinate of ``p``.  In
the coordinates ``G = F o M`` the center is ``[0:1:0]`` and the pencil line
with parameter ``[s:t]`` is ``{x*t = z*s}``; it is the line through ``p`` and
``M (s, 0, t)`` in the original coordinates.

Discriminant convention.  ``disc(f) = (-1)**(n(n-1)/2) * Res(f, f') / lc(f)``
with ``f'`` taken at formal degree ``n - 1``; for ``y**2 - x*z`` this is
``4*x*z`` and for ``y**3 + c`` it is ``-27*c**2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import upoly
from .field import Field
from .linalg import det
from .points import Point
from .poly import HomogPoly


class BinaryForm:
    """A form ``sum_i c[i] * s**i * t**(degree - i)`` of a declared degree."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: Field, degree: int, coeffs: Sequence):
        coeffs = [field(c) for c in coeffs]
        if len(coeffs) > degree + 1:
            if any(c != 0 for c in coeffs[degree + 1:]):
                raise ValueError("coefficient beyond declared degree")
            coeffs = coeffs[: degree + 1]
        coeffs += [field.zero] * (degree + 1 - len(coeffs))
        self.field = field
        self.degree = degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_upoly(cls, field: Field, f: list, degree: int) -> "BinaryForm":
        if upoly.deg(f) > degree:
            raise ValueError("polynomial degree exceeds form degree")
        return cls(field, degree, f)

    def upoly(self) -> list:
        """Dehomogenisation ``B(s, 1)``."""
        return upoly.trim(list(self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, BinaryForm) and self.field == other.field
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.degree, self.coeffs))

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        K = self.field
        return BinaryForm(K, self.degree + other.degree, upoly.mul(K, self.upoly(), other.upoly()))

    def scale(self, c) -> "BinaryForm":
        K = self.field
        return BinaryForm(K, self.degree, [K.mul(a, c) for a in self.coeffs])

    def evaluate(self, s, t):
        K = self.field
        n = self.degree
        sp, tp = [K.one], [K.one]
        for _ in range(n):
            sp.append(K.mul(sp[-1], s))
            tp.append(K.mul(tp[-1], t))
        acc = K.zero
        for i, c in enumerate(self.coeffs):
            if c != 0:
                acc = K.add(acc, K.mul(c, K.mul(sp[i], tp[n - i])))
        return acc

    def is_proportional(self, other: "BinaryForm") -> bool:
        K = self.field
        if self.degree != other.degree:
            return False
        i0 = next((i for i, c in enumerate(self.coeffs) if c != 0), None)
        if i0 is None:
            return other.is_zero()
        a0, b0 = self.coeffs[i0], other.coeffs[i0]
        if b0 == 0:
            return False
        return all(K.mul(a, b0) == K.mul(b, a0) for a, b in zip(self.coeffs, other.coeffs))

    def monic(self) -> "BinaryForm":
        """Scaled so the first nonzero coefficient from the top is 1."""
        K = self.field
        for c in reversed(self.coeffs):
            if c != 0:
                return self.scale(K.inv(c))
        return self

    def to_str(self, names: tuple[str, str] = ("s", "t")) -> str:
        K = self.field
        n = self.degree
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c != 0:
                terms[(i, 0, n - i)] = c
        if not terms:
            return "0"
        text = HomogPoly(K, n, terms).to_str()
        return text.replace("x", names[0]).replace("z", names[1])

    def __repr__(self) -> str:
        return f"BinaryForm({self.to_str()!r}, {self.field!r})"


def coefficients_in(F: HomogPoly, var: int) -> list[BinaryForm]:
    """Write ``F`` as ``sum_k c_k * var**k``; the other two variables (in order) become ``(s, t)``.

    Returns ``[c_0, ..., c_d]`` with ``c_k`` of degree ``d - k`` (``d`` = total degree).
    """
    K = F.field
    d = F.degree
    rest = [i for i in range(3) if i != var]
    out = [[K.zero] * (d - k + 1) for k in range(d + 1)]
    for e, c in F.coeffs.items():
        k = e[var]
        out[k][e[rest[0]]] = c
    return [BinaryForm(K, d - k, out[k]) for k in range(d + 1)]


def pencil_matrix(p: Point) -> list[list]:
    """Coordinate change ``M`` with ``M e_2 = p`` (see the module docstring)."""
    K = p.field
    k = next(i for i, c in enumerate(p.coords) if c != 0)
    others = [i for i in range(3) if i != k]
    cols = [_unit(K, others[0]), list(p.coords), _unit(K, others[1])]
    return [[cols[c][r] for c in range(3)] for r in range(3)]


def _unit(K, i):
    return [K.one if j == i else K.zero for j in range(3)]


@dataclass(frozen=True)
class PencilRestriction:
    """``F o M`` viewed as a polynomial in ``y`` with binary-form coefficients in ``(s, t) = (x, z)``."""

    center: Point
    matrix: tuple
    transformed: HomogPoly
    y_coeffs: tuple

    @property
    def degree(self) -> int:
        return self.transformed.degree

    def line_point(self, s, t) -> Point:
        """The second point ``M (s, 0, t)`` spanning the pencil line ``[s:t]``."""
        K = self.center.field
        M = self.matrix
        v = (s, K.zero, t)
        return Point([K.add(K.add(K.mul(M[r][0], v[0]), K.mul(M[r][1], v[1])), K.mul(M[r][2], v[2])) for r in range(3)], K)

    def fiber_polynomial(self, s, t) -> list:
        """The univariate polynomial in ``y`` cut out on the pencil line ``[s:t]``."""
        return upoly.trim([c.evaluate(s, t) for c in self.y_coeffs])


def restrict_to_pencil(F: HomogPoly, p: Point) -> PencilRestriction:
    F.field.check_same(p.field)
    if F.is_zero():
        raise ValueError("zero polynomial")
    M = pencil_matrix(p)
    G = F.substitute_linear(M)
    return PencilRestriction(p, tuple(tuple(r) for r in M), G, tuple(coefficients_in(G, 1)))


def _sylvester(fc: list, gc: list, zero) -> list[list]:
    n, m = len(fc) - 1, len(gc) - 1
    size = n + m
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(K: Field, f: list, g: list, deg_f: int | None = None, deg_g: int | None = None):
    """Sylvester resultant of two univariate polynomials at (optionally formal) degrees."""
    df = upoly.deg(f) if deg_f is None else deg_f
    dg = upoly.deg(g) if deg_g is None else deg_g
    fc = list(f) + [K.zero] * (df + 1 - len(f))
    gc = list(g) + [K.zero] * (dg + 1 - len(g))
    if df + dg == 0:
        return K.one
    return det(_sylvester(fc, gc, K.zero), K)


def form_resultant(fc: Sequence[BinaryForm], gc: Sequence[BinaryForm], degree: int) -> BinaryForm:
    """Resultant (at formal degrees ``len - 1``) of two polynomials with binary-form coefficients.

    ``degree`` is the known homogeneous degree of the answer; the determinant is
    taken over ``K[s]`` after setting ``t = 1`` and homogenised back.
    """
    K = fc[0].field
    ring = upoly.PolyRing(K)
    rows = _sylvester([c.upoly() for c in fc], [c.upoly() for c in gc], ring.zero)
    return BinaryForm.from_upoly(K, det(rows, ring), degree)


class DegenerateLeadingCoefficient(ValueError):
    pass


def discriminant_wrt(coeffs: Sequence[BinaryForm]) -> BinaryForm:
    """Discriminant of ``sum_k coeffs[k] * y**k`` in ``y``, a binary form in the parameters.

    ``coeffs[k]`` must have degree ``D - k``; the answer has degree
    ``(D-n)(n-1) + n(D-1) - (D-n)``, i.e. ``D(D-1)`` when the leading coefficient is a constant.
    """
    coeffs = list(coeffs)
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("need positive degree in the eliminated variable")
    K = coeffs[0].field
    D = coeffs[0].degree
    for k, c in enumerate(coeffs):
        if c.degree != D - k:
            raise ValueError("coefficient degrees are not those of a homogeneous polynomial")
    lead = coeffs[n]
    if lead.is_zero():
        raise DegenerateLeadingCoefficient("leading coefficient vanishes identically (center on the curve?)")
    deriv = [coeffs[k].scale(K(k)) for k in range(1, n + 1)]
    ring = upoly.PolyRing(K)
    rows = _sylvester([c.upoly() for c in coeffs], [c.upoly() for c in deriv], ring.zero)
    res = det(rows, ring)
    q = upoly.exact_div(K, res, lead.upoly())
    if (n * (n - 1) // 2) % 2:
        q = upoly.neg(K, q)
    weight = (D - n) * (n - 1) + n * (D - 1) - (D - n)
    return BinaryForm.from_upoly(K, q, weight)


@dataclass(frozen=True)
class FormFactor:
    """A factor of a binary form with its multiplicity; ``point`` is set when the factor is linear and split."""

    factor: BinaryForm
    multiplicity: int
    point: tuple | None = None

    @property
    def slots(self) -> int:
        return self.factor.degree * self.multiplicity


def _linear_at(K: Field, s, t) -> BinaryForm:
    # the form t0*s - s0*t vanishing at [s0:t0]
    return BinaryForm(K, 1, [K.neg(s), t])


def binary_form_roots(B: BinaryForm, seed: int = 0) -> list[FormFactor]:
    """Factor structure of ``B``.

    Over GF(p): every point of the projective line is tried, the cofactor is
    split into irreducibles.  Over QQ: rational roots are split off and the remaining
    part is reported through its squarefree decomposition.
    """
    if B.is_zero():
        raise ValueError("zero form")
    K = B.field
    f = B.upoly()
    out = []
    inf_mult = B.degree - upoly.deg(f)
    if K.characteristic:
        for a, m in upoly.roots_fp(K, f):
            out.append(FormFactor(_linear_at(K, a, K.one), m, (a, K.one)))
            f = upoly.exact_div(K, f, upoly.power(K, [K.neg(a), K.one], m))
        if inf_mult:
            out.append(FormFactor(BinaryForm(K, 1, [K.one, K.zero]), inf_mult, (K.one, K.zero)))
        if upoly.deg(f) > 0:
            for g, e in upoly.factor_fp(K, f, seed):
                out.append(FormFactor(BinaryForm(K, upoly.deg(g), g), e, None))
    else:
        if upoly.deg(f) > 0:
            for g, e in upoly.squarefree_decomposition(K, f):
                for a in upoly.rational_roots(g):
                    out.append(FormFactor(_linear_at(K, a, K.one), e, (a, K.one)))
                    g = upoly.exact_div(K, g, [K.neg(a), K.one])
                if upoly.deg(g) > 0:
                    out.append(FormFactor(BinaryForm(K, upoly.deg(g), g), e, None))
        if inf_mult:
            out.append(FormFactor(BinaryForm(K, 1, [K.one, K.zero]), inf_mult, (K.one, K.zero)))
    return out


def is_squarefree(B: BinaryForm) -> bool:
    """Squarefree over the algebraic closure (the root at infinity counts)."""
    if B.is_zero():
        return False
    f = B.upoly()
    if B.degree - upoly.deg(f) > 1:
        return False
    if upoly.deg(f) <= 0:
        return True
    return upoly.is_squarefree(B.field, f)


def multiplicity_type(K: Field, f: list) -> tuple[int, ...]:
    """Root multiplicities of ``f`` over the algebraic closure, as a decreasing partition."""
    parts = []
    for g, e in upoly.squarefree_decomposition(K, f):
        parts.extend([e] * upoly.deg(g))
    return tuple(sorted(parts, reverse=True))
