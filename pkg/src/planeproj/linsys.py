"""Reduced divisors on smooth plane curves and their complete linear systems.

Sections of the canonical bundle of a smooth plane curve of degree ``d`` are
restrictions of degree ``d - 3`` forms, so ``h0(K - D)`` is the dimension of
the space of adjoint curves through ``D`` and Riemann-Roch gives
``dim |D| = deg D - g + h0(K - D)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .curve import SMOOTH, PlaneCurve
from .errors import FalsificationError, PreconditionError
from .field import Field
from .linalg import nullspace
from .pointconf import conditions_rank, evaluation_matrix, max_collinear
from .points import Point, line_through, meet, projective_lines
from .poly import HomogPoly, num_monomials


@dataclass(frozen=True)
class Divisor:
    curve: PlaneCurve
    support: tuple[tuple[Point, int], ...]

    def __post_init__(self):
        support = tuple((P, int(m)) for P, m in self.support)
        object.__setattr__(self, "support", support)
        K = self.curve.field
        seen = set()
        for P, m in support:
            K.check_same(P.field)
            if m < 1:
                raise ValueError("multiplicities must be positive")
            if P in seen:
                raise ValueError(f"point {P} listed twice; give it a multiplicity instead")
            seen.add(P)
            if self.curve.F.evaluate(P) != 0:
                raise PreconditionError(f"point {P} is not on the curve")

    @classmethod
    def from_points(cls, curve: PlaneCurve, points) -> "Divisor":
        return cls(curve, tuple((P, 1) for P in points))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.support)

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(P for P, _ in self.support)

    @property
    def is_reduced(self) -> bool:
        return all(m == 1 for _, m in self.support)

    def without(self, P: Point) -> "Divisor":
        return Divisor(self.curve, tuple((Q, m) for Q, m in self.support if Q != P))

    def to_json(self) -> list[str]:
        return [P.to_str() if m == 1 else f"{m}*{P.to_str()}" for P, m in self.support]


def _require_reduced(D: Divisor) -> None:
    if not D.is_reduced:
        raise PreconditionError("non-reduced divisors are not supported (they need fat-point conditions)")


def h0_adjoint(D: Divisor, m: int) -> int:
    """Dimension of the space of degree-``m`` forms vanishing on the support of ``D``."""
    _require_reduced(D)
    if m < 0:
        return 0
    return num_monomials(m) - conditions_rank(D.points, m)


def linear_system_dim(D: Divisor) -> int:
    """``dim |D|`` for a reduced divisor of any degree on a smooth plane curve."""
    C = D.curve
    return D.degree - C.genus + h0_adjoint(D, C.d - 3)


@dataclass(frozen=True)
class LinearSystemReport:
    degree: int
    genus: int
    h0_KminusD: int
    dim_D: int
    base_points: tuple[Point, ...]

    @property
    def moves(self) -> bool:
        return self.dim_D >= 1

    def to_json(self) -> dict:
        return {"degree": self.degree, "genus": self.genus, "h0_K_minus_D": self.h0_KminusD,
                "dim": self.dim_D, "moves": self.moves, "base_points": [P.to_str() for P in self.base_points]}


def dim_linear_system(D: Divisor) -> LinearSystemReport:
    """``dim |D|`` and the base points of ``|D|`` for ``deg D = deg C``.

    A support point ``q`` is a base point exactly when ``dim |D - q| = dim |D|``,
    i.e. when dropping it raises ``h0(K - D)`` by one.
    """
    _require_reduced(D)
    C = D.curve
    if D.degree != C.d:
        raise PreconditionError(f"divisor degree {D.degree} differs from curve degree {C.d}")
    m = C.d - 3
    h0 = h0_adjoint(D, m)
    dim = D.degree - C.genus + h0
    if dim < 0:
        raise FalsificationError("negative linear system dimension", {"curve": C.F.to_str(), "divisor": D.to_json()})
    base = tuple(q for q in D.points if h0_adjoint(D.without(q), m) == h0 + 1)
    return LinearSystemReport(D.degree, C.genus, h0, dim, base)


@dataclass(frozen=True)
class ProjectionWitness:
    center: Point
    line: HomogPoly
    other_line: HomogPoly

    def to_json(self) -> dict:
        return {"center": self.center.to_str(), "line": self.line.to_str(), "other_line": self.other_line.to_str()}


def _second_line(C: PlaneCurve, l1: HomogPoly, rng: random.Random | None = None) -> HomogPoly:
    K = C.field
    if K.characteristic:
        candidates = projective_lines(K)
    else:
        rng = rng or random.Random(0)
        candidates = (HomogPoly.linear(K, *(rng.randint(-3, 3) for _ in range(3))) for _ in range(1000))
    for l2 in candidates:
        if l2.is_zero() or l2.is_proportional(l1):
            continue
        if C.F.evaluate(meet(l1, l2)) != 0:
            return l2
    raise RuntimeError("every line meets the first one on the curve")


def realizes_as_projection(D: Divisor, polar: Divisor | None = None) -> ProjectionWitness:
    """Center of a linear projection having ``D`` as a fiber.

    A moving, base-point-free reduced divisor of degree ``d > 4`` must be a
    line section.  The pencil is fixed by a second member: the line through
    ``polar`` when given, otherwise the first line (in enumeration order) whose
    meeting point with the first avoids the curve.
    """
    C = D.curve
    if C.d <= 4:
        raise PreconditionError(f"degree {C.d} <= 4: moving pencils need not be projections (plane quartics and cubics)")
    if C.smoothness.status != SMOOTH:
        raise PreconditionError("curve is not certified smooth")
    rep = dim_linear_system(D)
    if not rep.moves:
        raise PreconditionError("divisor does not move")
    if rep.base_points:
        raise PreconditionError("linear system has base points " + ", ".join(P.to_str() for P in rep.base_points))
    count, l1 = max_collinear(D.points)
    if count < C.d:
        raise FalsificationError(
            "moving base-point-free divisor of degree d > 4 with non-collinear support",
            {"curve": C.F.to_str(), "field": repr(C.field), "divisor": D.to_json(), "report": rep.to_json()},
        )
    if polar is not None:
        pcount, l2 = max_collinear(polar.points)
        if polar.degree != C.d or pcount < C.d:
            raise PreconditionError("second divisor is not a line section")
        if l2.is_proportional(l1):
            raise PreconditionError("the two divisors lie on the same line")
    else:
        l2 = _second_line(C, l1)
    p = meet(l1, l2)
    if C.F.evaluate(p) == 0:
        raise PreconditionError(f"the two lines meet at {p}, which is on the curve")
    return ProjectionWitness(p, l1, l2)


# -- construction and sampling ----------------------------------------------

def curves_through(K: Field, d: int, points) -> list[HomogPoly]:
    """Basis of the degree-``d`` forms vanishing at ``points``."""
    pts = list(points)
    if not pts:
        return [HomogPoly.from_vector(K, d, v) for v in nullspace([], K, num_monomials(d))]
    return [HomogPoly.from_vector(K, d, v) for v in nullspace(evaluation_matrix(pts, d), K)]


def smooth_curve_through(K: Field, d: int, points, rng: random.Random, max_tries: int = 200) -> PlaneCurve:
    """A random smooth member of the degree-``d`` system through ``points``."""
    basis = curves_through(K, d, points)
    if not basis:
        raise PreconditionError("no curve of that degree passes through the points")
    for _ in range(max_tries):
        if K.characteristic:
            coeffs = [rng.randrange(K.characteristic) for _ in basis]
        else:
            coeffs = [rng.randint(-3, 3) for _ in basis]
        F = HomogPoly.zero(K, d)
        for c, B in zip(coeffs, basis):
            if c:
                F = F + B.scale(c)
        if F.is_zero():
            continue
        C = PlaneCurve(F)
        if C.smoothness.status == SMOOTH:
            return C
    raise RuntimeError("no smooth curve found through the points")


def line_sections(C: PlaneCurve) -> list[tuple[HomogPoly, tuple[Point, ...]]]:
    """Lines meeting ``C`` in ``d`` distinct rational points (finite fields only)."""
    pts = C.rational_points
    out = []
    seen = set()
    for i, P in enumerate(pts):
        for Q in pts[i + 1:]:
            line = line_through(P, Q)
            key = line.normalized()
            if key in seen:
                continue
            seen.add(key)
            on = tuple(R for R in pts if line.evaluate(R) == 0)
            if len(on) == C.d:
                out.append((line, on))
    return out


@dataclass
class ProjectionSample:
    trials: int = 0
    moving_bpf: int = 0
    centers: int = 0
    with_base_points: int = 0
    rigid: int = 0
    line_sections: int = 0
    small_divisors: int = 0
    small_moving: int = 0
    falsifications: int = 0

    def to_json(self) -> dict:
        return dict(self.__dict__)


def verify_theorem1_sample(C: PlaneCurve, trials: int, seed: int = 0) -> ProjectionSample:
    """Sample reduced divisors of degree ``d`` and ``d - 2`` from ``C(F_q)``.

    Degree-``d`` samples mix uniform subsets, full line sections, and
    ``d - 1`` collinear points plus one more.  Every moving base-point-free
    sample must yield a center; no degree-``d - 2`` sample may move.
    """
    K = C.field
    if not K.characteristic:
        raise PreconditionError("sampling needs a finite field")
    if C.d < 5:
        raise PreconditionError("need degree at least 5")
    if C.smoothness.status != SMOOTH:
        raise PreconditionError("curve is not certified smooth")
    pts = list(C.rational_points)
    if len(pts) < C.d:
        raise PreconditionError(f"only {len(pts)} rational points; need {C.d}")
    sections = line_sections(C)
    rng = random.Random(seed)
    d = C.d
    out = ProjectionSample()
    for _ in range(trials):
        out.trials += 1
        kind = rng.random()
        if sections and kind < 0.3:
            line, on = rng.choice(sections)
            support = list(on)
            out.line_sections += 1
        elif sections and kind < 0.5:
            line, on = rng.choice(sections)
            support = rng.sample(on, d - 1)
            support.append(rng.choice([P for P in pts if line.evaluate(P) != 0]))
        else:
            support = rng.sample(pts, d)
        D = Divisor.from_points(C, support)
        rep = dim_linear_system(D)
        if rep.moves and not rep.base_points:
            out.moving_bpf += 1
            try:
                realizes_as_projection(D)
            except FalsificationError:
                out.falsifications += 1
                raise
            out.centers += 1
        elif rep.moves:
            out.with_base_points += 1
        else:
            out.rigid += 1

        if sections and rng.random() < 0.5:
            _, on = rng.choice(sections)
            small = rng.sample(on, d - 2)
        else:
            small = rng.sample(pts, d - 2)
        out.small_divisors += 1
        if linear_system_dim(Divisor.from_points(C, small)) > 0:
            out.small_moving += 1
            out.falsifications += 1
            raise FalsificationError("a divisor of degree d - 2 moves",
                                     {"curve": C.F.to_str(), "field": repr(K), "divisor": [P.to_str() for P in small]})
    return out

