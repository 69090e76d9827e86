"""Finite point sets in the plane: collinearity, imposed conditions, and line-product witnesses."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .errors import FalsificationError, PreconditionError
from .field import Field
from .linalg import rank
from .points import Point, collinear, cross, line_points, line_through, parse_point
from .poly import HomogPoly, monomials, num_monomials, product


@dataclass(frozen=True)
class Configuration:
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if pts:
            K = pts[0].field
            for P in pts:
                K.check_same(P.field)
        if len(set(pts)) != len(pts):
            raise ValueError("configuration points must be distinct")

    @property
    def field(self) -> Field:
        return self.points[0].field

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def without(self, i: int) -> "Configuration":
        return Configuration(self.points[:i] + self.points[i + 1:])

    def to_json(self) -> list[str]:
        return [P.to_str() for P in self.points]


def as_configuration(points: Configuration | Iterable[Point]) -> Configuration:
    return points if isinstance(points, Configuration) else Configuration(tuple(points))


def parse_configuration(data: str | Sequence[str], field: Field | None = None) -> Configuration:
    """Read a JSON array of point strings (or an already decoded list)."""
    if isinstance(data, str):
        data = json.loads(data)
    return Configuration(tuple(parse_point(s, field) for s in data))


# -- collinearity -----------------------------------------------------------

def max_collinear(points) -> tuple[int, HomogPoly]:
    """Largest number of points on one line, with a witnessing line (first pair in order wins ties)."""
    cfg = as_configuration(points)
    n = len(cfg)
    if n < 2:
        raise PreconditionError("need at least two points")
    K = cfg.field
    best, best_pair = 0, None
    coords = [P.coords for P in cfg]
    for i in range(n):
        for j in range(i + 1, n):
            a, b, c = cross(K, coords[i], coords[j])
            cnt = 0
            for u in coords:
                if K.add(K.add(K.mul(a, u[0]), K.mul(b, u[1])), K.mul(c, u[2])) == 0:
                    cnt += 1
            if cnt > best:
                best, best_pair = cnt, (i, j)
                if best == n:
                    break
        if best == n:
            break
    i, j = best_pair
    return best, line_through(cfg[i], cfg[j])


# -- imposed conditions -----------------------------------------------------

def evaluation_matrix(points, m: int) -> list[list]:
    """Rows: the degree-``m`` monomials (descending lex order) evaluated at each point."""
    if m < 0:
        raise PreconditionError("degree must be nonnegative")
    cfg = as_configuration(points)
    mons = monomials(m)
    rows = []
    for P in cfg:
        K = P.field
        pw = []
        for v in P.coords:
            acc = [K.one]
            for _ in range(m):
                acc.append(K.mul(acc[-1], v))
            pw.append(acc)
        px, py, pz = pw
        rows.append([K.mul(px[i], K.mul(py[j], pz[k])) for i, j, k in mons])
    return rows


@dataclass(frozen=True)
class ConditionsReport:
    m: int
    num_points: int
    matrix_rank: int
    expected_rank: int
    independent: bool
    defect: int
    h1: int
    dependent_points: tuple[int, ...] = dc_field(default=())

    def to_json(self, cfg: Configuration | None = None) -> dict:
        out = {
            "m": self.m,
            "num_points": self.num_points,
            "rank": self.matrix_rank,
            "expected_rank": self.expected_rank,
            "independent": self.independent,
            "defect": self.defect,
            "h1": self.h1,
            "dependent_point_indices": list(self.dependent_points),
        }
        if cfg is not None:
            out["dependent_points"] = [cfg[i].to_str() for i in self.dependent_points]
        return out


def conditions_rank(points, m: int) -> int:
    cfg = as_configuration(points)
    if not cfg.points or m < 0:
        return 0
    return rank(evaluation_matrix(cfg, m), cfg.field)


def imposes_independent_conditions(points, m: int) -> ConditionsReport:
    """Rank test for ``points`` on curves of degree ``m``.

    ``dependent_points`` lists each point that every degree-``m`` curve through
    the others must contain, i.e. whose row does not raise the rank.
    """
    if m < 0:
        raise PreconditionError("degree must be nonnegative")
    cfg = as_configuration(points)
    n = len(cfg)
    N = num_monomials(m)
    if n == 0:
        return ConditionsReport(m, 0, 0, 0, True, 0, 0)
    mat = evaluation_matrix(cfg, m)
    K = cfg.field
    r = rank(mat, K)
    expected = min(n, N)
    dependent = ()
    if r < n:
        dependent = tuple(i for i in range(n) if rank(mat[:i] + mat[i + 1:], K) == r)
    return ConditionsReport(m, n, r, expected, r == expected, expected - r, n - r, dependent)


# -- line-product witness ---------------------------------------------------

@dataclass(frozen=True)
class CollinearityCertificate:
    line: HomogPoly
    indices: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.indices)

    def to_json(self) -> dict:
        return {"kind": "collinear", "line": self.line.to_str(), "count": self.count, "indices": list(self.indices)}


@dataclass(frozen=True)
class LineCoverWitness:
    curve: HomogPoly
    lines: tuple[HomogPoly, ...]
    case: str
    j: int

    @property
    def degree(self) -> int:
        return self.curve.degree

    def to_json(self) -> dict:
        return {"kind": "curve", "case": self.case, "j": self.j, "degree": self.degree,
                "lines": [l.to_str() for l in self.lines], "curve": self.curve.to_str()}


def line_cover_witness(points, p0: Point | int) -> LineCoverWitness | CollinearityCertificate:
    """A product of lines through every point except ``p0`` and missing ``p0``, or a collinearity certificate.

    Let ``j`` be the largest number of other points on a line through ``p0``
    and ``d = len(points) - 1``.  For ``2 <= j <= d - 2`` the points ``p_i`` on
    that line are paired with the off-line points ``q_i`` (surplus indices go
    to ``q_1`` or ``p_1``); for ``j = 1`` the remaining points are covered two
    at a time; for ``j >= d - 1`` at least ``d`` points are collinear.
    """
    cfg = as_configuration(points)
    n = len(cfg)
    if n < 5:
        raise PreconditionError("need at least 5 points (the degree bound fails below that)")
    i0 = p0 if isinstance(p0, int) else cfg.points.index(p0)
    P0 = cfg[i0]
    d = n - 1
    others = [i for i in range(n) if i != i0]

    best_line, best_on = None, []
    for i in others:
        line = line_through(P0, cfg[i])
        on = [k for k in others if line.evaluate(cfg[k]) == 0]
        if len(on) > len(best_on):
            best_line, best_on = line, on
    j = len(best_on)

    if j >= d - 1:
        return CollinearityCertificate(best_line, tuple(sorted([i0] + best_on)))

    K = cfg.field
    if j >= 2:
        p = [None] + [cfg[k] for k in best_on]
        q = [None] + [cfg[k] for k in others if k not in best_on]
        lines = []
        for i in range(1, max(j, d - j) + 1):
            if i <= min(j, d - j):
                lines.append(line_through(p[i], q[i]))
            elif i <= j:
                lines.append(line_through(p[i], q[1]))
            else:
                lines.append(line_through(q[i], p[1]))
        case = "pairing"
    else:
        lines = []
        uncovered = list(others)
        while uncovered:
            a = uncovered[0]
            b = uncovered[1] if len(uncovered) > 1 else next(k for k in others if k != a)
            line = line_through(cfg[a], cfg[b])
            lines.append(line)
            uncovered = [k for k in uncovered if line.evaluate(cfg[k]) != 0]
        case = "greedy"

    curve = product(lines, K)
    bad = [k for k in others if curve.evaluate(cfg[k]) != 0]
    if bad or curve.evaluate(P0) == 0 or curve.degree > n - 3:
        raise FalsificationError(
            "line-cover construction failed to separate p0",
            {"points": cfg.to_json(), "p0": i0, "case": case, "curve": curve.to_str()},
        )
    return LineCoverWitness(curve, tuple(lines), case, j)


# -- the collinearity criterion ---------------------------------------------

@dataclass(frozen=True)
class CollinearityReport:
    conditions: ConditionsReport
    max_collinear: int
    line: HomogPoly
    holds: bool

    def to_json(self, cfg: Configuration | None = None) -> dict:
        return {"conditions": self.conditions.to_json(cfg), "max_collinear": self.max_collinear,
                "line": self.line.to_str(), "implication_holds": self.holds}


def verify_theorem2(points) -> CollinearityReport:
    """Check: ``d + 1 >= 5`` points failing on degree ``d - 2`` curves have ``d`` of them collinear."""
    cfg = as_configuration(points)
    n = len(cfg)
    if n < 5:
        raise PreconditionError("need d + 1 >= 5 points")
    d = n - 1
    report = imposes_independent_conditions(cfg, d - 2)
    mc, line = max_collinear(cfg)
    holds = report.independent or mc >= d
    if not holds:
        raise FalsificationError(
            "dependent configuration without d collinear points",
            {"points": cfg.to_json(), "rank": report.matrix_rank, "max_collinear": mc},
        )
    return CollinearityReport(report, mc, line, holds)


# -- sampling ---------------------------------------------------------------

def random_point(K: Field, rng: random.Random, bound: int = 20) -> Point:
    """Uniform over the plane for GF(p); small integer coordinates over QQ."""
    while True:
        if K.characteristic:
            v = [rng.randrange(K.characteristic) for _ in range(3)]
        else:
            v = [rng.randint(-bound, bound) for _ in range(3)]
        if any(v):
            return Point(v, K)


def random_point_on_line(line: HomogPoly, rng: random.Random, bound: int = 20) -> Point:
    K = line.field
    A, B = line_points(line)
    while True:
        if K.characteristic:
            u, v = rng.randrange(K.characteristic), rng.randrange(K.characteristic)
        else:
            u, v = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if u or v:
            return Point([K.add(K.mul(K(u), a), K.mul(K(v), b)) for a, b in zip(A, B)], K)


def general_position(K: Field, n: int, rng: random.Random, max_tries: int = 10_000) -> Configuration:
    """Rejection-sample ``n`` points with no three collinear."""
    pts: list[Point] = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise RuntimeError("could not find points in general position; field too small?")
        P = random_point(K, rng)
        if P in pts:
            continue
        if any(collinear(A, B, P) for a, A in enumerate(pts) for B in pts[a + 1:]):
            continue
        pts.append(P)
    return Configuration(tuple(pts))


def adversarial_configuration(K: Field, n: int, rng: random.Random) -> Configuration:
    """``n`` distinct points, a random number of them forced onto one random line."""
    line = None
    while line is None:
        A, B = random_point(K, rng), random_point(K, rng)
        if A != B:
            line = line_through(A, B)
    k = rng.randint(2, n if not K.characteristic else min(n, K.characteristic + 1))
    pts: list[Point] = []
    while len(pts) < k:
        P = random_point_on_line(line, rng)
        if P not in pts:
            pts.append(P)
    while len(pts) < n:
        P = random_point(K, rng)
        if P not in pts:
            pts.append(P)
    rng.shuffle(pts)
    return Configuration(tuple(pts))
