"""Checkable claims, shared by ``planeproj verify`` and the acceptance tests.

Each claim is a function ``(seed) -> dict`` that raises ``FalsificationError``
on a violated statement and returns its measurements otherwise.
"""
from __future__ import annotations

import itertools
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import hurwitz
from .cubic import WeierstrassCurve, decompose_degree3, line_for, points_sum_zero_iff_collinear
from .curve import (GpElement, PlaneCurve, gp_apply, project_branch_divisor, projections_equivalent,
                    random_curve, riemann_hurwitz_w)
from .errors import FalsificationError, PreconditionError
from .field import GF, QQ
from .linsys import (Divisor, dim_linear_system, line_sections, realizes_as_projection, smooth_curve_through,
                     verify_theorem1_sample)
from .pointconf import (CollinearityCertificate, adversarial_configuration, general_position, line_cover_witness,
                        max_collinear, verify_theorem2)
from .points import Point, collinear, projective_points
from .poly import parse_poly


@dataclass(frozen=True)
class Claim:
    key: str
    claim: str
    run: Callable[[int], dict]
    limit: float


@dataclass
class ClaimResult:
    key: str
    claim: str
    passed: bool
    details: dict
    seconds: float
    limit: float
    error: str | None = None

    @property
    def in_time(self) -> bool:
        return self.seconds < self.limit

    def to_json(self, timing: bool = True) -> dict:
        out = {"key": self.key, "claim": self.claim, "passed": self.passed and self.in_time,
               "details": self.details, "limit_seconds": self.limit}
        if self.error:
            out["error"] = self.error
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _expect(cond: bool, message: str, dump: dict | None = None) -> None:
    if not cond:
        raise FalsificationError(message, dump)


# -- 1, 2, 3: Hurwitz counts ------------------------------------------------

def hurwitz_cubic(seed: int = 0) -> dict:
    r = hurwitz.simple_hurwitz(3, 1)
    P = r.profile
    dp_all = hurwitz.dp_count(P)
    dp_all2, dp_trans = hurwitz.dp_transitive(P)
    _expect(r.all_tuples == dp_all == dp_all2, "Frobenius and DP totals differ")
    _expect(r.transitive_tuples == dp_trans, "transitive counts differ")
    _expect(r.hurwitz_number == 40, f"h(3,1) = {r.hurwitz_number}, expected 40")
    return {"hurwitz_number": str(r.hurwitz_number), "all_tuples": r.all_tuples,
            "transitive_tuples": r.transitive_tuples, "methods": list(r.methods) + ["group-algebra-dp"]}


def hurwitz_quartic(seed: int = 0) -> dict:
    r = hurwitz.simple_hurwitz(4, 3)
    expected = 255 * (3 ** 10 - 1) // 2
    _expect(r.hurwitz_number == expected, f"h(4,3) = {r.hurwitz_number}, expected {expected}")
    return {"hurwitz_number": str(r.hurwitz_number), "expected": expected, "methods": list(r.methods)}


def small_profiles(max_d: int = 4, max_w: int = 8):
    """Every multiset of non-identity branch types with ``2 <= d <= max_d`` and ``1 <= w <= max_w``."""
    for d in range(2, max_d + 1):
        types = [t for t in hurwitz.partitions_of(d) if not hurwitz.is_identity_type(t)]
        for w in range(1, max_w + 1):
            for combo in itertools.combinations_with_replacement(types, w):
                yield hurwitz.Profile(d, combo)


def hurwitz_oracles(seed: int = 0) -> dict:
    n = 0
    nonzero = 0
    for P in small_profiles():
        frob = hurwitz.count_factorizations(P)
        brute = hurwitz.brute_force_count(P)
        _expect(frob == brute, "Frobenius count differs from enumeration", {"profile": P.to_text(), "frobenius": frob, "brute": brute})
        if P.ramification % 2:
            _expect(frob == 0, "odd total ramification with nonzero count", {"profile": P.to_text()})
        n += 1
        nonzero += frob != 0
    return {"profiles": n, "nonzero": nonzero}


# -- 4: the collinearity criterion ------------------------------------------

def _collinearity_instance(cfg, p0_indices) -> tuple[bool, int]:
    rep = verify_theorem2(cfg)
    for i in p0_indices:
        w = line_cover_witness(cfg, i)
        if isinstance(w, CollinearityCertificate):
            _expect(w.count >= len(cfg) - 1, "collinearity certificate too small")
    return not rep.conditions.independent, len(p0_indices)


def collinearity_exhaustive(q: int, all_p0: bool = True) -> dict:
    """Every 5-subset of the plane over GF(q); witnesses at every ``p0`` or at one rotating ``p0``."""
    K = GF(q)
    pts = list(projective_points(K))
    n = dep = wit = 0
    for idx, combo in enumerate(itertools.combinations(pts, 5)):
        p0s = range(5) if all_p0 else (idx % 5,)
        d, w = _collinearity_instance(combo, p0s)
        n += 1
        dep += d
        wit += w
    return {"field": f"GF({q})", "configurations": n, "dependent": dep, "witnesses": wit}


def collinearity_random(seed: int, count: int = 10_000) -> dict:
    rng = random.Random(seed)
    fields = (GF(101), QQ)
    stats = Counter()
    for i in range(count):
        K = fields[i % 2]
        n = rng.randint(5, 8)
        cfg = adversarial_configuration(K, n, rng) if rng.random() < 0.7 else general_position(K, n, rng)
        d, _ = _collinearity_instance(cfg, (rng.randrange(n),))
        stats["configurations"] += 1
        stats["dependent"] += d
    return dict(stats)


def collinearity_suite(seed: int = 0) -> dict:
    return {"exhaustive": [collinearity_exhaustive(3, True), collinearity_exhaustive(5, False)],
            "random": collinearity_random(seed), "violations": 0}


# -- 5, 6: linear systems ---------------------------------------------------

def quartic_pencil(seed: int = 0) -> dict:
    rng = random.Random(seed)
    pts = [Point(v, QQ) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))]
    _expect(not any(collinear(*t) for t in itertools.combinations(pts, 3)), "chosen points are collinear")
    curves = []
    seen = set()
    while len(curves) < 3:
        C = smooth_curve_through(QQ, 4, pts, rng)
        if C.F.normalized() in seen:
            continue
        seen.add(C.F.normalized())
        D = Divisor.from_points(C, pts)
        rep = dim_linear_system(D)
        _expect(rep.dim_D == 1 and not rep.base_points, "expected a base-point-free pencil", {"curve": C.F.to_str(), "report": rep.to_json()})
        _expect(max_collinear(pts)[0] < 4, "support unexpectedly collinear")
        try:
            realizes_as_projection(D)
        except PreconditionError:
            pass
        else:
            raise FalsificationError("quartic pencil accepted as a projection", {"curve": C.F.to_str()})
        curves.append(C.F.to_str())
    return {"curves": curves, "dim": 1, "base_points": []}


def _quintic_with_sections(q: int, rng: random.Random) -> PlaneCurve:
    best, best_n = None, -1
    for _ in range(6):
        C = random_curve(GF(q), 5, rng)
        n = len(line_sections(C))
        if n > best_n:
            best, best_n = C, n
    return best


def projection_sampling(seed: int = 0, trials: int = 500) -> dict:
    rng = random.Random(seed)
    out = []
    for q in (11, 13):
        C = _quintic_with_sections(q, rng)
        rep = verify_theorem1_sample(C, trials, rng.randrange(2 ** 32))
        _expect(rep.falsifications == 0 and rep.small_moving == 0, "sampling found a counterexample", rep.to_json())
        _expect(rep.centers == rep.moving_bpf, "a moving base-point-free divisor produced no center")
        out.append({"field": f"GF({q})", "curve": C.F.to_str(), "rational_points": len(C.rational_points), **rep.to_json()})
    return {"curves": out}


# -- 7, 8: projections ------------------------------------------------------

def branch_counts(seed: int = 0, per_degree: int = 20) -> dict:
    rng = random.Random(seed)
    K = GF(7)
    pts = list(projective_points(K))
    divisors = 0
    for d in (2, 3, 4):
        w = riemann_hurwitz_w(d)
        for _ in range(per_degree):
            C = random_curve(K, d, rng)
            for p in pts:
                if C.F.evaluate(p) == 0:
                    continue
                bd = project_branch_divisor(C, p)
                _expect(bd.total == w == d * (d - 1), "branch divisor total differs from d(d-1)",
                        {"curve": C.F.to_str(), "center": p.to_str(), "total": bd.total})
                divisors += 1
    fermat = PlaneCurve(parse_poly("x^3 + y^3 + z^3 mod 7"))
    bd = project_branch_divisor(fermat, Point((0, 1, 0), K))
    triple = sorted(bd.fiber_types.values())
    _expect(triple == [(3,)] * 3 and all(m == 2 for _, m in bd.split_points), "Fermat cubic flex regression",
            {"fibers": [list(t) for t in triple]})
    return {"branch_divisors": divisors, "fermat_fibers": [list(t) for t in triple]}


def _random_center(C: PlaneCurve, rng: random.Random) -> Point:
    K = C.field
    while True:
        v = [rng.randrange(K.characteristic) for _ in range(3)]
        if any(v) and C.F.evaluate(v) != 0:
            return Point(v, K)


def gp_invariance(seed: int = 0, pairs: int = 50) -> dict:
    rng = random.Random(seed)
    K = GF(7)
    found = 0
    for _ in range(pairs):
        d = rng.choice((3, 4))
        C = random_curve(K, d, rng)
        p = _random_center(C, rng)
        g = GpElement(rng.randrange(1, 7), rng.randrange(7), rng.randrange(1, 7), rng.randrange(7), p)
        gC = gp_apply(g, C)
        b1, b2 = project_branch_divisor(C, p), project_branch_divisor(gC, p, check_smooth=False)
        _expect(b1.discriminant.is_proportional(b2.discriminant), "discriminant changed under the group")
        _expect(sorted(b1.split_points) == sorted(b2.split_points) and b1.fiber_types == b2.fiber_types,
                "branch points changed under the group", {"curve": C.F.to_str(), "g": g.to_json()})
        wit = projections_equivalent(C, gC, p)
        _expect(wit is not None and gp_apply(wit, C).F.is_proportional(gC.F), "no witness for an equivalent pair",
                {"curve": C.F.to_str(), "g": g.to_json()})
        found += 1
    return {"pairs": pairs, "witnesses": found}


# -- 9: cubics --------------------------------------------------------------

def random_degree3_divisors(E: WeierstrassCurve, rng: random.Random):
    """Zeros and poles of ``l1(P + T) / l2(P + T)`` for random rational lines and shift ``T``."""
    pts = E.points()
    while True:
        T = rng.choice(pts)
        A, B, C, D = (rng.choice(pts) for _ in range(4))
        R = (A, B, E.neg(E.add(A, B)))
        Q = (C, D, E.neg(E.add(C, D)))
        mT = E.neg(T)
        zeros = tuple(E.add(X, mT) for X in R)
        poles = tuple(E.add(X, mT) for X in Q)
        if not set(zeros) & set(poles):
            return zeros, poles, T, R, Q


def cubic_roundtrip(seed: int = 0, count: int = 100) -> dict:
    rng = random.Random(seed)
    K = GF(13)
    E = WeierstrassCurve(2, 3, K)
    pts = E.points()
    for _ in range(count):
        zeros, poles, T, R, Q = random_degree3_divisors(E, rng)
        dec = decompose_degree3(E, zeros, poles, choice=rng.randrange(9))
        f = dec.witness
        l1, l2 = line_for(E, R), line_for(E, Q)
        ratio = None
        for P in pts:
            if P in zeros or P in poles:
                _expect((f(P) == 0) == (P in zeros) and (f(P) is None) == (P in poles), "zero/pole mismatch")
                continue
            S = E.add(P, T)
            g = K.div(l1.evaluate(S), l2.evaluate(S))
            r = K.div(f(P), g)
            _expect(ratio is None or r == ratio, "reconstructed function is not a constant multiple of the original")
            ratio = r
    triples = 0
    for a, b, c in itertools.product(pts, repeat=3):
        points_sum_zero_iff_collinear(E, a, b, c)
        triples += 1
    return {"curve": repr(E), "points": len(pts), "decompositions": count, "chord_triples": triples}


# -- 10: recorded constants -------------------------------------------------

def recorded_constants(seed: int = 0) -> dict:
    table = {c.key: c.value for c in hurwitz.plane_hurwitz_constants()}
    expected = {"h_plane_4": 3_542_880, "deg_B": 3762, "beta8_I3": 8400, "beta13_I4": 304_200, "dim_PH_4": 11}
    for k, v in expected.items():
        _expect(table[k] == v, f"constant {k} = {table[k]}, expected {v}")
    _expect(hurwitz.simple_hurwitz_number(3, 1) == table["h_plane_3"], "degree-3 plane and simple Hurwitz numbers differ")
    return {"constants": table, "recorded_not_derived": True}


CLAIMS = (
    Claim("hurwitz-cubic", "simple Hurwitz number h(3,1) = 40, characters and DP agreeing", hurwitz_cubic, 1.0),
    Claim("hurwitz-quartic", "simple Hurwitz number h(4,3) = 255*(3^10-1)/2 = 7528620", hurwitz_quartic, 10.0),
    Claim("hurwitz-oracles", "Frobenius counts equal brute-force enumeration for d <= 4, w <= 8", hurwitz_oracles, 60.0),
    Claim("collinearity-criterion", "d+1 >= 5 points failing on degree d-2 curves have d collinear; line-cover witnesses verify", collinearity_suite, 300.0),
    Claim("quartic-pencil", "four general points on a smooth quartic move in a base-point-free pencil that is no projection", quartic_pencil, 10.0),
    Claim("projection-criterion", "moving base-point-free degree-d divisors on smooth quintics are line sections; degree d-2 never moves", projection_sampling, 300.0),
    Claim("branch-count", "branch divisors of smooth plane curves have degree d(d-1) = 2g+2d-2", branch_counts, 120.0),
    Claim("pencil-group", "the center's group preserves branch divisors and the equivalence search finds witnesses", gp_invariance, 120.0),
    Claim("cubic-shift-projection", "degree-3 functions on a cubic are a shift followed by a projection; chord law", cubic_roundtrip, 60.0),
    Claim("recorded-constants", "recorded plane Hurwitz and characteristic numbers (not derived)", recorded_constants, 1.0),
)


def claim_by_key(key: str) -> Claim:
    for c in CLAIMS:
        if c.key == key:
            return c
    raise KeyError(key)


def run_claim(claim: Claim, seed: int) -> ClaimResult:
    t = time.perf_counter()
    try:
        details = claim.run(seed)
        passed, err = True, None
    except FalsificationError as exc:
        details, passed, err = {"dump": exc.dump}, False, str(exc)
    return ClaimResult(claim.key, claim.claim, passed, details, time.perf_counter() - t, claim.limit, err)


def _run_by_key(args):
    key, seed = args
    return run_claim(claim_by_key(key), seed)


def run_claims(keys, seed: int, workers: int | None = None) -> list[ClaimResult]:
    """Run claims, in parallel when ``workers > 1``; results keep the order of ``keys``."""
    keys = list(keys)
    if workers is None:
        workers = int(os.environ.get("PLANEPROJ_WORKERS", "1"))
    if workers <= 1 or len(keys) <= 1:
        return [run_claim(claim_by_key(k), seed) for k in keys]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_by_key, [(k, seed) for k in keys]))
