import itertools
import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from planeproj.cubic import (WeierstrassCurve, decompose_degree3, ec_add, intersection_divisor, line_for,
                             points_sum_zero_iff_collinear, trisect)
from planeproj.errors import PreconditionError
from planeproj.field import GF
from planeproj.points import Point


def legendre_count(a, b, p):
    """``#E(F_p)`` from the character sum, independent of point enumeration."""
    total = p + 1
    for x in range(p):
        v = (x ** 3 + a * x + b) % p
        if v:
            total += 1 if pow(v, (p - 1) // 2, p) == 1 else -1
    return total


def full_3_torsion_curve():
    for p in (7, 13, 19, 31, 37, 43):
        for a in range(p):
            for b in range(p):
                if (4 * a ** 3 + 27 * b ** 2) % p == 0:
                    continue
                E = WeierstrassCurve(a, b, GF(p))
                if len(trisect(E, E.O)) == 9:
                    return E
    raise AssertionError("no curve with full rational 3-torsion found")


@pytest.fixture(scope="module")
def E13():
    return WeierstrassCurve(2, 3, GF(13))


def test_doubling_example():
    K = GF(5)
    E = WeierstrassCurve(0, 1, K)
    P = E.point(0, 1)
    assert ec_add(E, P, P) == Point((0, 4, 1), K)
    assert E.mul(3, P) == E.O


def test_rejects_bad_curves():
    with pytest.raises(PreconditionError):
        WeierstrassCurve(1, 1, GF(3))
    with pytest.raises(PreconditionError):
        WeierstrassCurve(-3, 2, GF(7))  # 4(-27) + 27*4 = 0


@pytest.mark.parametrize("a,b,p", [(2, 3, 13), (0, 1, 7), (1, 1, 101), (3, 5, 97), (0, 2, 31)])
def test_point_count_and_hasse(a, b, p):
    E = WeierstrassCurve(a, b, GF(p))
    n = len(E.points())
    assert n == legendre_count(a, b, p)
    assert (n - p - 1) ** 2 <= 4 * p


def test_y2_x3_plus_1_over_f7():
    E = WeierstrassCurve(0, 1, GF(7))
    assert len(E.points()) == 12
    assert len(trisect(E, E.O)) == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_group_axioms(seed):
    rng = random.Random(seed)
    E = WeierstrassCurve(2, 3, GF(13))
    pts = E.points()
    P, Q, R = (rng.choice(pts) for _ in range(3))
    assert E.add(P, Q) == E.add(Q, P)
    assert E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R))
    assert E.add(P, E.O) == P and E.add(P, E.neg(P)) == E.O
    assert E.contains(E.add(P, Q))
    assert E.mul(len(pts), P) == E.O


def test_chord_law_exhaustive(E13):
    pts = E13.points()
    agree = 0
    for P, Q, R in itertools.combinations_with_replacement(pts, 3):
        s, c = points_sum_zero_iff_collinear(E13, P, Q, R)
        assert s == c
        agree += s
    assert agree > 0


def test_tangent_and_flex(E13):
    for P in E13.points()[1:]:
        div = intersection_divisor(E13, E13.tangent(P))
        assert div[P] >= 2 and sum(div.values()) == 3
        if E13.mul(3, P) == E13.O:
            assert div == Counter({P: 3})
    assert line_for(E13, (E13.O, E13.O, E13.O)) is not None  # z = 0 is the flex tangent


def test_trisect_full_torsion():
    E = full_3_torsion_curve()
    assert len(E.points()) % 9 == 0
    for S in E.points()[:10]:
        sols = trisect(E, S)
        assert len(sols) in (0, 9)
        assert all(E.mul(3, P) == E.neg(S) for P in sols)


def test_trisect_unique_when_coprime():
    E = next(E for E in (WeierstrassCurve(a, 1, GF(13)) for a in range(1, 13)) if len(E.points()) % 3)
    for S in E.points():
        assert len(trisect(E, S)) == 1


# -- degree-3 functions -----------------------------------------------------

def random_divisors(E, rng):
    """Zeros and poles with a common sum lying in ``3 E(F_p)``, so a trisection point exists."""
    pts = E.points()
    while True:
        S = E.mul(3, rng.choice(pts))
        triples = []
        for _ in range(2):
            a, b = rng.choice(pts), rng.choice(pts)
            triples.append([a, b, E.add(S, E.neg(E.add(a, b)))])
        zeros, poles = triples
        if set(zeros) & set(poles):
            continue
        return zeros, poles


def _check_function(E, dec):
    f = dec.witness
    assert f(dec.witness.anchor) == 1
    for P in E.points():
        v = f(P)
        if P in dec.poles:
            assert v is None
        elif P in dec.zeros:
            assert v == 0
        else:
            assert v not in (None, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_decompose_random(seed):
    E = WeierstrassCurve(2, 3, GF(13))
    zeros, poles = random_divisors(E, random.Random(seed))
    dec = decompose_degree3(E, zeros, poles)
    _check_function(E, dec)
    assert E.F.evaluate(dec.witness.center) != 0
    assert dec.checked_points == len(E.points())


def test_decompose_choices_agree():
    """Every trisection point gives the same function once normalised at the anchor."""
    E = full_3_torsion_curve()
    rng = random.Random(5)
    for _ in range(5):
        zeros, poles = random_divisors(E, rng)
        decs = [decompose_degree3(E, zeros, poles, k) for k in range(9)]
        assert decs[0].trisection_choices == 9
        assert len({d.witness.P0 for d in decs}) == 9
        values = [tuple(d.witness(P) for P in E.points()) for d in decs]
        assert len(set(values)) == 1
        _check_function(E, decs[0])


def test_decompose_repeated_points(E13):
    pts = E13.points()
    rng = random.Random(2)
    while True:
        S = E13.mul(3, rng.choice(pts))
        P, a = rng.choice(pts[1:]), rng.choice(pts)
        Q = E13.add(S, E13.neg(E13.add(P, P)))
        poles = [a, a, E13.add(S, E13.neg(E13.add(a, a)))]
        if not {P, Q} & set(poles):
            break
    dec = decompose_degree3(E13, [P, P, Q], poles)
    assert dec.witness(P) == 0 and dec.witness(a) is None
    _check_function(E13, dec)


def test_decompose_rejections(E13):
    pts = E13.points()
    zeros, poles = random_divisors(E13, random.Random(1))
    moved = next(P for P in pts if P not in zeros and P != poles[2])
    with pytest.raises(PreconditionError, match="same point"):
        decompose_degree3(E13, zeros, [poles[0], poles[1], moved])
    with pytest.raises(PreconditionError, match="coincide"):
        decompose_degree3(E13, zeros, zeros)
    with pytest.raises(PreconditionError, match="share"):
        decompose_degree3(E13, zeros, [zeros[0], poles[1], poles[2]])
    with pytest.raises(PreconditionError, match="three"):
        decompose_degree3(E13, zeros[:2], poles)
    with pytest.raises(PreconditionError, match="not on the curve"):
        decompose_degree3(E13, zeros, [Point((1, 1, 1), GF(13))] + poles[1:])


def test_decompose_without_trisection():
    E = full_3_torsion_curve()
    pts = E.points()
    S = next(P for P in pts if not trisect(E, P))
    rng = random.Random(3)
    while True:
        a, b, c, e = (rng.choice(pts) for _ in range(4))
        zeros = [a, b, E.add(S, E.neg(E.add(a, b)))]
        poles = [c, e, E.add(S, E.neg(E.add(c, e)))]
        if not set(zeros) & set(poles):
            break
    with pytest.raises(PreconditionError, match="trisection"):
        decompose_degree3(E, zeros, poles)
