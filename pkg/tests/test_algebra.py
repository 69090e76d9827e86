import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from planeproj import upoly
from planeproj.binary import (BinaryForm, DegenerateLeadingCoefficient, binary_form_roots, coefficients_in,
                              discriminant_wrt, is_squarefree, resultant, restrict_to_pencil)
from planeproj.field import GF, QQ, FieldMismatch, field_from_spec
from planeproj.points import Point, parse_point
from planeproj.poly import HomogPoly, ParseError, monomials, parse_poly

X, Y, Z, S, T = sympy.symbols("x y z s t")


def to_sympy(F: HomogPoly):
    return sum(sympy.Rational(str(c)) * X ** i * Y ** j * Z ** k for (i, j, k), c in F.coeffs.items())


def random_poly(K, d, rng, density=1.0):
    vec = [rng.randrange(K.characteristic) if K.characteristic else rng.randint(-4, 4) for _ in monomials(d)]
    vec = [v if rng.random() < density else 0 for v in vec]
    return HomogPoly.from_vector(K, d, vec)


# -- fields ---------------------------------------------------------------

def test_rationals_lowest_terms():
    assert QQ("6/4") == Fraction(3, 2)
    assert QQ(Fraction(-2, -4)).denominator == 2


def test_prime_field_canonical():
    K = GF(7)
    assert K(-1) == 6
    assert K("3/4") == K.div(3, 4)
    assert K.mul(K.inv(3), 3) == 1


def test_gf_rejects_composite():
    with pytest.raises(ValueError):
        GF(9)


@pytest.mark.parametrize("spec,char", [("Q", 0), ("F7", 7), ("GF(11)", 11), ("13", 13)])
def test_field_from_spec(spec, char):
    assert field_from_spec(spec).characteristic == char


@given(st.fractions().filter(lambda f: f != 0), st.fractions().filter(lambda f: f != 0))
def test_rational_exactness(a, b):
    assert QQ.mul(QQ.div(a, b), QQ.div(b, a)) == 1


# -- evaluation and parsing -----------------------------------------------

@pytest.mark.parametrize("text,pt,value", [
    ("x^3 + y^3 + z^3", "[1:-1:0]", 0),
    ("x^3 + y^3 + z^3", "[0:1:0]", 1),
    ("x*z - y^2", "[1:2:4]", 0),
])
def test_poly_eval_examples(text, pt, value):
    assert parse_poly(text).evaluate(parse_point(pt)) == value


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        parse_poly("x + y mod 5").evaluate(parse_point("[1:0:0] mod 7"))


def test_parse_formats():
    F = parse_poly("y^2*z - x^3 - 2*x*z^2")
    assert F.degree == 3 and F.coeffs[(1, 0, 2)] == -2
    G = parse_poly("3/4*x^2 + (x - y)**2")
    assert G.coeffs[(2, 0, 0)] == Fraction(7, 4)
    H = parse_poly("3*x + 8*y mod 7")
    assert H.field == GF(7) and H.coeffs[(0, 1, 0)] == 1


@pytest.mark.parametrize("bad", ["x^2 + y", "x^", "x + * y", "(x + y", "w + x"])
def test_parse_errors_have_positions(bad):
    with pytest.raises(ParseError) as info:
        parse_poly(bad)
    assert info.value.line == 1 and info.value.column >= 1


def test_normalized_points():
    P = Point((0, 3, 6), QQ)
    assert P.coords == (0, 1, 2)
    assert Point((2, 4, 6), GF(5)) == Point((1, 2, 3), GF(5))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 10 ** 6), st.sampled_from([0, 7, 101]))
def test_euler_identity(d, seed, p):
    K = GF(p) if p else QQ
    F = random_poly(K, d, random.Random(seed))
    Fx, Fy, Fz = F.gradient()
    x, y, z = (HomogPoly.variable(K, v) for v in "xyz")
    lhs = x * Fx + y * Fy + z * Fz if d > 0 else HomogPoly.zero(K, d)
    assert lhs == F.scale(d)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10 ** 6), st.integers(1, 10))
def test_homogeneity(d, seed, lam):
    K = GF(101)
    rng = random.Random(seed)
    F = random_poly(K, d, rng)
    v = [rng.randrange(101) for _ in range(3)]
    w = [K.mul(lam, c) for c in v]
    assert F.evaluate(w) == K.mul(K.pow(lam, d), F.evaluate(v))


def test_product_matches_sympy():
    rng = random.Random(1)
    F, G = random_poly(QQ, 3, rng), random_poly(QQ, 2, rng)
    assert sympy.expand(to_sympy(F * G) - to_sympy(F) * to_sympy(G)) == 0


# -- pencil restriction ---------------------------------------------------

def test_restrict_no_change_at_infinity_point():
    F = parse_poly("x^3 + y^3 + z^3")
    r = restrict_to_pencil(F, parse_point("[0:1:0]"))
    assert r.transformed == F
    assert [c.to_str() for c in r.y_coeffs] == ["s^3 + t^3", "0", "0", "1"]


@pytest.mark.parametrize("center", ["[0:0:1]", "[1:1:0]", "[2:-1:3]"])
def test_restrict_reevaluates(center):
    F = parse_poly("y^2*z - x^3")
    p = parse_point(center)
    r = restrict_to_pencil(F, p)
    rng = random.Random(5)
    for _ in range(5):
        u = [Fraction(rng.randint(-9, 9)) for _ in range(3)]
        Mu = [sum(r.matrix[i][j] * u[j] for j in range(3)) for i in range(3)]
        assert r.transformed.evaluate(u) == F.evaluate(Mu)
        # the polynomial in y reassembles to the transformed form
        s, y, t = u
        val = sum(c.evaluate(s, t) * y ** k for k, c in enumerate(r.y_coeffs))
        assert val == F.evaluate(Mu)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10 ** 6))
def test_leading_coefficient_is_value_at_center(d, seed):
    K = GF(31)
    rng = random.Random(seed)
    F = random_poly(K, d, rng)
    p = Point([rng.randrange(31) for _ in range(2)] + [1], K)
    lead = restrict_to_pencil(F, p).y_coeffs[d]
    assert lead.degree == 0 and lead.coeffs[0] == F.evaluate(p)


# -- discriminants --------------------------------------------------------

def test_disc_conic():
    r = restrict_to_pencil(parse_poly("y^2 - x*z"), parse_point("[0:1:0]"))
    assert discriminant_wrt(r.y_coeffs).to_str() == "4*s*t"


def test_disc_fermat_cubic():
    r = restrict_to_pencil(parse_poly("x^3 + y^3 + z^3"), parse_point("[0:1:0]"))
    D = discriminant_wrt(r.y_coeffs)
    assert D.degree == 6
    assert sympy.expand(sympy.sympify(D.to_str().replace("^", "**")) + 27 * (S ** 3 + T ** 3) ** 2) == 0


def test_disc_split_quadratic():
    # (y - x)(y - 2x): b^2 - 4ac = 9x^2 - 8x^2
    F = parse_poly("(y - x)*(y - 2*x)")
    D = discriminant_wrt(coefficients_in(F, 1))
    assert D.to_str() == "s^2"


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_disc_matches_sympy(d, seed):
    rng = random.Random(seed)
    F = random_poly(QQ, d, rng)
    coeffs = coefficients_in(F, 1)
    if coeffs[d].is_zero():
        with pytest.raises(DegenerateLeadingCoefficient):
            discriminant_wrt(coeffs)
        return
    D = discriminant_wrt(coeffs)
    expr = to_sympy(F).subs({X: S, Z: T})
    ref = sympy.discriminant(sympy.Poly(expr, Y)).as_expr() if sympy.Poly(expr, Y).degree() == d else None
    ours = sympy.sympify(D.to_str().replace("^", "**")) if not D.is_zero() else 0
    if ref is not None:
        assert sympy.expand(ours - ref) == 0


def test_disc_vanishing_iff_repeated_root_exhaustive():
    K = GF(7)
    rng = random.Random(3)
    for _ in range(20):
        F = random_poly(K, 3, rng)
        coeffs = coefficients_in(F, 1)
        if coeffs[3].is_zero():
            continue
        D = discriminant_wrt(coeffs)
        for s, t in [(s, 1) for s in range(7)] + [(1, 0)]:
            f = upoly.trim([c.evaluate(s, t) for c in coeffs])
            g = upoly.gcd(K, f, upoly.derivative(K, f))
            assert (D.evaluate(s, t) == 0) == (upoly.deg(g) > 0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_resultant_multiplicative(seed):
    K = GF(101)
    rng = random.Random(seed)
    f, g, h = ([rng.randrange(101) for _ in range(rng.randint(2, 4))] + [1] for _ in range(3))
    lhs = resultant(K, upoly.mul(K, f, g), h)
    assert lhs == K.mul(resultant(K, f, h), resultant(K, g, h))


# -- binary form roots ----------------------------------------------------

@pytest.mark.parametrize("K", [QQ, GF(5)])
def test_roots_s2t(K):
    B = BinaryForm(K, 3, [0, 0, 1, 0])
    got = sorted((f.point, f.multiplicity) for f in binary_form_roots(B))
    assert got == sorted([((K.zero, K.one), 2), ((K.one, K.zero), 1)])


def test_roots_fermat_disc_f7():
    r = restrict_to_pencil(parse_poly("x^3 + y^3 + z^3 mod 7"), parse_point("[0:1:0] mod 7"))
    roots = binary_form_roots(discriminant_wrt(r.y_coeffs))
    assert sorted(f.multiplicity for f in roots) == [2, 2, 2]
    assert all(f.point is not None for f in roots)
    # s^3 = -t^3 over GF(7) by enumeration
    assert sorted(f.point for f in roots) == sorted((s, 1) for s in range(7) if (s ** 3 + 1) % 7 == 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10 ** 6), st.sampled_from([2, 3, 5, 13]))
def test_roots_sum_to_degree(deg, seed, p):
    K = GF(p)
    rng = random.Random(seed)
    coeffs = [rng.randrange(p) for _ in range(deg + 1)]
    if not any(coeffs):
        coeffs[0] = 1
    B = BinaryForm(K, deg, coeffs)
    assert sum(f.slots for f in binary_form_roots(B)) == deg


def test_squarefree_degree_12():
    rng = random.Random(8)
    K = GF(101)
    while True:
        B = BinaryForm(K, 12, [rng.randrange(101) for _ in range(13)])
        if is_squarefree(B):
            break
    assert sum(f.slots for f in binary_form_roots(B) if f.multiplicity == 1) == 12


def test_zero_form_rejected():
    with pytest.raises(ValueError):
        binary_form_roots(BinaryForm(QQ, 2, [0, 0, 0]))
