"""Dense univariate polynomials over an exact field.

A polynomial is a list of field values, lowest degree first, with no trailing
zeros; ``[]`` is the zero polynomial.  Every function takes the field first.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as igcd, lcm

from .field import GF, QQ, Field


def trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f: list) -> int:
    return len(f) - 1


def lc(f: list):
    return f[-1]


def add(K: Field, f, g):
    n = max(len(f), len(g))
    out = [K.add(f[i] if i < len(f) else K.zero, g[i] if i < len(g) else K.zero) for i in range(n)]
    return trim(out)


def sub(K: Field, f, g):
    n = max(len(f), len(g))
    out = [K.sub(f[i] if i < len(f) else K.zero, g[i] if i < len(g) else K.zero) for i in range(n)]
    return trim(out)


def neg(K: Field, f):
    return [K.neg(a) for a in f]


def scale(K: Field, f, c):
    if c == 0:
        return []
    return trim([K.mul(a, c) for a in f])


def mul(K: Field, f, g):
    if not f or not g:
        return []
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return trim(out)


def divmod_(K: Field, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = deg(g)
    inv = K.inv(lc(g))
    q = [K.zero] * max(len(f) - dg, 0)
    while r and deg(r) >= dg:
        c = K.mul(lc(r), inv)
        shift = deg(r) - dg
        q[shift] = c
        for i, b in enumerate(g):
            r[i + shift] = K.sub(r[i + shift], K.mul(c, b))
        r.pop()
        trim(r)
    return trim(q), r


def exact_div(K: Field, f, g):
    q, r = divmod_(K, f, g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def rem(K: Field, f, g):
    return divmod_(K, f, g)[1]


def monic(K: Field, f):
    if not f:
        return []
    return scale(K, f, K.inv(lc(f)))


def gcd(K: Field, f, g):
    """Monic gcd; ``gcd(0, 0) = 0``."""
    a, b = list(f), list(g)
    while b:
        a, b = b, rem(K, a, b)
    return monic(K, a)


def derivative(K: Field, f):
    return trim([K.mul(K(i), f[i]) for i in range(1, len(f))])


def evaluate(K: Field, f, x):
    acc = K.zero
    for a in reversed(f):
        acc = K.add(K.mul(acc, x), a)
    return acc


def power(K: Field, f, n: int):
    out = [K.one]
    base = list(f)
    while n:
        if n & 1:
            out = mul(K, out, base)
        n >>= 1
        if n:
            base = mul(K, base, base)
    return out


def powmod(K: Field, f, n: int, m):
    out = [K.one]
    base = rem(K, f, m)
    while n:
        if n & 1:
            out = rem(K, mul(K, out, base), m)
        n >>= 1
        if n:
            base = rem(K, mul(K, base, base), m)
    return out


def is_squarefree(K: Field, f) -> bool:
    if not f:
        return False
    return deg(gcd(K, f, derivative(K, f))) == 0


def squarefree_decomposition(K: Field, f) -> list[tuple[list, int]]:
    """Return ``[(g, e), ...]`` with ``f = lc(f) * prod g**e``, each ``g`` monic squarefree.

    Handles positive characteristic, where ``f' = 0`` forces a p-th root step.
    """
    if not f:
        raise ValueError("zero polynomial")
    f = monic(K, f)
    found: dict[int, list] = {}
    for g, e in _sqf(K, f):
        found[e] = mul(K, found[e], g) if e in found else g
    return sorted(((g, e) for e, g in found.items() if deg(g) > 0), key=lambda t: t[1])


def _sqf(K: Field, f):
    if deg(f) <= 0:
        return []
    p = K.characteristic
    out = []
    df = derivative(K, f)
    if not df:
        return [(g, e * p) for g, e in _sqf(K, _pth_root(K, f))]
    c = gcd(K, f, df)
    w = exact_div(K, f, c)
    i = 1
    while deg(w) > 0:
        y = gcd(K, w, c)
        z = exact_div(K, w, y)
        if deg(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = exact_div(K, c, y)
    if deg(c) > 0:
        # only reachable in characteristic p: c is a polynomial in x**p
        out.extend((g, e * p) for g, e in _sqf(K, _pth_root(K, c)))
    return out


def _pth_root(K: Field, f):
    p = K.characteristic
    # a**(1/p) == a in a prime field
    return trim([f[i] for i in range(0, len(f), p)])


def distinct_degree_factorization(K: Field, f) -> list[tuple[list, int]]:
    """Split a monic squarefree ``f`` over GF(p) into products of irreducibles of equal degree."""
    p = K.characteristic
    out = []
    x = [K.zero, K.one]
    h = x
    i = 1
    f = list(f)
    while deg(f) >= 2 * i:
        h = powmod(K, h, p, f)
        g = gcd(K, f, sub(K, h, x))
        if deg(g) > 0:
            out.append((g, i))
            f = exact_div(K, f, g)
            h = rem(K, h, f)
        i += 1
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree_factorization(K: Field, f, d: int, rng: random.Random) -> list[list]:
    """Cantor-Zassenhaus splitting of a product of degree-``d`` irreducibles over GF(p)."""
    n = deg(f)
    if n == d:
        return [monic(K, f)]
    p = K.characteristic
    while True:
        a = trim([K(rng.randrange(p)) for _ in range(n)])
        if deg(a) <= 0:
            continue
        if p == 2:
            b = list(a)
            t = list(a)
            for _ in range(d - 1):
                t = powmod(K, t, 2, f)
                b = add(K, b, t)
        else:
            b = sub(K, powmod(K, a, (p**d - 1) // 2, f), [K.one])
        g = gcd(K, f, b)
        if 0 < deg(g) < n:
            return (equal_degree_factorization(K, g, d, rng)
                    + equal_degree_factorization(K, exact_div(K, f, g), d, rng))


def factor_fp(K: Field, f, seed: int = 0) -> list[tuple[list, int]]:
    """Complete factorisation over GF(p): ``[(monic irreducible, multiplicity), ...]``."""
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_decomposition(K, f):
        for block, d in distinct_degree_factorization(K, g):
            for h in equal_degree_factorization(K, block, d, rng):
                out.append((h, e))
    out.sort(key=lambda t: (deg(t[0]), t[0], t[1]))
    return out


def roots_fp(K: Field, f) -> list[tuple[int, int]]:
    """Roots in GF(p) with multiplicity, by exhaustive trial."""
    out = []
    f = list(f)
    for a in K.elements():
        m = 0
        while f and evaluate(K, f, a) == 0:
            f = exact_div(K, f, [K.neg(a), K.one])
            m += 1
        if m:
            out.append((a, m))
    return out


def rational_roots(f) -> list[Fraction]:
    """Distinct rational roots of a polynomial over QQ.

    A rational root times the leading coefficient is an integer of bounded
    size, so each simple root modulo a good prime is Newton-lifted past that
    bound and the candidate checked exactly.  No integer factoring is needed.
    """
    if not f:
        raise ValueError("zero polynomial")
    f = [Fraction(a) for a in f]
    roots = []
    low = 0
    while f[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    f = f[low:]
    if len(f) == 1:
        return roots
    f = exact_div(QQ, f, gcd(QQ, f, derivative(QQ, f)))
    ints = _primitive(f)
    lead = ints[-1]
    bound = 2 * abs(lead) * (2 + max(abs(a) for a in ints[:-1]) // abs(lead))
    dints = [k * a for k, a in enumerate(ints)][1:]
    p = 2
    while True:
        p += 1
        if any(p % r == 0 for r in range(2, int(p ** 0.5) + 1)) or lead % p == 0:
            continue
        K = GF(p)
        fp = trim([K(a) for a in ints])
        if deg(gcd(K, fp, derivative(K, fp))) == 0:
            break
    for a, _ in roots_fp(K, fp):
        mod = p
        while mod <= bound:
            mod *= mod
            a = (a - _eval_int(ints, a, mod) * pow(_eval_int(dints, a, mod), -1, mod)) % mod
        m = lead * a % mod
        if m > mod // 2:
            m -= mod
        r = Fraction(m, lead)
        if evaluate(QQ, f, r) == 0:
            roots.append(r)
    return sorted(roots)


def _primitive(f: list) -> list[int]:
    den = lcm(*(a.denominator for a in f))
    ints = [int(a * den) for a in f]
    g = 0
    for a in ints:
        g = igcd(g, a)
    return [a // g for a in ints]


def _eval_int(coeffs: list[int], x: int, mod: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    return acc


class PolyRing:
    """``K[u]`` exposing the ring protocol used by :func:`planeproj.linalg.det`."""

    def __init__(self, K: Field):
        self.K = K
        self.zero: list = []
        self.one = [K.one]

    def is_zero(self, a) -> bool:
        return not a

    def add(self, a, b):
        return add(self.K, a, b)

    def sub(self, a, b):
        return sub(self.K, a, b)

    def neg(self, a):
        return neg(self.K, a)

    def mul(self, a, b):
        return mul(self.K, a, b)

    def exact_div(self, a, b):
        return exact_div(self.K, a, b)
