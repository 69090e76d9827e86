"""Homogeneous polynomials in x, y, z over an exact field, plus the text format.

Text format::

    x^3 + y^3 + z^3
    y^2*z - x^3 - 2*x*z^2
    3/4*x*y - (x - z)^2 mod 7

A trailing ``mod p`` selects GF(p) when no field is passed explicitly.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .field import QQ, Field, GF

VARS = ("x", "y", "z")

Exponent = tuple[int, int, int]


@lru_cache(maxsize=None)
def monomials(m: int) -> tuple[Exponent, ...]:
    """Degree-``m`` exponent triples in descending lexicographic order."""
    if m < 0:
        return ()
    return tuple((i, j, m - i - j) for i in range(m, -1, -1) for j in range(m - i, -1, -1))


def num_monomials(m: int) -> int:
    return (m + 1) * (m + 2) // 2 if m >= 0 else 0


class HomogPoly:
    """An immutable homogeneous polynomial.

    ``coeffs`` maps exponent triples to nonzero field values; the zero
    polynomial is an empty map that still remembers its degree.
    """

    __slots__ = ("field", "degree", "coeffs", "_hash")

    def __init__(self, field: Field, degree: int, coeffs: Mapping[Exponent, object] = ()):
        if degree < 0:
            raise ValueError("negative degree")
        clean = {}
        for e, c in dict(coeffs).items():
            if sum(e) != degree or min(e) < 0:
                raise ValueError(f"monomial {e} is not of degree {degree}")
            c = field(c)
            if c != 0:
                clean[tuple(e)] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("HomogPoly is immutable")

    @classmethod
    def _raw(cls, field: Field, degree: int, coeffs: dict) -> "HomogPoly":
        # trusted constructor: coeffs already canonical and nonzero
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls, field: Field, degree: int) -> "HomogPoly":
        return cls._raw(field, degree, {})

    @classmethod
    def constant(cls, field: Field, value=1) -> "HomogPoly":
        return cls(field, 0, {(0, 0, 0): value})

    @classmethod
    def linear(cls, field: Field, a, b, c) -> "HomogPoly":
        return cls(field, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    @classmethod
    def variable(cls, field: Field, name: str) -> "HomogPoly":
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return cls._raw(field, 1, {tuple(e): field.one})

    @classmethod
    def from_vector(cls, field: Field, degree: int, vector: Sequence) -> "HomogPoly":
        mons = monomials(degree)
        if len(vector) != len(mons):
            raise ValueError("coefficient vector has wrong length")
        return cls(field, degree, dict(zip(mons, vector)))

    # -- basic protocol ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (isinstance(other, HomogPoly) and self.field == other.field
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.degree, frozenset(self.coeffs.items()))))
        return self._hash

    def __repr__(self) -> str:
        return f"HomogPoly({self.to_str()!r}, {self.field!r})"

    def __str__(self) -> str:
        return self.to_str()

    def vector(self) -> list:
        K = self.field
        return [self.coeffs.get(e, K.zero) for e in monomials(self.degree)]

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "HomogPoly") -> None:
        self.field.check_same(other.field)

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("sum of forms of different degree")
        K = self.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = K.add(out.get(e, K.zero), c)
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return HomogPoly._raw(K, self.degree, out)

    def __neg__(self) -> "HomogPoly":
        K = self.field
        return HomogPoly._raw(K, self.degree, {e: K.neg(c) for e, c in self.coeffs.items()})

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def scale(self, c) -> "HomogPoly":
        K = self.field
        c = K(c)
        if c == 0:
            return HomogPoly.zero(K, self.degree)
        return HomogPoly._raw(K, self.degree, {e: K.mul(v, c) for e, v in self.coeffs.items()})

    def __mul__(self, other) -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            return self.scale(other)
        self._check(other)
        K = self.field
        out: dict = {}
        for (a, b, c), u in self.coeffs.items():
            for (i, j, k), v in other.coeffs.items():
                e = (a + i, b + j, c + k)
                out[e] = K.add(out.get(e, K.zero), K.mul(u, v))
        return HomogPoly._raw(K, self.degree + other.degree, {e: v for e, v in out.items() if v != 0})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomogPoly":
        out = HomogPoly.constant(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- calculus and evaluation -----------------------------------------
    def diff(self, var: int | str) -> "HomogPoly":
        idx = VARS.index(var) if isinstance(var, str) else var
        K = self.field
        out = {}
        for e, c in self.coeffs.items():
            if e[idx]:
                v = K.mul(K(e[idx]), c)
                if v != 0:
                    ne = list(e)
                    ne[idx] -= 1
                    out[tuple(ne)] = v
        return HomogPoly._raw(K, max(self.degree - 1, 0), out)

    def gradient(self) -> tuple["HomogPoly", "HomogPoly", "HomogPoly"]:
        return self.diff(0), self.diff(1), self.diff(2)

    def __call__(self, point) -> object:
        return self.evaluate(point)

    def evaluate(self, point) -> object:
        """Value at a fixed representative (a ``Point`` or a coordinate triple)."""
        coords = getattr(point, "coords", point)
        pf = getattr(point, "field", None)
        if pf is not None:
            self.field.check_same(pf)
        K = self.field
        d = self.degree
        px, py, pz = (_powers(K, v, d) for v in coords)
        acc = K.zero
        for (i, j, k), c in self.coeffs.items():
            acc = K.add(acc, K.mul(c, K.mul(px[i], K.mul(py[j], pz[k]))))
        return acc

    def substitute_linear(self, M: Sequence[Sequence]) -> "HomogPoly":
        """Return ``G(v) = F(M v)`` for a 3x3 matrix ``M`` (row-major)."""
        K = self.field
        forms = [HomogPoly(K, 1, {(1, 0, 0): M[r][0], (0, 1, 0): M[r][1], (0, 0, 1): M[r][2]}) for r in range(3)]
        d = self.degree
        pw = [[HomogPoly.constant(K)] for _ in range(3)]
        for r in range(3):
            for _ in range(d):
                pw[r].append(pw[r][-1] * forms[r])
        out = HomogPoly.zero(K, d)
        acc: dict = {}
        for (i, j, k), c in self.coeffs.items():
            term = pw[0][i] * pw[1][j] * pw[2][k]
            for e, v in term.coeffs.items():
                acc[e] = K.add(acc.get(e, K.zero), K.mul(c, v))
        if acc:
            out = HomogPoly._raw(K, d, {e: v for e, v in acc.items() if v != 0})
        return out

    def is_proportional(self, other: "HomogPoly") -> bool:
        """True iff both define the same curve, i.e. coefficient vectors are proportional."""
        self._check(other)
        if self.degree != other.degree:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.coeffs.keys() != other.coeffs.keys():
            return False
        K = self.field
        e0 = next(iter(self.coeffs))
        a0, b0 = self.coeffs[e0], other.coeffs[e0]
        return all(K.mul(a, b0) == K.mul(other.coeffs[e], a0) for e, a in self.coeffs.items())

    def normalized(self) -> "HomogPoly":
        """Scale so that the leading coefficient (in monomial order) is 1."""
        for e in monomials(self.degree):
            if e in self.coeffs:
                return self.scale(self.field.inv(self.coeffs[e]))
        return self

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.coeffs), default=-1)

    # -- text -------------------------------------------------------------
    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        K = self.field
        parts = []
        for e in monomials(self.degree):
            if e not in self.coeffs:
                continue
            c = self.coeffs[e]
            neg = False
            if K.characteristic == 0 and c < 0:
                neg, c = True, -c
            mono = "*".join(
                v if n == 1 else f"{v}^{n}" for v, n in zip(VARS, e) if n
            )
            if mono and c == 1:
                body = mono
            elif mono:
                body = f"{K.to_str(c)}*{mono}"
            else:
                body = K.to_str(c)
            parts.append(("- " if neg else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _powers(K: Field, v, d: int) -> list:
    out = [K.one]
    for _ in range(d):
        out.append(K.mul(out[-1], v))
    return out


def product(polys: Iterable[HomogPoly], field: Field) -> HomogPoly:
    out = HomogPoly.constant(field)
    for p in polys:
        out = out * p
    return out


# -- parser -----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int, line: int = 1):
        self.text = text
        self.pos = pos
        self.line = line
        self.column = pos + 1
        super().__init__(f"{message} at line {line}, column {pos + 1}: {text!r}")


_MOD_RE = re.compile(r"\s+mod\s+(\d+)\s*$")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([xyz])|(\*\*|[-+*/^()]))")


def split_modulus(text: str) -> tuple[str, int | None]:
    m = _MOD_RE.search(text)
    if not m:
        return text, None
    return text[: m.start()], int(m.group(1))


def parse_poly(text: str, field: Field | None = None) -> HomogPoly:
    body, p = split_modulus(text)
    if field is None:
        field = GF(p) if p is not None else QQ
    elif p is not None and field != GF(p):
        raise ParseError(f"modulus {p} conflicts with field {field}", text, len(body))
    parser = _Parser(body, field)
    terms = parser.parse()
    if not terms:
        raise ParseError("polynomial is identically zero; degree unknown", text, 0)
    degs = {sum(e) for e in terms}
    if len(degs) != 1:
        raise ParseError(f"polynomial is not homogeneous (degrees {sorted(degs)})", text, 0)
    return HomogPoly(field, degs.pop(), terms)


class _Parser:
    def __init__(self, text: str, field: Field):
        self.text = text
        self.K = field
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN_RE.match(text, pos)
            if not m:
                skip = len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[pos + skip]!r}", text, pos + skip)
            start = m.start(m.lastindex)
            self.tokens.append((m.group(m.lastindex), m.lastindex, start))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> dict:
        if not self.tokens:
            raise ParseError("empty polynomial", self.text, 0)
        out = self._expr()
        tok = self._peek()
        if tok[0] is not None:
            raise ParseError(f"unexpected token {tok[0]!r}", self.text, tok[2])
        return out

    def _expr(self) -> dict:
        acc = self._term()
        while self._peek()[0] in ("+", "-"):
            op = self._take()[0]
            rhs = self._term()
            acc = _padd(self.K, acc, rhs if op == "+" else _pscale(self.K, rhs, self.K(-1)))
        return acc

    def _term(self) -> dict:
        acc = self._unary()
        while self._peek()[0] in ("*", "/"):
            op, _, pos = self._take()
            rhs = self._unary()
            if op == "*":
                acc = _pmul(self.K, acc, rhs)
            else:
                if set(rhs) - {(0, 0, 0)} or not rhs:
                    raise ParseError("division by a non-constant or zero", self.text, pos)
                acc = _pscale(self.K, acc, self.K.inv(rhs[(0, 0, 0)]))
        return acc

    def _unary(self) -> dict:
        tok = self._peek()
        if tok[0] in ("+", "-"):
            self._take()
            inner = self._unary()
            return inner if tok[0] == "+" else _pscale(self.K, inner, self.K(-1))
        return self._power()

    def _power(self) -> dict:
        base = self._atom()
        if self._peek()[0] in ("^", "**"):
            self._take()
            tok = self._take()
            if tok[1] != 1:
                raise ParseError("expected integer exponent", self.text, tok[2])
            out = {(0, 0, 0): self.K.one}
            for _ in range(int(tok[0])):
                out = _pmul(self.K, out, base)
            return out
        return base

    def _atom(self) -> dict:
        tok, kind, pos = self._take()
        if tok is None:
            raise ParseError("unexpected end of input", self.text, pos)
        if kind == 1:
            v = self.K(Fraction(int(tok)))
            return {(0, 0, 0): v} if v != 0 else {}
        if kind == 2:
            e = [0, 0, 0]
            e[VARS.index(tok)] = 1
            return {tuple(e): self.K.one}
        if tok == "(":
            inner = self._expr()
            close = self._take()
            if close[0] != ")":
                raise ParseError("expected ')'", self.text, close[2])
            return inner
        raise ParseError(f"unexpected token {tok!r}", self.text, pos)


def _padd(K, a, b):
    out = dict(a)
    for e, c in b.items():
        v = K.add(out.get(e, K.zero), c)
        if v == 0:
            out.pop(e, None)
        else:
            out[e] = v
    return out


def _pscale(K, a, c):
    return {e: K.mul(v, c) for e, v in a.items() if K.mul(v, c) != 0}


def _pmul(K, a, b):
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = K.add(out.get(e, K.zero), K.mul(c1, c2))
    return {e: v for e, v in out.items() if v != 0}
