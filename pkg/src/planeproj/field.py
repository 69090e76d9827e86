"""Exact coefficient fields.

Elements are stored as raw Python values: ``Fraction`` for the rationals and
plain ``int`` in ``[0, p)`` for a prime field.  A :class:`Field` object carries
the arithmetic, so hot loops never allocate wrapper objects.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator


class FieldMismatch(ValueError):
    pass


class Field:
    """Common interface; see :class:`RationalField` and :class:`PrimeField`."""

    characteristic: int = 0
    zero: object
    one: object

    def is_finite(self) -> bool:
        return self.characteristic != 0

    # ring protocol shared with the polynomial rings used by ``linalg.det``
    def is_zero(self, a) -> bool:
        return a == 0

    def exact_div(self, a, b):
        return self.div(a, b)

    def check_same(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatch(f"field mismatch: {self} vs {other}")


class RationalField(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __call__(self, value) -> Fraction:
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def pow(self, a, n: int):
        return a**n

    def to_str(self, a) -> str:
        return str(a)

    def to_json(self, a) -> str:
        return str(a)


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __call__(self, value) -> int:
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({self.p})")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, n: int):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def to_str(self, a) -> str:
        return str(a)

    def to_json(self, a) -> int:
        return a


def _is_prime(n: int) -> bool:
    if n < 4:
        return n >= 2
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(text: str | int | None) -> Field:
    """``"Q"``/``"QQ"``/``None`` for the rationals, a prime (or ``"F7"``, ``"GF(7)"``) otherwise."""
    if text is None:
        return QQ
    if isinstance(text, int):
        return GF(text)
    t = text.strip().upper()
    if t in ("Q", "QQ", "RATIONALS"):
        return QQ
    for prefix in ("GF(", "GF", "FP", "F"):
        if t.startswith(prefix):
            t = t[len(prefix):]
            break
    t = t.rstrip(")")
    if not t.isdigit():
        raise ValueError(f"unrecognised field {text!r}")
    return GF(int(t))
