"""Counting factorizations of the identity in symmetric groups.

``count_factorizations`` sums over irreducible characters (Frobenius); the
connected part is extracted by splitting off the orbit of the first letter.
For small degrees both are checked against a direct group-algebra DP and a DP
that tracks the orbit partition, and against brute-force enumeration.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import comb, factorial, prod

from . import kernels
from .errors import FalsificationError, PreconditionError

Partition = tuple[int, ...]

CHARACTER_CAP = 9
DP_CAP = 5


# -- partitions -------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions_of(n: int, largest: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for k in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - k, k):
            out.append((k,) + rest)
    return tuple(out)


def normalize_partition(parts, n: int | None = None) -> Partition:
    """Sort decreasingly and pad with ones up to ``n``."""
    mu = sorted((int(p) for p in parts if int(p) != 0), reverse=True)
    if any(p < 0 for p in mu):
        raise ValueError("parts must be positive")
    if n is not None:
        s = sum(mu)
        if s > n:
            raise ValueError(f"partition {tuple(mu)} exceeds {n}")
        mu += [1] * (n - s)
    return tuple(mu)


def z_value(mu: Partition) -> int:
    """Order of the centralizer of a permutation with cycle type ``mu``."""
    return prod(k ** m * factorial(m) for k, m in Counter(mu).items())


def class_size(mu: Partition) -> int:
    return factorial(sum(mu)) // z_value(mu)


def is_identity_type(mu: Partition) -> bool:
    return all(p == 1 for p in mu)


# -- profiles ---------------------------------------------------------------

@dataclass(frozen=True)
class Profile:
    d: int
    types: tuple[Partition, ...]

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("degree must be nonnegative")
        types = tuple(normalize_partition(t, self.d) for t in self.types)
        object.__setattr__(self, "types", types)

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> "Profile":
        """``"2,1;2,1;3"``: one branch type per ``;``-separated group (ones may be omitted when ``d`` is given)."""
        groups = [g for g in (s.strip() for s in text.split(";")) if g]
        types = [tuple(int(v) for v in g.split(",") if v.strip()) for g in groups]
        if d is None:
            sums = {sum(t) for t in types}
            if len(sums) != 1:
                raise ValueError("branch types have different sizes; pass the degree")
            d = sums.pop()
        return cls(d, tuple(types))

    @classmethod
    def simple(cls, d: int, w: int) -> "Profile":
        return cls(d, ((2,) + (1,) * (d - 2),) * w)

    @property
    def w(self) -> int:
        return len(self.types)

    @property
    def ramification(self) -> int:
        return sum(self.d - len(t) for t in self.types)

    @property
    def genus(self) -> Fraction:
        """Genus forced by Riemann-Hurwitz for a connected cover (may be negative or fractional)."""
        return Fraction(self.ramification - 2 * self.d + 2, 2)

    def to_text(self) -> str:
        return ";".join(",".join(map(str, t)) for t in self.types)


# -- characters -------------------------------------------------------------

def _beta(lam: Partition) -> tuple[int, ...]:
    k = len(lam)
    return tuple(lam[i] + (k - 1 - i) for i in range(k))


def _from_beta(beta) -> Partition:
    b = sorted(beta, reverse=True)
    k = len(b)
    return tuple(p for p in (b[i] - (k - 1 - i) for i in range(k)) if p > 0)


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """Irreducible character of ``S_n`` by the Murnaghan-Nakayama rule.

    ``mu`` is consumed from its largest part; each rim hook of that length is a
    bead sliding down the abacus, signed by the beads it jumps over.
    """
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    beta = _beta(lam)
    beads = set(beta)
    total = 0
    for b in beta:
        if b - r < 0 or (b - r) in beads:
            continue
        jumped = sum(1 for c in beta if b - r < c < b)
        new = (beads - {b}) | {b - r}
        total += (-1) ** jumped * character(_from_beta(new), rest)
    return total


def hook_dimension(lam: Partition) -> int:
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // hooks


@dataclass(frozen=True)
class CharacterTable:
    d: int
    rows: tuple[Partition, ...]
    classes: tuple[Partition, ...]
    values: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]

    def chi(self, lam: Partition, mu: Partition) -> int:
        return self.values[self.rows.index(lam)][self.classes.index(mu)]


@lru_cache(maxsize=None)
def character_table(d: int, cap: int = CHARACTER_CAP) -> CharacterTable:
    if d < 1:
        raise PreconditionError("degree must be at least 1")
    if d > cap:
        raise PreconditionError(f"degree {d} over the character-table cap {cap}")
    parts = partitions_of(d)
    values = tuple(tuple(character(lam, mu) for mu in parts) for lam in parts)
    ident = parts.index((1,) * d)
    dims = tuple(row[ident] for row in values)
    table = CharacterTable(d, parts, parts, values, dims)
    _check_orthogonality(table)
    return table


def _check_orthogonality(T: CharacterTable) -> None:
    n = factorial(T.d)
    if sum(f * f for f in T.dims) != n:
        raise FalsificationError("sum of squared dimensions differs from d!", {"d": T.d})
    if any(f != hook_dimension(lam) for f, lam in zip(T.dims, T.rows)):
        raise FalsificationError("dimension differs from the hook length formula", {"d": T.d})
    sizes = [class_size(mu) for mu in T.classes]
    for c, mu in enumerate(T.classes):
        if sum(row[c] ** 2 for row in T.values) != z_value(mu):
            raise FalsificationError("column orthogonality fails", {"d": T.d, "class": mu})
    for a, ra in enumerate(T.values):
        for b, rb in enumerate(T.values):
            s = sum(k * x * y for k, x, y in zip(sizes, ra, rb))
            if s != (n if a == b else 0):
                raise FalsificationError("row orthogonality fails", {"d": T.d, "rows": (a, b)})


# -- all factorizations -----------------------------------------------------

def count_factorizations(profile: Profile) -> int:
    """Tuples ``(s_1, ..., s_w)`` with ``s_i`` of type ``types[i]`` and product the identity.

    ``N = (prod |C_i| / d!) * sum_lam prod_i chi_lam(C_i) / f_lam^(w-2)``.
    """
    d, types = profile.d, profile.types
    if d == 0:
        return 1
    T = character_table(d)
    total = Fraction(0)
    cols = [T.classes.index(t) for t in types]
    w = len(types)
    for row, f in zip(T.values, T.dims):
        total += Fraction(prod(row[c] for c in cols), 1) / Fraction(f) ** (w - 2)
    N = total * prod(class_size(t) for t in types) / factorial(d)
    if N.denominator != 1:
        raise FalsificationError("character sum is not an integer", {"profile": profile.to_text()})
    return int(N)


# -- symmetric group as explicit permutations -------------------------------

@dataclass(frozen=True)
class SymmetricGroup:
    d: int
    elements: tuple[tuple[int, ...], ...]
    index: dict = dc_field(compare=False, repr=False)
    mult: tuple[int, ...] = dc_field(compare=False, repr=False)
    types: tuple[Partition, ...] = dc_field(compare=False, repr=False)

    @property
    def identity(self) -> int:
        return self.index[tuple(range(self.d))]

    def class_members(self, mu: Partition) -> list[int]:
        return [i for i, t in enumerate(self.types) if t == mu]


def cycle_type(perm) -> Partition:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                n += 1
            out.append(n)
    return tuple(sorted(out, reverse=True))


@lru_cache(maxsize=None)
def symmetric_group(d: int) -> SymmetricGroup:
    elems = tuple(permutations(range(d)))
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    mult = [0] * (n * n)
    for a, pa in enumerate(elems):
        for b, pb in enumerate(elems):
            # (a*b)(i) = a(b(i))
            mult[a * n + b] = index[tuple(pa[pb[i]] for i in range(d))]
    return SymmetricGroup(d, elems, index, tuple(mult), tuple(cycle_type(e) for e in elems))


def brute_force_count(profile: Profile) -> int:
    """Exhaustive enumeration of tuples (the last factor is forced)."""
    G = symmetric_group(profile.d)
    classes = [G.class_members(t) for t in profile.types]
    return kernels.count_identity_tuples(list(G.mult), len(G.elements), classes, G.identity)


def dp_count(profile: Profile) -> int:
    """Group-algebra convolution of class indicators."""
    G = symmetric_group(profile.d)
    n = len(G.elements)
    vec = {G.identity: 1}
    for t in profile.types:
        members = G.class_members(t)
        nxt: dict[int, int] = {}
        for g, c in vec.items():
            base = g * n
            for s in members:
                h = G.mult[base + s]
                nxt[h] = nxt.get(h, 0) + c
        vec = nxt
    return vec.get(G.identity, 0)


def _orbit_labels(perm) -> tuple[int, ...]:
    lab = list(range(len(perm)))
    for i in range(len(perm)):
        j = perm[i]
        while j != i:
            lab[j] = min(lab[j], lab[i])
            j = perm[j]
    return tuple(lab)


def _join(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    parent = list(range(len(a)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab in (a, b):
        for i, l in enumerate(lab):
            ri, rl = find(i), find(l)
            if ri != rl:
                parent[max(ri, rl)] = min(ri, rl)
    return tuple(find(i) for i in range(len(a)))


def dp_transitive(profile: Profile, cap: int = DP_CAP) -> tuple[int, int]:
    """``(all, transitive)`` by DP over (product so far, orbit partition of the factors so far)."""
    d = profile.d
    if d > cap:
        raise PreconditionError(f"degree {d} over the orbit-DP cap {cap}")
    if d == 0:
        return 1, 1
    G = symmetric_group(d)
    n = len(G.elements)
    orbits = [_orbit_labels(e) for e in G.elements]
    states = {(G.identity, tuple(range(d))): 1}
    join_cache: dict = {}
    for t in profile.types:
        members = G.class_members(t)
        nxt: dict = {}
        for (g, part), c in states.items():
            base = g * n
            for s in members:
                key = (part, orbits[s])
                j = join_cache.get(key)
                if j is None:
                    j = join_cache[key] = _join(part, orbits[s])
                st = (G.mult[base + s], j)
                nxt[st] = nxt.get(st, 0) + c
        states = nxt
    whole = (0,) * d
    all_count = sum(c for (g, _), c in states.items() if g == G.identity)
    return all_count, states.get((G.identity, whole), 0)


# -- connected counts by splitting off the orbit of the first letter --------

def _canonical(types) -> tuple:
    """Drop identity types and collect the rest as sorted (type, count) pairs."""
    c = Counter(t for t in types if not is_identity_type(t))
    return tuple(sorted(c.items(), reverse=True))


@lru_cache(maxsize=None)
def _submultisets(mu: Partition, k: int) -> tuple[tuple[Partition, Partition], ...]:
    """Ways to split the parts of ``mu`` into a sub-multiset of size ``k`` and the rest."""
    counts = sorted(Counter(mu).items(), reverse=True)
    out = []

    def rec(i, chosen, left):
        if i == len(counts):
            if left == 0:
                inside = tuple(sorted((p for p, m in chosen for _ in range(m)), reverse=True))
                rest = tuple(sorted((p for (p, tot), (_, m) in zip(counts, chosen) for _ in range(tot - m)), reverse=True))
                out.append((inside, rest))
            return
        p, tot = counts[i]
        for m in range(min(tot, left // p) + 1):
            rec(i + 1, chosen + [(p, m)], left - p * m)

    rec(0, [], k)
    return tuple(out)


def _distributions(m: int, parts: int):
    """Compositions of ``m`` into ``parts`` nonnegative pieces."""
    if parts == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in _distributions(m - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _all_count(d: int, canon: tuple) -> int:
    if d == 0:
        return 1 if not canon else 0
    types = [(t, ) * c for t, c in canon]
    flat = tuple(t for group in types for t in group)
    return count_factorizations(Profile(d, flat))


@lru_cache(maxsize=None)
def _transitive_count(d: int, canon: tuple) -> int:
    """``T_d = N_d - sum_{k<d} C(d-1, k-1) sum T_k(inside) N_{d-k}(rest)``."""
    total = _all_count(d, canon)
    for k in range(1, d):
        total -= comb(d - 1, k - 1) * _split_sum(d, k, canon)
    return total


def _split_sum(d: int, k: int, canon: tuple) -> int:
    # per group of m equal types: distribute the m copies over the possible splits
    per_group = []
    for mu, m in canon:
        splits = _submultisets(mu, k)
        if not splits:
            return 0
        options = []
        for dist in _distributions(m, len(splits)):
            weight = factorial(m)
            inside, rest = [], []
            for (a, b), c in zip(splits, dist):
                weight //= factorial(c)
                inside += [a] * c
                rest += [b] * c
            options.append((weight, inside, rest))
        per_group.append(options)
    total = 0
    for choice in product(*per_group):
        weight = prod(c[0] for c in choice)
        inside = [t for c in choice for t in c[1]]
        rest = [t for c in choice for t in c[2]]
        T = _transitive_count(k, _canonical(inside))
        if T == 0:
            continue
        total += weight * T * _all_count(d - k, _canonical(rest))
    return total


@dataclass(frozen=True)
class HurwitzResult:
    profile: Profile
    all_tuples: int
    transitive_tuples: int
    methods: tuple[str, ...]

    @property
    def hurwitz_number(self) -> Fraction:
        return Fraction(self.transitive_tuples, factorial(self.profile.d))

    def to_json(self) -> dict:
        h = self.hurwitz_number
        return {
            "degree": self.profile.d,
            "profile": self.profile.to_text(),
            "branch_points": self.profile.w,
            "all_tuples": str(self.all_tuples),
            "transitive_tuples": str(self.transitive_tuples),
            "hurwitz_number": str(h.numerator) if h.denominator == 1 else f"{h.numerator}/{h.denominator}",
            "methods": list(self.methods),
        }


def count_transitive(profile: Profile, cross_check: bool = True) -> HurwitzResult:
    """Connected counts; for ``d <= 5`` the orbit-partition DP is run and must agree."""
    d = profile.d
    canon = _canonical(profile.types)
    all_n = count_factorizations(profile)
    trans = _transitive_count(d, canon) if d else 1
    methods = ["frobenius", "orbit-splitting"]
    if cross_check and d <= DP_CAP:
        a, t = dp_transitive(profile)
        if (a, t) != (all_n, trans):
            raise FalsificationError("character count and orbit DP disagree",
                                     {"profile": profile.to_text(), "characters": [all_n, trans], "dp": [a, t]})
        methods.append("orbit-dp")
    if not 0 <= trans <= all_n:
        raise FalsificationError("transitive count out of range", {"profile": profile.to_text()})
    return HurwitzResult(profile, all_n, trans, tuple(methods))


def simple_hurwitz_number(d: int, g: int, cross_check: bool = True) -> Fraction:
    return simple_hurwitz(d, g, cross_check).hurwitz_number


def simple_hurwitz(d: int, g: int, cross_check: bool = True) -> HurwitzResult:
    """Connected covers of degree ``d`` and genus ``g`` with ``2g + 2d - 2`` simple branch points."""
    if d < 1:
        raise PreconditionError("degree must be positive")
    w = 2 * g + 2 * d - 2
    if w < 0:
        raise PreconditionError(f"2g + 2d - 2 = {w} is negative")
    if d == 1:
        n = 1 if w == 0 else 0
        return HurwitzResult(Profile(1, ()), n, n, ("trivial",))
    return count_transitive(Profile.simple(d, w), cross_check)


# -- recorded constants -----------------------------------------------------

def plane_hurwitz_dimension(d: int) -> int:
    """Dimension of the space of plane projections of degree ``d`` modulo the center's group."""
    return d * (d + 3) // 2 - 3


@dataclass(frozen=True)
class RecordedConstant:
    key: str
    value: int
    expression: str
    claim: str
    derived: bool = False

    def to_json(self) -> dict:
        return {"key": self.key, "value": self.value, "expression": self.expression,
                "claim": self.claim, "derived": self.derived}


def plane_hurwitz_constants() -> tuple[RecordedConstant, ...]:
    """Literature values, stored rather than derived; only their arithmetic is checked here."""
    t = (3 ** 10 - 1) // 2
    out = (
        RecordedConstant("h_plane_3", 40, "40", "plane Hurwitz number of cubics (equals the simple Hurwitz number in degree 3, genus 1)"),
        RecordedConstant("h_plane_4", 120 * t, "120*(3^10-1)/2", "plane Hurwitz number of quartics"),
        RecordedConstant("h_simple_4_3", 255 * t, "255*(3^10-1)/2", "simple Hurwitz number in degree 4, genus 3"),
        RecordedConstant("deg_B", 3762, "3762", "degree of the branch locus map for plane quartics"),
        RecordedConstant("beta8_I3", 40 * 210, "40*210", "characteristic number of cubics through 8 points"),
        RecordedConstant("beta13_I4", 120 * 2535, "120*2535", "characteristic number of quartics through 13 points"),
        RecordedConstant("dim_PH_4", plane_hurwitz_dimension(4), "4*(4+3)/2-3", "dimension of the plane Hurwitz space of quartics", True),
    )
    expected = {"h_plane_4": 3542880, "h_simple_4_3": 7528620, "beta8_I3": 8400, "beta13_I4": 304200, "dim_PH_4": 11}
    for c in out:
        if c.key in expected and c.value != expected[c.key]:
            raise FalsificationError(f"recorded constant {c.key} has inconsistent arithmetic", c.to_json())
    return out
