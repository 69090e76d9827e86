import random
from fractions import Fraction
from itertools import product
from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from planeproj import hurwitz
from planeproj.errors import PreconditionError
from planeproj.hurwitz import (Profile, brute_force_count, character, character_table, class_size,
                               count_factorizations, count_transitive, cycle_type, dp_count, dp_transitive,
                               hook_dimension, partitions_of, plane_hurwitz_constants, simple_hurwitz,
                               simple_hurwitz_number, symmetric_group)


# -- partitions and characters --------------------------------------------

@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (3, 3), (4, 5), (7, 15), (10, 42)])
def test_partition_counts(n, count):
    parts = partitions_of(n)
    assert len(parts) == count and len(set(parts)) == count
    assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in parts)


def test_partitions_reverse_lex():
    assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_s3_characters():
    assert character((2, 1), (3,)) == -1
    assert character((2, 1), (2, 1)) == 0
    assert character((1, 1, 1), (2, 1)) == -1
    assert character_table(3).dims == (1, 2, 1)


def test_s4_table_against_known_values():
    # rows (4),(3,1),(2,2),(2,1,1),(1^4); columns in the same order
    known = [
        [1, 1, 1, 1, 1],
        [-1, 0, -1, 1, 3],
        [0, -1, 2, 0, 2],
        [1, 0, -1, -1, 3],
        [-1, 1, 1, -1, 1],
    ]
    T = character_table(4)
    for lam, row in zip(T.rows, known):
        assert [T.chi(lam, mu) for mu in T.classes] == row


@pytest.mark.parametrize("d", range(1, 9))
def test_character_table_orthogonal(d):
    T = character_table(d)  # raises on any failure
    assert sum(f * f for f in T.dims) == factorial(d)


@pytest.mark.parametrize("d", range(1, 7))
def test_characters_by_counting_fixed_points(d):
    """The permutation character on letters is the trivial plus the standard character."""
    G = symmetric_group(d)
    for perm, mu in zip(G.elements, G.types):
        fixed = sum(1 for i, j in enumerate(perm) if i == j)
        std = character((d - 1, 1), mu) if d > 1 else 0
        assert fixed == 1 + std


def test_hook_dimension():
    assert hook_dimension((3, 2)) == 5 and hook_dimension((4, 2, 1)) == 35


def test_class_sizes_sum():
    for d in range(1, 8):
        assert sum(class_size(mu) for mu in partitions_of(d)) == factorial(d)
    G = symmetric_group(4)
    assert sum(1 for t in G.types if t == (2, 1, 1)) == class_size((2, 1, 1)) == 6


def test_cycle_type():
    assert cycle_type((1, 2, 0, 4, 3)) == (3, 2)


def test_character_cap():
    with pytest.raises(PreconditionError):
        character_table(10)


# -- counting tuples --------------------------------------------------------

@pytest.mark.parametrize("w,expected", [(0, 1), (2, 3), (4, 27), (6, 243), (3, 0), (5, 0)])
def test_transposition_tuples_s3(w, expected):
    assert count_factorizations(Profile.simple(3, w)) == expected


def test_profile_parse():
    P = Profile.parse("2,1;2,1;3")
    assert P.d == 3 and P.w == 3 and P.types[2] == (3,)
    assert Profile.parse("2;2;3", 4).types == ((2, 1, 1), (2, 1, 1), (3, 1))
    with pytest.raises(ValueError):
        Profile.parse("2,1;3,1")
    assert Profile.simple(4, 12).genus == 3


def _brute_direct(profile):
    """Enumeration with explicit permutation composition (no kernel)."""
    G = symmetric_group(profile.d)
    members = [[G.elements[i] for i in G.class_members(t)] for t in profile.types]
    ident = tuple(range(profile.d))
    count = 0
    for tup in product(*members):
        acc = ident
        for s in tup:
            acc = tuple(acc[s[i]] for i in range(profile.d))
        count += acc == ident
    return count


def _random_profile(rng, d, w):
    types = [rng.choice(partitions_of(d)) for _ in range(w)]
    return Profile(d, tuple(types))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 5), st.integers(0, 12))
def test_frobenius_matches_dp_and_brute(seed, d, w):
    rng = random.Random(seed)
    P = _random_profile(rng, d, w)
    N = count_factorizations(P)
    assert N == dp_count(P)
    size = prod(class_size(t) for t in P.types[:-1]) if P.types else 1
    if size <= 200_000:
        assert N == brute_force_count(P)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.integers(0, 5))
def test_kernel_brute_matches_direct(seed, d, w):
    P = _random_profile(random.Random(seed), d, w)
    assert brute_force_count(P) == _brute_direct(P)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6), st.integers(0, 14))
def test_sign_parity(seed, d, w):
    P = _random_profile(random.Random(seed), d, w)
    odd = sum(d - len(t) for t in P.types) % 2
    if odd:
        assert count_factorizations(P) == 0


# -- transitive counts and Hurwitz numbers ----------------------------------

@pytest.mark.parametrize("d,g,h", [
    (1, 0, Fraction(1)), (2, 0, Fraction(1, 2)), (3, 0, Fraction(4)), (3, 1, Fraction(40)),
    (4, 0, Fraction(120)), (5, 0, Fraction(8400)), (2, 1, Fraction(1, 2)),
])
def test_simple_hurwitz_numbers(d, g, h):
    assert simple_hurwitz_number(d, g) == h


def test_genus_zero_closed_form():
    # d^(d-3) (2d-2)! / d!
    for d in range(2, 7):
        expected = Fraction(d ** (d - 3) if d >= 3 else 1, d ** (3 - d) if d < 3 else 1)
        expected *= Fraction(factorial(2 * d - 2), factorial(d))
        assert simple_hurwitz_number(d, 0, cross_check=False) == expected


def test_quartic_genus_3():
    r = simple_hurwitz(4, 3)
    assert r.hurwitz_number == 7528620 and "orbit-dp" in r.methods


def test_transitive_at_most_all():
    r = count_transitive(Profile.parse("2,1,1;2,1,1;3,1;3,1"))
    assert 0 <= r.transitive_tuples <= r.all_tuples


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 5), st.integers(0, 8))
def test_orbit_split_matches_dp(seed, d, w):
    P = _random_profile(random.Random(seed), d, w)
    r = count_transitive(P, cross_check=False)
    assert (r.all_tuples, r.transitive_tuples) == dp_transitive(P)


def test_disconnected_only():
    # two transpositions equal to each other never generate a transitive group in S3
    assert count_transitive(Profile.simple(3, 2)).transitive_tuples == 0


def test_json_is_exact():
    out = simple_hurwitz(2, 0).to_json()
    assert out["hurwitz_number"] == "1/2" and out["transitive_tuples"] == "1"


def test_negative_branch_count_rejected():
    with pytest.raises(PreconditionError):
        simple_hurwitz(1, -1)


# -- recorded constants -----------------------------------------------------

def test_recorded_constants():
    c = {k.key: k for k in plane_hurwitz_constants()}
    assert c["h_plane_3"].value == simple_hurwitz_number(3, 1)
    assert c["h_plane_4"].value == 3542880 and c["h_simple_4_3"].value == 7528620
    assert c["beta8_I3"].value == 8400 and c["beta13_I4"].value == 304200
    assert c["dim_PH_4"].value == 11 and c["dim_PH_4"].derived
    assert not c["deg_B"].derived and c["deg_B"].value == 3762
    assert hurwitz.plane_hurwitz_dimension(3) == 6
