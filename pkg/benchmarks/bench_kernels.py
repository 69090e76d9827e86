"""Compare the compiled kernels with their pure-Python fallbacks.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from planeproj import _pure, kernels
from planeproj.hurwitz import Profile, symmetric_group


def rank_case(rows, cols, p, seed=0):
    rng = random.Random(seed)
    m = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
    return lambda impl: impl.rank_mod_p([r[:] for r in m], p)


def tuples_case(profile_text, d):
    P = Profile.parse(profile_text, d)
    G = symmetric_group(d)
    mult = list(G.mult)
    classes = [G.class_members(t) for t in P.types]
    return lambda impl: impl.count_identity_tuples(mult, len(G.elements), classes, G.identity)


CASES = [
    ("rank_mod_p 28x36 mod 101", rank_case(28, 36, 101)),
    ("rank_mod_p 66x66 mod 65521", rank_case(66, 66, 65521)),
    ("count_identity_tuples S4, 6 transpositions", tuples_case("2;2;2;2;2;2", 4)),
    ("count_identity_tuples S4, 8 mixed", tuples_case("2;2;3;3;2;2;4;2", 4)),
    ("count_identity_tuples S5, 6 transpositions", tuples_case("2;2;2;2;2;2", 5)),
]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled is None:
        print("compiled extension not built; only the Python fallback is timed")
    print(f"{'case':48s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, run in CASES:
        t_py = min(timeit.repeat(lambda: run(_pure), number=1, repeat=args.repeat))
        if kernels.compiled is not None:
            assert run(kernels.compiled) == run(_pure), name
            t_c = min(timeit.repeat(lambda: run(kernels.compiled), number=1, repeat=args.repeat))
            print(f"{name:48s} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:7.1f}x")
        else:
            print(f"{name:48s} {t_py:10.4f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
