import random

import pytest

from planeproj.curve import SMOOTH
from planeproj.errors import PreconditionError
from planeproj.field import GF
from planeproj.linsys import (Divisor, curves_through, dim_linear_system, h0_adjoint, line_sections,
                              linear_system_dim, realizes_as_projection, smooth_curve_through,
                              verify_theorem1_sample)
from planeproj.pointconf import general_position
from planeproj.points import Point, collinear, meet

K = GF(11)


def on_line(n, offset=0):
    """``n`` points of the line ``x = z``."""
    return [Point((1, k + offset, 1), K) for k in range(n)]


@pytest.fixture(scope="module")
def quintic_with_line():
    """A smooth quintic through five points of the line ``x = z`` and one more point."""
    extra = Point((0, 0, 1), K)
    C = smooth_curve_through(K, 5, on_line(5) + [extra], random.Random(18))
    return C, extra


def test_curves_through_dimension():
    assert len(curves_through(K, 2, [])) == 6
    assert len(curves_through(K, 2, on_line(5))) == 3
    assert len(curves_through(K, 2, general_position(K, 5, random.Random(1)))) == 1


def test_divisor_validation(quintic_with_line):
    C, _ = quintic_with_line
    with pytest.raises(ValueError):
        Divisor.from_points(C, [on_line(1)[0]] * 2)
    off = next(P for P in (Point((1, k, 0), K) for k in range(11)) if C.F.evaluate(P) != 0)
    with pytest.raises(PreconditionError):
        Divisor.from_points(C, [off])


def test_h0_adjoint_examples(quintic_with_line):
    C, _ = quintic_with_line
    assert h0_adjoint(Divisor.from_points(C, on_line(5)), 2) == 3
    assert h0_adjoint(Divisor(C, ()), 2) == 6
    assert h0_adjoint(Divisor(C, ()), -1) == 0


def test_h0_adjoint_quartic_general():
    pts = list(general_position(K, 4, random.Random(7)))
    C = smooth_curve_through(K, 4, pts, random.Random(8))
    assert h0_adjoint(Divisor.from_points(C, pts), 1) == 0


def test_line_section_moves(quintic_with_line):
    C, _ = quintic_with_line
    D = Divisor.from_points(C, on_line(5))
    rep = dim_linear_system(D)
    assert (rep.genus, rep.h0_KminusD, rep.dim_D) == (6, 3, 2)
    assert rep.moves and rep.base_points == ()
    w = realizes_as_projection(D)
    assert all(w.line.evaluate(P) == 0 for P in D.points)
    assert C.F.evaluate(w.center) != 0 and w.other_line.evaluate(w.center) == 0


def test_general_divisor_rigid():
    pts = list(general_position(K, 5, random.Random(2)))
    C = smooth_curve_through(K, 5, pts, random.Random(2))
    rep = dim_linear_system(Divisor.from_points(C, pts))
    assert rep.dim_D == 0 and not rep.moves
    with pytest.raises(PreconditionError):
        realizes_as_projection(Divisor.from_points(C, pts))


def test_base_point_detected(quintic_with_line):
    C, q = quintic_with_line
    D = Divisor.from_points(C, on_line(4) + [q])
    rep = dim_linear_system(D)
    assert rep.dim_D == 1 and rep.base_points == (q,)
    with pytest.raises(PreconditionError, match="base points"):
        realizes_as_projection(D)


def test_small_degree_refused():
    pts = on_line(4)
    C = smooth_curve_through(K, 4, pts, random.Random(5))
    D = Divisor.from_points(C, pts)
    assert dim_linear_system(D).moves
    with pytest.raises(PreconditionError):
        realizes_as_projection(D)


def test_polar_fixes_center(quintic_with_line):
    C, _ = quintic_with_line
    sections = line_sections(C)
    assert len(sections) >= 2
    (l1, D1), (l2, D2) = next((a, b) for a in sections for b in sections
                              if a[0] is not b[0] and C.F.evaluate(meet(a[0], b[0])) != 0)
    w = realizes_as_projection(Divisor.from_points(C, D1), Divisor.from_points(C, D2))
    assert w.line.is_proportional(l1) and w.other_line.is_proportional(l2)
    with pytest.raises(PreconditionError):
        realizes_as_projection(Divisor.from_points(C, D1), Divisor.from_points(C, D1))
    crossing = next(b for b in sections if b[0] is not l1 and C.F.evaluate(meet(l1, b[0])) == 0)
    with pytest.raises(PreconditionError, match="on the curve"):
        realizes_as_projection(Divisor.from_points(C, D1), Divisor.from_points(C, crossing[1]))


def test_degree_d_minus_2_never_moves(quintic_with_line):
    C, _ = quintic_with_line
    rng = random.Random(0)
    pts = C.rational_points
    for _ in range(100):
        D = Divisor.from_points(C, rng.sample(pts, 3))
        assert linear_system_dim(D) <= 0


def test_dimension_matches_line_section_count(quintic_with_line):
    C, _ = quintic_with_line
    for line, pts in line_sections(C):
        assert len(pts) == 5 and all(collinear(pts[0], pts[1], P) for P in pts)
        assert dim_linear_system(Divisor.from_points(C, pts)).dim_D == 2


def test_projection_sample_small(quintic_with_line):
    C, _ = quintic_with_line
    assert C.smoothness.status == SMOOTH
    s = verify_theorem1_sample(C, 60, seed=1)
    assert s.trials == 60 and s.falsifications == 0 and s.small_moving == 0
    assert s.moving_bpf == s.centers
