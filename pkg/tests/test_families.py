"""Instance generators: the apex family, the blow-up family, and relaxations."""

from fractions import Fraction

import pytest

from polyrank.closure import cch_lower_bound, cg_rank, elementary_closure
from polyrank.errors import EmptyPolyhedron, InvalidWitness
from polyrank.families import (
    check_relaxation,
    gen_01_segment,
    gen_pk_qk,
    gen_qalpha,
    gen_qt,
    gen_unit_simplex,
)
from polyrank.lattice import integer_points, relint_integer_points
from polyrank.polyhedron import Polyhedron


def test_gen_qt_shape():
    Q = gen_qt(2)
    assert set(Q.vertices) == {(0, 0), (0, 1), (2, Fraction(1, 2))}
    with pytest.raises(ValueError):
        gen_qt(0)


def test_gen_qt_integer_points_stay_put():
    for t in range(1, 7):
        assert set(integer_points(gen_qt(t)).points) == {(0, 0), (0, 1)}


def test_gen_qt_closure_pulls_apex_half_step():
    # each closure moves the apex in by 1/2, so the point (t - j/2, 1/2)
    # stays inside the j-th closure all the way down
    for t in (2, 3):
        cur = gen_qt(t)
        for j in range(1, 2 * t + 1):
            cur = elementary_closure(cur)
            assert cur.contains((t - Fraction(j, 2), Fraction(1, 2)))
        assert cur == Polyhedron.from_vrep([(0, 0), (0, 1)])


def test_gen_pk_qk_shape():
    P3, Q3 = gen_pk_qk(3)
    assert len(relint_integer_points(P3).points) == 2
    assert Q3.contains((Fraction(1, 2), -Fraction(3, 2)))
    assert check_relaxation(P3, Q3)
    with pytest.raises(ValueError):
        gen_pk_qk(0)


def test_gen_pk_qk_interior_count_scales():
    for k in range(2, 7):
        Pk, Qk = gen_pk_qk(k)
        assert len(relint_integer_points(Pk).points) == k - 1
        assert cch_lower_bound(
            Qk, (Fraction(1, 2), -Fraction(k, 2)), (0, -1)) == -(-k // 2)


def test_gen_unit_simplex():
    S = gen_unit_simplex(3)
    assert len(S.vertices) == 4
    assert S.volume() == Fraction(1, 6)
    assert cg_rank(S) == 0
    with pytest.raises(ValueError):
        gen_unit_simplex(0)


def test_gen_01_segment():
    S = gen_01_segment(2)
    assert set(S.vertices) == {(0, 0), (0, 1)}
    assert gen_01_segment(1) == Polyhedron.from_vrep([(0,), (1,)])


def test_gen_qalpha_on_the_segment():
    S = gen_01_segment(2)
    Q = gen_qalpha(S, (1, 0), 5)
    assert (5, Fraction(1, 2)) in Q.vertices
    assert set(integer_points(Q).points) == {(0, 0), (0, 1)}
    assert cch_lower_bound(Q, (5, Fraction(1, 2)), (1, 0)) >= 5
    assert check_relaxation(S, Q)


def test_gen_qalpha_depth_reflects_in_rank():
    S = gen_01_segment(2)
    for alpha in (1, 2, 3):
        Q = gen_qalpha(S, (1, 0), alpha)
        apex = next(v for v in Q.vertices if v[0] > 0)
        assert cch_lower_bound(Q, apex, (1, 0)) >= alpha
        assert cg_rank(Q) >= alpha


def test_gen_qalpha_escalates_past_interior_anchor():
    # the barycenter of [0,2] x [0,1] plus (1,0) stays inside, so the
    # anchor slides toward the exit facet before spiking
    P = Polyhedron.from_vrep([(0, 0), (2, 0), (0, 1), (2, 1)])
    Q = gen_qalpha(P, (1, 0), 2)
    assert check_relaxation(P, Q)
    apex = next(v for v in Q.vertices if v[0] > 2)
    assert apex == (Fraction(7, 2), Fraction(1, 2))


def test_gen_qalpha_unbounded_base_keeps_recession():
    # half-strip [0,inf) x [0,1]; only the backward direction leaves a
    # lattice-free cylinder
    P = Polyhedron.from_vrep([(0, 0), (0, 1)], rays=[(1, 0)])
    Q = gen_qalpha(P, (-1, 0), 3)
    assert Q.rays == P.rays
    assert check_relaxation(P, Q)


def test_gen_qalpha_rejects_bad_directions():
    S = gen_01_segment(2)
    with pytest.raises(InvalidWitness):
        gen_qalpha(S, (0, 1), 1)  # the cylinder is the y-axis line, not free? no:
        # conv{(0,0),(0,1)} + span{(0,1)} is the whole y-axis, whose relative
        # interior is full of integer points
    big = Polyhedron.from_vrep([(0, 0), (2, 0), (0, 2)])
    with pytest.raises(InvalidWitness):
        gen_qalpha(big, (1, 0), 1)  # strip 0 <= y <= 2 catches (0, 1)
    half = Polyhedron.from_vrep([(0, 0), (0, 1)], rays=[(1, 0)])
    with pytest.raises(InvalidWitness):
        gen_qalpha(half, (1, 0), 1)  # recession direction
    with pytest.raises(ValueError):
        gen_qalpha(S, (1, 0), 0)
    with pytest.raises(EmptyPolyhedron):
        gen_qalpha(Polyhedron.empty(2), (1, 0), 1)


def test_check_relaxation_rejects():
    S = gen_01_segment(2)
    # not a superset
    assert not check_relaxation(S, Polyhedron.from_vrep([(0, 0)]))
    # gains the integer point (1, 0)
    assert not check_relaxation(S, Polyhedron.from_vrep([(0, 0), (0, 1), (1, 0)]))
