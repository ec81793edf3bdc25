"""Lattice point enumeration against a naive bounding-box oracle."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrank.errors import (
    EmptyGeneratorList,
    EmptyPolyhedron,
    NotPrimitive,
    Unbounded,
    ZeroVector,
)
from polyrank.exact import is_unimodular, mat_vec
from polyrank.lattice import (
    hilbert_generating_set,
    integer_feasible,
    integer_points,
    is_lattice_free,
    is_relatively_lattice_free,
    lattice_to_last_coords,
    line_free,
    project_out_lines,
    relint_integer_point,
    relint_integer_points,
    zonotope_truncation,
)
from polyrank.polyhedron import Polyhedron

coords = st.builds(Fraction, st.integers(-8, 8), st.integers(1, 3))


def polytopes(n, max_pts=6):
    pt = st.lists(coords, min_size=n, max_size=n).map(tuple)
    return st.lists(pt, min_size=1, max_size=max_pts).map(Polyhedron.from_vrep)


def box_scan(P, relative=False):
    """Every lattice point of a floor/ceil bounding box, filtered by membership."""
    lo = [math.floor(min(v[i] for v in P.vertices)) for i in range(P.n)]
    hi = [math.ceil(max(v[i] for v in P.vertices)) for i in range(P.n)]
    inside = P.relint_contains if relative else P.contains
    return sorted(z for z in itertools.product(
        *[range(a, b + 1) for a, b in zip(lo, hi)]) if inside(z))


@settings(max_examples=50, deadline=None)
@given(polytopes(2))
def test_integer_points_match_box_scan_2d(P):
    rep = integer_points(P)
    assert rep.exhausted
    assert sorted(rep.points) == box_scan(P)


@settings(max_examples=25, deadline=None)
@given(polytopes(3, max_pts=5))
def test_integer_points_match_box_scan_3d(P):
    assert sorted(integer_points(P).points) == box_scan(P)


@settings(max_examples=40, deadline=None)
@given(polytopes(2))
def test_relint_points_match_box_scan(P):
    assert sorted(relint_integer_points(P).points) == box_scan(P, relative=True)


def test_integer_points_lower_dimensional():
    S = Polyhedron.from_vrep([(0, 0), (3, 6)])
    assert set(integer_points(S).points) == {(0, 0), (1, 2), (2, 4), (3, 6)}
    assert set(relint_integer_points(S).points) == {(1, 2), (2, 4)}


def test_integer_feasible_thin_triangle():
    # nonempty interior but no lattice point
    P = Polyhedron.from_vrep(
        [(Fraction(1, 4), Fraction(1, 4)),
         (Fraction(3, 4), Fraction(1, 4)),
         (Fraction(1, 4), Fraction(3, 4))])
    assert integer_feasible(P) is None
    assert is_lattice_free(P)


def test_integer_feasible_returns_a_point():
    P = Polyhedron.from_vrep([(0, 0), (2, 0), (0, 2)])
    z = integer_feasible(P)
    assert z is not None and P.contains(z)


def test_relatively_lattice_free_distinctions():
    # the segment [0,1] x {1/2} has no integer point at all
    S = Polyhedron.from_vrep([(0, Fraction(1, 2)), (1, Fraction(1, 2))])
    assert is_relatively_lattice_free(S)
    # [0,1] x {0} is full of integer points but none in the relative interior? no:
    # relint is the open segment, which misses Z^2 only when the length is <= 1
    T = Polyhedron.from_vrep([(0, 0), (1, 0)])
    assert is_relatively_lattice_free(T)
    W = Polyhedron.from_vrep([(0, 0), (2, 0)])
    assert not is_relatively_lattice_free(W)
    assert relint_integer_point(W) == (1, 0)


def test_line_free_examples():
    seg = Polyhedron.from_vrep([(0, 0), (0, 1)])
    assert line_free(seg, (1, 0))
    assert line_free(seg, (1, 1))
    sq = Polyhedron.from_vrep([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert line_free(sq, (1, 0))
    assert not line_free(sq, (1, 1))  # the cylinder catches (1, 1) + (1, 1)t
    big = Polyhedron.from_vrep([(0, 0), (2, 0), (0, 2)])
    assert not line_free(big, (1, 0))


def test_line_free_errors():
    seg = Polyhedron.from_vrep([(0, 0), (0, 1)])
    with pytest.raises(ZeroVector):
        line_free(seg, (0, 0))
    with pytest.raises(Unbounded):
        line_free(Polyhedron.from_vrep([(0, 0)], rays=[(1, 0)]), (0, 1))
    with pytest.raises(EmptyPolyhedron):
        line_free(Polyhedron.empty(2), (1, 0))
    assert not line_free(Polyhedron.from_vrep([(0,), (1,)]), (1,))


def test_hilbert_basis_quadrant():
    assert hilbert_generating_set([(1, 0), (0, 1)]) == ((0, 1), (1, 0))


def test_hilbert_basis_needs_interior_generator():
    # cone{(1,0),(1,2)}: (1,1) is irreducible but not a ray generator
    H = hilbert_generating_set([(1, 0), (1, 2)])
    assert H == ((1, 0), (1, 1), (1, 2))


def test_hilbert_basis_scaling_insensitive():
    assert hilbert_generating_set([(2, 0), (3, 6)]) == \
        hilbert_generating_set([(1, 0), (1, 2)])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                min_size=1, max_size=3))
def test_hilbert_basis_generates(gens):
    gens = [g for g in gens if g != (0, 0)]
    if not gens:
        return
    H = hilbert_generating_set(gens)
    cone = Polyhedron.from_vrep([(0, 0)], rays=gens)
    for h in H:
        assert cone.contains(h)
    # greedy descent writes every small cone point over H
    for z in integer_points(cone.intersect(
            Polyhedron.from_hrep([(1, 0), (0, 1)], [5, 5]))).points:
        rem = z
        progress = True
        while rem != (0, 0) and progress:
            progress = False
            for h in H:
                nxt = tuple(a - b for a, b in zip(rem, h))
                if cone.contains(nxt):
                    rem = nxt
                    progress = True
                    break
        assert rem == (0, 0)


def test_hilbert_nonpointed_keeps_lineality():
    H = hilbert_generating_set([(1, 0), (-1, 0), (0, 1)])
    assert (1, 0) in H and (-1, 0) in H
    with pytest.raises(EmptyGeneratorList):
        hilbert_generating_set([])


def test_zonotope_truncation_bounds():
    Z = zonotope_truncation([(0, 0)], [(1, 0), (0, 1)], 2)
    assert Z.is_bounded()
    assert Z.contains((1, 1)) and Z.contains((0, 0))


def test_lattice_to_last_coords():
    U = lattice_to_last_coords(((1, 2),))
    assert is_unimodular(U)
    assert mat_vec(U, (1, 2)) == (0, 1)
    with pytest.raises(NotPrimitive):
        lattice_to_last_coords(((2, 0),))


def test_project_out_lines_strip():
    P = Polyhedron.from_hrep([(0, 1), (0, -1)], [1, 0])
    Q, U, k = project_out_lines(P)
    assert k == 1 and Q.n == 1
    assert is_unimodular(U)
    assert Q.is_bounded() and Q.volume() == 1
    # integer point transfer
    assert Q.contains(mat_vec(U, (7, 1))[:1])
    assert not Q.contains(mat_vec(U, (7, 2))[:1])


def test_project_out_lines_pointed_is_identity():
    P = Polyhedron.from_vrep([(0, 0), (1, 0)])
    Q, U, k = project_out_lines(P)
    assert k == 0 and Q == P
