"""Generators for the pathological relaxation families.

All constructions are exact and validated on the spot: the triangle
family with sliding apex, the blow-up family whose member k carries
k - 1 interior lattice points, and the generic unbounded-rank
relaxation built from a lattice-free cylinder direction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .config import SearchLimits
from .errors import EmptyPolyhedron, InternalInvariantError, InvalidWitness
from .exact import IntVec, dot, is_zero_vector, vec_add, vec_scale
from .lattice import (
    integer_points,
    is_relatively_lattice_free,
    line_free,
    zonotope_truncation,
)
from .polyhedron import Polyhedron


def gen_qt(t: int) -> Polyhedron:
    """The triangle conv{(0,0), (0,1), (t,1/2)} with apex at depth t."""
    if t < 1:
        raise ValueError("the apex depth must be a positive integer")
    return Polyhedron.from_vrep([(0, 0), (0, 1), (t, Fraction(1, 2))])


def gen_pk_qk(k: int) -> tuple[Polyhedron, Polyhedron]:
    """Member k of the blow-up family and its spiked relaxation.

    P_k is given by x1 >= 0, x2 >= 0, x2 <= k, k x1 - x2 <= k (the last
    row with the denominator cleared); it has k - 1 interior lattice
    points.  Q_k = conv(P_k, (1/2, -k/2)) is a relaxation of P_k.
    """
    if k < 1:
        raise ValueError("the family index must be a positive integer")
    Pk = Polyhedron.from_hrep([(-1, 0), (0, -1), (0, 1), (k, -1)], [0, 0, k, k])
    Qk = Pk.hull_with_point((Fraction(1, 2), -Fraction(k, 2)))
    return Pk, Qk


def gen_unit_simplex(n: int) -> Polyhedron:
    """conv{0, e_1, ..., e_n}."""
    if n < 1:
        raise ValueError("the dimension must be a positive integer")
    verts = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return Polyhedron.from_vrep(verts)


def gen_01_segment(n: int) -> Polyhedron:
    """The segment conv{0, e_n} inside R^n; for n >= 2 a drop direction
    like e_1 keeps its cylinder lattice-free."""
    if n < 1:
        raise ValueError("the dimension must be a positive integer")
    return Polyhedron.from_vrep([(0,) * n, tuple(int(j == n - 1) for j in range(n))])


def _escalate(P: Polyhedron, x: Sequence[Fraction], v: IntVec) -> tuple[Fraction, ...]:
    """Slide x along v to keep the side condition x + v outside P.

    Returns x + (s - 1/2) v where s is the exact exit parameter of the
    ray x + t v; the half-open segment from a relative interior point to
    the boundary stays in the relative interior.
    """
    s: Optional[Fraction] = None
    for a, rhs in P.ineqs:
        w = dot(a, v)
        if w > 0:
            bound = (rhs - dot(a, x)) / w
            s = bound if s is None or bound < s else s
    if s is None:
        raise InternalInvariantError("escape direction never exits the polyhedron")
    return tuple(c + (s - Fraction(1, 2)) * d for c, d in zip(x, v))


def gen_qalpha(P: Polyhedron, v: Sequence[int], alpha: int,
               limits: Optional[SearchLimits] = None) -> Polyhedron:
    """The relaxation conv(V, x + alpha v) + rec(P) of depth alpha.

    x is a relative interior point of P with x + v outside P.  The
    construction is a relaxation exactly when the cylinder P + span{v}
    is relatively lattice-free, which is verified up front; the returned
    polyhedron provably has the same integer points as P.
    """
    if alpha < 1:
        raise ValueError("the depth must be a positive integer")
    if P.is_empty:
        raise EmptyPolyhedron("relaxations of the empty polyhedron")
    w = tuple(int(c) for c in v)
    if is_zero_vector(w) or P.in_recession(w):
        raise InvalidWitness("the direction must leave the recession cone")
    free = (line_free(P, w, limits) if P.is_bounded()
            else is_relatively_lattice_free(P.add_line(w), limits))
    if not free:
        raise InvalidWitness("the cylinder along the direction meets the lattice")
    x = P.relint_point()
    if P.contains(vec_add(x, w)):
        x = _escalate(P, x, w)
        if not P.relint_contains(x) or P.contains(vec_add(x, w)):
            raise InternalInvariantError("escalated anchor point is misplaced")
    apex = vec_add(x, vec_scale(alpha, w))
    Q = Polyhedron.from_vrep(P.vertices + (apex,), P.rays, P.lines)
    dirs = Q.rays + Q.lines + tuple(tuple(-c for c in l) for l in Q.lines)
    box = (Q if Q.is_bounded()
           else zonotope_truncation(Q.vertices, dirs, Q.n, limits))
    for z in integer_points(box, limits).points:
        if not P.contains(z):
            raise InternalInvariantError("relaxation gained the integer point "
                                         f"{z}")
    return Q


def check_relaxation(P: Polyhedron, Q: Polyhedron,
                     limits: Optional[SearchLimits] = None) -> bool:
    """Whether Q is a relaxation of P: Q ⊇ P and Q ∩ Z^n = P ∩ Z^n."""
    if not Q.contains_poly(P):
        return False
    if Q.is_bounded():
        inside = integer_points(Q, limits).points
    else:
        dirs = Q.rays + Q.lines + tuple(tuple(-c for c in l) for l in Q.lines)
        inside = integer_points(
            zonotope_truncation(Q.vertices, dirs, Q.n, limits), limits).points
    return all(P.contains(z) for z in inside)
