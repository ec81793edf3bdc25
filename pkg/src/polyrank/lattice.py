"""Integer points of rational polyhedra, exactly.

Bounded enumeration runs Fourier-Motzkin elimination once and then walks
the integer cells coordinate by coordinate with exact rational bounds, so
reported point sets are provably complete.  Unbounded feasibility
questions are reduced to bounded ones: lineality spaces are projected
away through a unimodular map, and recession cones are folded into a
zonotope truncation with the same integer points.  This module also
hosts Hilbert generating sets of rational cones, which drive the
Chvatal-Gomory closure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .config import SearchLimits
from .errors import (
    DimensionMismatch,
    EmptyGeneratorList,
    EmptyPolyhedron,
    InternalInvariantError,
    NotPrimitive,
    SearchCapExceeded,
    Unbounded,
    ZeroVector,
)
from .exact import (
    IntMat,
    IntVec,
    _ext_gcd,
    dot,
    hnf,
    identity,
    is_zero_vector,
    lattice_span_basis,
    mat_inverse_unimodular,
    mat_vec,
    primitive,
    scale_to_coprime,
    transpose,
    unimodular_complete,
    vec_add,
    vec_gcd,
    vec_scale,
    vec_sub,
)
from .polyhedron import Polyhedron

Row = tuple[IntVec, Fraction]


@dataclass(frozen=True)
class LatticePointReport:
    """Outcome of a lattice point enumeration.

    ``exhausted`` is True when the search provably visited every
    candidate, so ``points`` is the whole answer and not a sample.
    """

    points: tuple[IntVec, ...]
    exhausted: bool

    def __iter__(self) -> Iterator[IntVec]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


def _norm_row(coefs: Sequence, rhs) -> tuple[Optional[IntVec], Fraction]:
    """Coprime integer coefficients with a matching rational rhs.

    All-zero coefficient rows come back as ``(None, rhs)``; they are pure
    feasibility constants ``0 <= rhs``.
    """
    cf = [Fraction(x) for x in coefs]
    den = 1
    for f in cf:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = tuple(int(f * den) for f in cf)
    r = Fraction(rhs) * den
    g = vec_gcd(ints)
    if g == 0:
        return None, r
    return tuple(x // g for x in ints), r / g


def _hrows(P: Polyhedron) -> list[Row]:
    """Facet rows plus both directions of every equality row."""
    rows: list[Row] = list(P.ineqs)
    for a, rhs in P.eqs:
        rows.append((a, rhs))
        rows.append((tuple(-x for x in a), -rhs))
    return rows


def _fm_levels(rows: Sequence[Row], n: int) -> tuple[list[tuple[Row, ...]], bool]:
    """Per-coordinate bound rows by eliminating from the last coordinate.

    ``levels[k]`` holds inequalities in ``x_0 .. x_k`` with a nonzero
    coefficient on ``x_k``; once ``x_0 .. x_{k-1}`` are fixed they bound
    ``x_k`` exactly, because Fourier-Motzkin projection is lossless.  The
    second return value is False when a derived constant row ``0 <= rhs``
    is violated, i.e. when the system is infeasible.
    """
    cur: dict[IntVec, Fraction] = {}
    feasible = True

    def push(coefs: Optional[IntVec], rhs: Fraction) -> None:
        nonlocal feasible
        if coefs is None:
            if rhs < 0:
                feasible = False
        elif coefs not in cur or rhs < cur[coefs]:
            cur[coefs] = rhs

    for a, rhs in rows:
        push(*_norm_row(a, rhs))

    levels: list[tuple[Row, ...]] = []
    for k in range(n - 1, -1, -1):
        touch = sorted((c, r) for c, r in cur.items() if c[k] != 0)
        cur = {c: r for c, r in cur.items() if c[k] == 0}
        pos = [(c, r) for c, r in touch if c[k] > 0]
        neg = [(c, r) for c, r in touch if c[k] < 0]
        for cp, rp in pos:
            for cm, rm in neg:
                comb = tuple(-cm[k] * a + cp[k] * b for a, b in zip(cp, cm))
                push(*_norm_row(comb, -cm[k] * rp + cp[k] * rm))
        levels.append(tuple(touch))
    levels.reverse()
    for rhs in cur.values():
        # only all-zero coefficient rows can survive the last elimination
        raise InternalInvariantError("nonconstant row left after full elimination")
    return levels, feasible


def _scan(levels: Sequence[tuple[Row, ...]], n: int, cap: int,
          stop_after: Optional[int] = None) -> tuple[list[IntVec], bool]:
    """Walk the integer cells in ascending lexicographic order."""
    points: list[IntVec] = []
    prefix: list[int] = []
    budget = cap

    def bounds(k: int) -> tuple[int, int]:
        lo = hi = None
        for coefs, rhs in levels[k]:
            s = rhs - sum(coefs[j] * prefix[j] for j in range(k))
            val = s / coefs[k]
            if coefs[k] > 0:
                hi = val if hi is None or val < hi else hi
            else:
                lo = val if lo is None or val > lo else lo
        if lo is None or hi is None:
            raise Unbounded("integer enumeration over an unbounded direction")
        return math.ceil(lo), math.floor(hi)

    def rec(k: int) -> bool:
        nonlocal budget
        if k == n:
            points.append(tuple(prefix))
            return stop_after is not None and len(points) >= stop_after
        lo, hi = bounds(k)
        for val in range(lo, hi + 1):
            budget -= 1
            if budget < 0:
                raise SearchCapExceeded(f"lattice enumeration exceeded {cap} cells")
            prefix.append(val)
            done = rec(k + 1)
            prefix.pop()
            if done:
                return True
        return False

    stopped = rec(0)
    return points, not stopped


def integer_points(P: Polyhedron,
                   limits: Optional[SearchLimits] = None) -> LatticePointReport:
    """All integer points of a polytope, ascending lexicographically."""
    if P.is_empty:
        return LatticePointReport((), True)
    if not P.is_bounded():
        raise Unbounded("integer_points requires a polytope")
    limits = limits or SearchLimits()
    levels, ok = _fm_levels(_hrows(P), P.n)
    if not ok:
        raise InternalInvariantError("infeasible projection of a nonempty polytope")
    pts, _ = _scan(levels, P.n, limits.cell_cap)
    return LatticePointReport(tuple(pts), True)


def _first_integer_point(P: Polyhedron, limits: SearchLimits) -> Optional[IntVec]:
    if P.is_empty:
        return None
    levels, ok = _fm_levels(_hrows(P), P.n)
    if not ok:
        raise InternalInvariantError("infeasible projection of a nonempty polytope")
    pts, _ = _scan(levels, P.n, limits.cell_cap, stop_after=1)
    return pts[0] if pts else None


def zonotope_truncation(vertices: Sequence[Sequence], dirs: Sequence[IntVec],
                        n: int, limits: Optional[SearchLimits] = None) -> Polyhedron:
    """The polytope conv(vertices) + {0,1}-combinations of ``dirs``.

    When ``dirs`` generates the recession cone of ``conv(vertices) +
    cone(dirs)`` with integer vectors, this truncation has the same
    integer points up to subtracting integer multiples of the ``dirs``,
    so integer feasibility and integer hulls reduce to it.
    """
    limits = limits or SearchLimits()
    if len(dirs) > limits.subset_cap:
        raise SearchCapExceeded(
            f"{len(dirs)} recession directions exceed the subset cap "
            f"{limits.subset_cap}")
    sums: list[IntVec] = [(0,) * n]
    for r in dirs:
        sums.extend(vec_add(s, r) for s in list(sums))
    gens = {tuple(vec_add(v, s)) for v in vertices for s in sums}
    return Polyhedron.from_vrep(sorted(gens))


def integer_feasible(P: Polyhedron,
                     limits: Optional[SearchLimits] = None) -> Optional[IntVec]:
    """Some integer point of an arbitrary rational polyhedron, else None.

    None is a proof: lines are projected out unimodularly, rays are
    folded into a bounded truncation with the same integer points, and
    the remaining polytope is enumerated exhaustively.
    """
    limits = limits or SearchLimits()
    if P.is_empty:
        return None
    if P.lines:
        if len(P.lines) == P.n:
            return (0,) * P.n
        Q, U, k = project_out_lines(P)
        w = integer_feasible(Q, limits)
        if w is None:
            return None
        z = mat_vec(mat_inverse_unimodular(U), tuple(w) + (0,) * k)
        if not P.contains(z):
            raise InternalInvariantError("lifted lattice point escaped the polyhedron")
        return z
    if P.rays:
        return _first_integer_point(
            zonotope_truncation(P.vertices, P.rays, P.n, limits), limits)
    return _first_integer_point(P, limits)


def _strict_shrink(P: Polyhedron) -> Polyhedron:
    """Polyhedron whose integer points are exactly relint(P) ∩ Z^n.

    Every facet row a.x <= rhs (coprime integer a) tightens to
    a.x <= ceil(rhs) - 1; for integer points that is equivalent to
    strict inequality.  Implicit equalities stay as they are.
    """
    if P.is_empty or (not P.ineqs and not P.eqs):
        return P
    A = [a for a, _ in P.ineqs]
    b = [Fraction(math.ceil(rhs) - 1) for _, rhs in P.ineqs]
    C = [a for a, _ in P.eqs]
    d = [rhs for _, rhs in P.eqs]
    return Polyhedron.from_hrep(A, b, C, d)


def relint_integer_point(P: Polyhedron,
                         limits: Optional[SearchLimits] = None) -> Optional[IntVec]:
    """Some integer point in the relative interior of P, else None."""
    if P.is_empty:
        return None
    return integer_feasible(_strict_shrink(P), limits)


def relint_integer_points(P: Polyhedron,
                          limits: Optional[SearchLimits] = None) -> LatticePointReport:
    """All integer points in relint(P); P must be bounded."""
    if P.is_empty:
        return LatticePointReport((), True)
    if not P.is_bounded():
        raise Unbounded("relative interior enumeration requires a polytope")
    return integer_points(_strict_shrink(P), limits)


def is_relatively_lattice_free(P: Polyhedron,
                               limits: Optional[SearchLimits] = None) -> bool:
    """Whether relint(P) contains no integer point."""
    if P.is_empty:
        return True
    return relint_integer_point(P, limits) is None


def is_lattice_free(P: Polyhedron, limits: Optional[SearchLimits] = None) -> bool:
    """Whether int(P) contains no integer point.

    Vacuously true below full dimension, where the interior is empty.
    """
    if P.is_empty or not P.is_full_dim():
        return True
    return is_relatively_lattice_free(P, limits)


def line_free(P: Polyhedron, v: Sequence[int],
              limits: Optional[SearchLimits] = None) -> bool:
    """Whether relint(P + span{v}) contains no integer point.

    A unimodular map sends v to the last coordinate axis; dropping that
    coordinate turns the cylinder over P into a polytope one dimension
    down, relatively lattice-free iff the cylinder is, because the fiber
    direction always offers an integer coordinate.
    """
    if P.is_empty:
        raise EmptyPolyhedron("line_free of the empty polyhedron")
    w = tuple(int(x) for x in v)
    if len(w) != P.n:
        raise DimensionMismatch(f"direction of length {len(w)} in R^{P.n}")
    if is_zero_vector(w):
        raise ZeroVector("line direction must be nonzero")
    if not P.is_bounded():
        raise Unbounded("line_free expects a polytope")
    if P.n == 1:
        return False  # the cylinder is all of R^1
    U = unimodular_complete(primitive(w))
    proj = [mat_vec(U, p)[:-1] for p in P.vertices]
    return is_relatively_lattice_free(Polyhedron.from_vrep(proj), limits)


def _det2(u: IntVec, v: IntVec) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _staircase_2d(r1: IntVec, r2: IntVec) -> list[IntVec]:
    """Hilbert basis of the pointed cone(r1, r2) in the plane, in angular order.

    Walks the boundary of conv(cone ∩ Z² \\ {0}): from the current ray a,
    the next generator is the lattice point at height det(a, .) = 1
    pushed as close to r2 as possible, which drops det(., r2) strictly.
    """
    out = [r1]
    a = r1
    while True:
        D = _det2(a, r2)
        if D == 0:
            break
        if D == 1:
            out.append(r2)
            break
        _, u, v = _ext_gcd(a[0], a[1])
        m0 = (-v, u)  # det2(a, m0) == 1
        s = _det2(m0, r2)
        m = vec_sub(m0, vec_scale(s // D, a))
        out.append(m)
        a = m
    return out


def _hilbert_2d(gens: Sequence[IntVec]) -> Optional[tuple[IntVec, ...]]:
    """Fast path for pointed plane cones; None defers to the general route."""
    prims: list[IntVec] = []
    for g in gens:
        p = scale_to_coprime(g)  # direction-preserving, unlike primitive()
        if p not in prims:
            prims.append(p)
    if len(prims) == 1:
        return (prims[0],)
    for i, g in enumerate(prims):
        for h in prims[i + 1:]:
            if _det2(g, h) == 0:
                return None  # antiparallel pair spans a line
    low = next((g for g in prims
                if all(_det2(g, h) >= 0 for h in prims)), None)
    high = next((g for g in prims
                 if all(_det2(h, g) >= 0 for h in prims)), None)
    if low is None or high is None:
        return None
    return tuple(sorted(_staircase_2d(low, high)))


def hilbert_generating_set(generators: Sequence[Sequence[int]],
                           limits: Optional[SearchLimits] = None) -> tuple[IntVec, ...]:
    """Integral generating set of cone(generators) ∩ Z^n, sorted.

    Enumerates the integer points of the fundamental zonotope
    {sum lambda_i g_i : 0 <= lambda_i <= 1}; every integer cone point is
    one of them plus a nonnegative integer combination of the input.
    Pointed cones are additionally pruned down to the irreducible
    elements, which is the unique minimal Hilbert basis.  Non-pointed
    cones keep everything and append +- a lattice basis of the lineality
    space; minimality is not defined for them.
    """
    if not generators:
        raise EmptyGeneratorList("no cone generators")
    limits = limits or SearchLimits()
    gens: list[IntVec] = []
    for g in generators:
        t = tuple(int(x) for x in g)
        if not is_zero_vector(t) and t not in gens:
            gens.append(t)
    if not gens:
        return ()
    n = len(gens[0])
    if len(gens) > limits.subset_cap:
        raise SearchCapExceeded(
            f"{len(gens)} generators exceed the subset cap {limits.subset_cap}")
    if n == 2:
        fast = _hilbert_2d(gens)
        if fast is not None:
            return fast
    cone = Polyhedron.from_vrep([(0,) * n], rays=gens)
    sums: set[IntVec] = {(0,) * n}
    for g in gens:
        sums |= {vec_add(s, g) for s in sums}
    zono = Polyhedron.from_vrep(sorted(sums))
    cands = [z for z in integer_points(zono, limits).points if not is_zero_vector(z)]
    if cone.lines:
        flip = [tuple(-x for x in l) for l in cone.lines]
        return tuple(sorted(set(cands) | set(cone.lines) | set(flip)))
    keep = [z for z in cands
            if not any(u != z and cone.contains(vec_sub(z, u)) for u in cands)]
    return tuple(sorted(keep))


def lattice_to_last_coords(basis: Sequence[Sequence[int]]) -> IntMat:
    """Unimodular U sending the i-th of k basis rows to e_{n-k+i}.

    ``basis`` must be a basis of a saturated lattice, e.g. any output of
    :func:`polyrank.exact.lattice_span_basis`; then U maps the spanned
    subspace onto the last k coordinates while mapping Z^n onto Z^n.
    """
    B = tuple(tuple(int(x) for x in row) for row in basis)
    if not B:
        raise EmptyGeneratorList("no basis rows")
    k, n = len(B), len(B[0])
    H, Uc = hnf(B)
    for i in range(k):
        for j in range(n):
            if H[i][j] != (1 if i == j else 0):
                raise NotPrimitive("rows are not a basis of a saturated lattice")
    cols = transpose(Uc)
    return tuple(cols[k:]) + tuple(cols[:k])


def project_out_lines(P: Polyhedron) -> tuple[Polyhedron, IntMat, int]:
    """Split the lineality space off through a unimodular map.

    Returns ``(Q, U, k)`` with ``U . P = Q x R^k`` and Q a pointed
    polyhedron in R^{n-k}.  Integer points transfer both ways:
    x in P ∩ Z^n iff (U x)[:n-k] in Q ∩ Z^{n-k}.  Requires the lineality
    space to be proper (k < n).
    """
    if P.is_empty:
        raise EmptyPolyhedron("cannot project the empty polyhedron")
    if not P.lines:
        return P, identity(P.n), 0
    B = lattice_span_basis(P.lines)
    k = len(B)
    if k == P.n:
        raise DimensionMismatch("the lineality space is the whole ambient space")
    U = lattice_to_last_coords(B)
    m = P.n - k
    verts = [mat_vec(U, p)[:m] for p in P.vertices]
    rays = []
    for r in P.rays:
        pr = mat_vec(U, r)[:m]
        if not is_zero_vector(pr):
            rays.append(pr)
    return Polyhedron.from_vrep(verts, rays, n=m), U, k
