"""Chvatal-Gomory cuts, closures, rank, and the iterated-cut lower bound.

The elementary closure of a rational polytope is computed from Hilbert
generating sets of its vertex normal cones: if ``c`` lies in the normal
cone of a vertex ``w`` then ``max c.x`` over the polytope is ``c.w``, and
every integer normal is a nonnegative integer combination of the
generating set, so by superadditivity of the floor the emitted cuts
imply all Chvatal-Gomory cuts.  A brute-force oracle over all normals
with bounded sup-norm is kept alongside as an independent route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .config import SearchLimits, default_rank_cap
from .errors import (
    CapExceeded,
    InternalInvariantError,
    NotIntegralDescription,
    PointNotInQ,
    RayMissesHull,
    Unbounded,
)
from .exact import IntVec, dot, is_zero_vector
from .lattice import hilbert_generating_set, integer_points, zonotope_truncation
from .polyhedron import Polyhedron


@dataclass(frozen=True)
class CGCut:
    """The cut ``normal . x <= rhs`` with ``rhs = floor(max normal.x)``."""

    normal: IntVec
    rhs: int


@dataclass(frozen=True)
class CutSet:
    """Cuts with a per-cut provenance tag, duplicates merged by normal."""

    cuts: tuple[CGCut, ...]
    provenance: tuple[str, ...]

    def as_dicts(self) -> list[dict]:
        return [{"c": list(cut.normal), "rhs": cut.rhs, "provenance": tag}
                for cut, tag in zip(self.cuts, self.provenance)]


def _support_value(Q: Polyhedron, c: Sequence[int]) -> Fraction:
    return max(Fraction(dot(c, v)) for v in Q.vertices)


def closure_cuts(Q: Polyhedron,
                 limits: Optional[SearchLimits] = None) -> CutSet:
    """One Chvatal-Gomory cut per Hilbert generator of each vertex normal cone.

    For lower-dimensional input both orientations of every affine-hull
    normal join each cone, so the generated family still dominates every
    integer normal.  Duplicate normals keep the smallest right-hand side.
    """
    if Q.is_empty:
        return CutSet((), ())
    if not Q.is_bounded():
        raise Unbounded("cut generation requires a polytope")
    eq_normals: list[IntVec] = []
    for a, _ in Q.eqs:
        eq_normals.append(a)
        eq_normals.append(tuple(-x for x in a))
    best: dict[IntVec, tuple[int, str]] = {}
    for i, w in enumerate(Q.vertices):
        active = [a for a, rhs in Q.ineqs if dot(a, w) == rhs]
        gens = active + eq_normals
        if not gens:
            continue  # Q is all of R^n only when n = 0
        for c in hilbert_generating_set(gens, limits):
            delta = _support_value(Q, c)
            if dot(c, w) != delta:
                raise InternalInvariantError("normal cone generator not maximized "
                                             "at its own vertex")
            rhs = math.floor(delta)
            if c not in best or rhs < best[c][0]:
                best[c] = (rhs, f"vertex {i}")
    items = sorted(best.items())
    return CutSet(tuple(CGCut(c, rhs) for c, (rhs, _) in items),
                  tuple(tag for _, (_, tag) in items))


def elementary_closure(Q: Polyhedron,
                       limits: Optional[SearchLimits] = None) -> Polyhedron:
    """The first Chvatal-Gomory closure of a rational polytope, exactly."""
    if Q.is_empty:
        return Q
    if not Q.is_bounded():
        raise Unbounded("closure of an unbounded polyhedron")
    fresh = []
    for cut in closure_cuts(Q, limits).cuts:
        delta = _support_value(Q, cut.normal)
        if delta != cut.rhs:  # cuts with integral support change nothing
            fresh.append((cut.normal, Fraction(cut.rhs)))
    if not fresh:
        return Q
    return Q.with_extra(ineqs=fresh)


def _hull_vertices_2d(points: Sequence[tuple]) -> set:
    """Vertices of the convex hull of exact planar points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return set(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out: list = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out[:-1]

    return set(chain(pts) + chain(reversed(pts)))


def _prune_cuts_2d(Q: Polyhedron,
                   fresh: list[tuple[IntVec, Fraction]]) -> Optional[list]:
    """Drop cuts redundant for the intersection, by polarity in the plane.

    Needs a point strictly inside every halfspace involved; the relative
    interior of a full-dimensional integer hull qualifies, since each cut
    is valid for the hull and strict at interior points.  A halfspace
    c.x <= r with positive slack s at the centre maps to the point c/s,
    and only halfspaces mapping to vertices of the point cloud's hull
    (origin included) can be irredundant.
    """
    hull = integer_hull(Q)
    if hull.is_empty or not hull.is_full_dim():
        return None
    p0 = hull.relint_point()
    cloud = [(Fraction(0), Fraction(0))]
    spots = []
    for a, b in list(Q.ineqs) + fresh:
        s = b - dot(a, p0)
        if s <= 0:
            raise InternalInvariantError("hull centre outside a cut halfspace")
        y = (Fraction(a[0]) / s, Fraction(a[1]) / s)
        spots.append(y)
        cloud.append(y)
    keep = _hull_vertices_2d(cloud)
    base = len(Q.ineqs)
    return [cut for j, cut in enumerate(fresh) if spots[base + j] in keep]


def closure_oracle(Q: Polyhedron, B: int) -> Polyhedron:
    """Intersection of Q with every CG cut of sup-norm at most ``B``.

    Contains the elementary closure for every B and equals it once B
    covers the normals of some complete cut family.  Normals with a
    common factor are skipped: scaling the primitive cut dominates them.
    """
    if Q.is_empty:
        return Q
    if not Q.is_bounded():
        raise Unbounded("closure of an unbounded polyhedron")
    if B < 1:
        raise ValueError("the norm bound must be a positive integer")
    nums, dens = [], []
    for v in Q.vertices:
        den = 1
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
        nums.append(tuple(int(x * den) for x in v))
        dens.append(den)
    fresh = []
    for c in product(range(-B, B + 1), repeat=Q.n):
        if is_zero_vector(c):
            continue
        g = 0
        for x in c:
            g = math.gcd(g, x)
        if g > 1:
            continue
        bp, bq = None, 1
        for num, den in zip(nums, dens):
            p = dot(c, num)
            if bp is None or p * bq > bp * den:
                bp, bq = p, den
        if bp % bq == 0:
            continue  # integral support value, nothing is cut off
        fresh.append((tuple(c), Fraction(bp // bq)))
    if not fresh:
        return Q
    if Q.n == 2 and len(fresh) > 64:
        pruned = _prune_cuts_2d(Q, fresh)
        if pruned is not None:
            fresh = pruned
    return Q.with_extra(ineqs=fresh)


def integer_hull(Q: Polyhedron,
                 limits: Optional[SearchLimits] = None) -> Polyhedron:
    """conv(Q ∩ Z^n), exactly.

    Unbounded input reduces to a bounded zonotope truncation over the
    integral recession generators (lines count as a ray pair); the
    recession cone is re-attached whenever any integer point exists,
    since it then coincides with the recession cone of the hull.
    """
    if Q.is_empty:
        return Q
    if Q.is_bounded():
        pts = integer_points(Q, limits).points
        if not pts:
            return Polyhedron.empty(Q.n)
        return Polyhedron.from_vrep(pts)
    flip = tuple(tuple(-x for x in l) for l in Q.lines)
    trunc = zonotope_truncation(Q.vertices, Q.rays + Q.lines + flip, Q.n, limits)
    pts = integer_points(trunc, limits).points
    if not pts:
        return Polyhedron.empty(Q.n)
    return Polyhedron.from_vrep(pts, Q.rays, Q.lines)


def cg_rank(Q: Polyhedron, cap: Optional[int] = None,
            limits: Optional[SearchLimits] = None) -> int:
    """Least p with the p-th closure equal to the integer hull of Q."""
    if cap is None:
        cap = default_rank_cap()
    if not Q.is_empty and not Q.is_bounded():
        raise Unbounded("rank computation requires a polytope")
    hull = integer_hull(Q, limits)
    cur = Q
    rounds = 0
    while cur != hull:
        if rounds >= cap:
            raise CapExceeded(f"no convergence within {cap} closures",
                              last=cur, rounds=rounds)
        nxt = elementary_closure(cur, limits)
        if nxt == cur:
            raise InternalInvariantError("closure stalled above the integer hull")
        cur = nxt
        rounds += 1
    return rounds


def cch_lower_bound(Q: Polyhedron, x: Sequence, v: Sequence[int],
                    limits: Optional[SearchLimits] = None) -> int:
    """The iterated-cut rank bound ceil(min {t >= 0 : x - t v in Q_I}).

    The minimum is an exact one-variable program over the canonical
    description of the integer hull.  Requires x in Q and the ray to
    meet the hull.
    """
    xs = tuple(Fraction(c) for c in x)
    vs = tuple(Fraction(c) for c in v)
    if any(c.denominator != 1 for c in vs):
        raise NotIntegralDescription("the ray direction must be an integer vector")
    if not Q.contains(xs):
        raise PointNotInQ(f"{x} is not in the polyhedron")
    hull = integer_hull(Q, limits)
    if hull.is_empty:
        raise RayMissesHull("the integer hull is empty")
    lo = Fraction(0)
    hi: Optional[Fraction] = None
    rows = list(hull.ineqs)
    for a, rhs in hull.eqs:
        rows.append((a, rhs))
        rows.append((tuple(-c for c in a), -rhs))
    for a, rhs in rows:
        s, w = dot(a, xs), dot(a, vs)
        if w == 0:
            if s > rhs:
                raise RayMissesHull("the ray runs parallel past the hull")
        elif w > 0:
            lo = max(lo, (s - rhs) / w)
        else:
            bound = (s - rhs) / w
            hi = bound if hi is None or bound < hi else hi
    if hi is not None and lo > hi:
        raise RayMissesHull("the ray misses the integer hull")
    return math.ceil(lo)
