"""Rational polyhedra with exact double description conversion.

A :class:`Polyhedron` eagerly keeps both descriptions in canonical form,
so syntactic equality of the stored data is mathematical equality of the
sets.  Facets are integer rows ``a . x <= rhs`` with coprime ``a``,
reduced modulo the equality space; equalities are the row Hermite basis
of the saturated lattice of tight directions; generator points and rays
are reduced modulo the lineality space and sorted.

Conversion in both directions runs the double description method on a
cone, carrying the lineality space explicitly.  There is no LP solver
and no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .errors import (
    DimensionMismatch,
    EmptyGeneratorList,
    EmptyPolyhedron,
    InternalInvariantError,
    NotUnimodular,
    UnboundedVolume,
)
from .exact import (
    IntMat,
    IntVec,
    RatVec,
    clear_denominators,
    dot,
    identity,
    is_unimodular,
    is_zero_vector,
    kernel_lattice_basis,
    lattice_span_basis,
    mat_vec,
    rat_det,
    scale_to_coprime,
    solve_rational,
    vec_scale,
    vec_sub,
)

HRow = tuple[IntVec, Fraction]


def cone_dd(rows: Sequence[IntVec], d: int):
    """Minimal generators of the cone ``{x in R^d : r . x >= 0}``.

    Returns ``(lines, rays, active)``: a basis of the lineality space, a
    generating set of rays that is minimal modulo the lines, and for each
    ray the set of row indices tight at it.
    """
    lines: list[IntVec] = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays: list[IntVec] = []
    active: list[frozenset[int]] = []
    for idx, row in enumerate(rows):
        if len(row) != d:
            raise DimensionMismatch(f"cone row of length {len(row)}, expected {d}")
        if not is_zero_vector(row):
            lv = [dot(row, l) for l in lines]
            knock = next((k for k, val in enumerate(lv) if val != 0), None)
            if knock is not None:
                # A line leaves the lineality space and becomes a ray.
                l0, v0 = lines[knock], lv[knock]
                new_lines = []
                for k, l in enumerate(lines):
                    if k == knock:
                        continue
                    if lv[k] != 0:
                        cand = vec_sub(vec_scale(v0, l), vec_scale(lv[k], l0))
                        new_lines.append(scale_to_coprime(cand))
                    else:
                        new_lines.append(l)
                new_rays = [l0 if v0 > 0 else tuple(-x for x in l0)]
                for r in rays:
                    rv = dot(row, r)
                    if rv != 0:
                        cand = tuple(Fraction(a) - Fraction(rv, v0) * b for a, b in zip(r, l0))
                        new_rays.append(scale_to_coprime(clear_denominators(cand)))
                    else:
                        new_rays.append(r)
                lines, rays = new_lines, new_rays
            else:
                plus, zero, minus = [], [], []
                for i, r in enumerate(rays):
                    rv = dot(row, r)
                    (plus if rv > 0 else zero if rv == 0 else minus).append(i)
                if minus:
                    new_rays = [rays[i] for i in plus] + [rays[i] for i in zero]
                    for i in plus:
                        for j in minus:
                            shared = active[i] & active[j]
                            if any(shared <= active[k]
                                   for k in range(len(rays)) if k != i and k != j):
                                continue
                            vi, vj = dot(row, rays[i]), dot(row, rays[j])
                            cand = vec_sub(vec_scale(vi, rays[j]), vec_scale(vj, rays[i]))
                            new_rays.append(scale_to_coprime(cand))
                    rays = new_rays
        active = [frozenset(k for k in range(idx + 1) if dot(rows[k], r) == 0)
                  for r in rays]
    return lines, rays, active


def _reduce_coset(v: Sequence, basis: Sequence[IntVec]) -> tuple[Fraction, ...]:
    """Canonical representative of ``v`` modulo the row space of ``basis``.

    ``basis`` must be in row echelon form; the result has zeros at every
    pivot column.
    """
    out = [Fraction(x) for x in v]
    for row in basis:
        j = next(i for i, x in enumerate(row) if x != 0)
        if out[j] != 0:
            f = out[j] / row[j]
            out = [x - f * y for x, y in zip(out, row)]
    return tuple(out)


def _vgen_from_hrows(ineqs: Sequence[tuple[Sequence, Fraction]],
                     eqs: Sequence[tuple[Sequence, Fraction]], n: int):
    """H-form to raw generators via the homogenization cone, None if empty."""
    rows: list[IntVec] = []
    for a, rhs in ineqs:
        rows.append(clear_denominators(tuple(-Fraction(x) for x in a) + (Fraction(rhs),)))
    for a, rhs in eqs:
        r = tuple(-Fraction(x) for x in a) + (Fraction(rhs),)
        rows.append(clear_denominators(r))
        rows.append(tuple(-x for x in rows[-1]))
    rows.append((0,) * n + (1,))
    lines, rays, _ = cone_dd(rows, n + 1)
    for l in lines:
        if l[n] != 0:
            raise InternalInvariantError("homogenization line with nonzero last coordinate")
    if any(r[n] < 0 for r in rays):
        raise InternalInvariantError("homogenization ray below the t = 0 plane")
    verts = [tuple(Fraction(x, r[n]) for x in r[:n]) for r in rays if r[n] > 0]
    if not verts:
        return None
    rec_rays = [r[:n] for r in rays if r[n] == 0]
    rec_lines = [l[:n] for l in lines]
    return verts, rec_rays, rec_lines


def _hrows_from_vgen(vertices: Sequence[RatVec], rays: Sequence[IntVec],
                     lines: Sequence[IntVec], n: int):
    """V-form to canonical facet and equality rows via the polar cone."""
    rows: list[IntVec] = [clear_denominators(tuple(v) + (Fraction(1),)) for v in vertices]
    for r in rays:
        rows.append(tuple(r) + (0,))
    for l in lines:
        rows.append(tuple(l) + (0,))
        rows.append(tuple(-x for x in l) + (0,))
    lam, gam, _ = cone_dd(rows, n + 1)
    E: IntMat = lattice_span_basis(lam) if lam else ()
    for row in E:
        if is_zero_vector(row[:n]):
            raise InternalInvariantError("equality with zero normal on a nonempty set")
    eqs = tuple((row[:n], Fraction(-row[n])) for row in E)
    ineqs: list[HRow] = []
    for g in gam:
        red = _reduce_coset(g, E)
        if all(x == 0 for x in red[:n]):
            continue  # the trivial ray 0 <= beta
        c0 = tuple(-x for x in red[:n])
        mult = 1
        for x in c0:
            mult = mult * x.denominator // _gcd(mult, x.denominator)
        ints = tuple(int(x * mult) for x in c0)
        g2 = 0
        for x in ints:
            g2 = _gcd(g2, abs(x))
        scale = Fraction(mult, g2)
        ineqs.append((tuple(int(x * scale) for x in c0), red[n] * scale))
    ineqs.sort()
    return tuple(ineqs), eqs


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _canon_vgen(vertices, rays, lines, n: int):
    """Reduce generators modulo the lineality space, dedupe and sort."""
    L: IntMat = lattice_span_basis([tuple(l) for l in lines]) if lines else ()
    cv = sorted({_reduce_coset(v, L) for v in vertices})
    cr = set()
    for r in rays:
        red = _reduce_coset(r, L)
        if all(x == 0 for x in red):
            raise InternalInvariantError("extreme ray inside the lineality space")
        cr.add(scale_to_coprime(clear_denominators(red)))
    return tuple(cv), tuple(sorted(cr)), L


class Polyhedron:
    """A rational polyhedron ``conv(V) + cone(R) + span(L)`` in R^n.

    Instances are immutable and hashable; equality is set equality.  The
    ``vertices`` are representatives of the minimal faces modulo the
    lineality space (true vertices when there are no lines).
    """

    __slots__ = ("n", "is_empty", "vertices", "rays", "lines", "ineqs", "eqs", "_key")

    def __init__(self, n, is_empty, vertices, rays, lines, ineqs, eqs):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "is_empty", is_empty)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "lines", lines)
        object.__setattr__(self, "ineqs", ineqs)
        object.__setattr__(self, "eqs", eqs)
        object.__setattr__(self, "_key",
                           (n, is_empty, vertices, rays, lines, ineqs, eqs))

    def __setattr__(self, name, value):
        raise AttributeError("Polyhedron instances are immutable")

    # -- construction -------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Polyhedron":
        marker = (((0,) * n, Fraction(-1)),)
        return cls(n, True, (), (), (), marker, ())

    @classmethod
    def from_hrep(cls, A: Sequence[Sequence], b: Sequence,
                  C: Sequence[Sequence] = (), d: Sequence = ()) -> "Polyhedron":
        """The set ``{x : A x <= b, C x = d}`` with rational data."""
        if len(A) != len(b):
            raise DimensionMismatch(f"{len(A)} inequality rows but {len(b)} right-hand sides")
        if len(C) != len(d):
            raise DimensionMismatch(f"{len(C)} equality rows but {len(d)} right-hand sides")
        widths = {len(row) for row in A} | {len(row) for row in C}
        if len(widths) > 1:
            raise DimensionMismatch("ragged constraint matrix")
        if not widths:
            raise DimensionMismatch("cannot infer the ambient dimension from no rows")
        n = widths.pop()
        ineqs = [(tuple(Fraction(x) for x in row), Fraction(rhs)) for row, rhs in zip(A, b)]
        eqs = [(tuple(Fraction(x) for x in row), Fraction(rhs)) for row, rhs in zip(C, d)]
        gen = _vgen_from_hrows(ineqs, eqs, n)
        if gen is None:
            return cls.empty(n)
        can_ineqs, can_eqs = _hrows_from_vgen(*gen, n)
        cv, cr, cl = _canon_vgen(*gen, n)
        return cls(n, False, cv, cr, cl, can_ineqs, can_eqs)

    @classmethod
    def from_vrep(cls, vertices: Sequence[Sequence], rays: Sequence[Sequence] = (),
                  lines: Sequence[Sequence] = (), n: Optional[int] = None) -> "Polyhedron":
        """The set ``conv(vertices) + cone(rays) + span(lines)``."""
        verts = [tuple(Fraction(x) for x in v) for v in vertices]
        if not verts:
            if rays or lines:
                raise EmptyGeneratorList("rays or lines given without a base point")
            if n is None:
                raise EmptyGeneratorList("no generators and no ambient dimension")
            return cls.empty(n)
        sizes = {len(v) for v in verts} | {len(r) for r in rays} | {len(l) for l in lines}
        if len(sizes) != 1:
            raise DimensionMismatch("generators of mixed dimensions")
        m = sizes.pop()
        if n is not None and n != m:
            raise DimensionMismatch(f"generators live in R^{m}, not R^{n}")
        rint = [scale_to_coprime(clear_denominators(r)) for r in rays]
        lint = [scale_to_coprime(clear_denominators(l)) for l in lines]
        can_ineqs, can_eqs = _hrows_from_vgen(verts, rint, lint, m)
        gen = _vgen_from_hrows(can_ineqs, can_eqs, m)
        if gen is None:
            raise InternalInvariantError("generator description round-tripped to empty")
        cv, cr, cl = _canon_vgen(*gen, m)
        return cls(m, False, cv, cr, cl, can_ineqs, can_eqs)

    # -- basic queries ------------------------------------------------

    def dim(self) -> int:
        if self.is_empty:
            return -1
        return self.n - len(self.eqs)

    def is_full_dim(self) -> bool:
        return not self.is_empty and not self.eqs

    def is_bounded(self) -> bool:
        return not self.rays and not self.lines

    def _coerce(self, x: Sequence) -> RatVec:
        if len(x) != self.n:
            raise DimensionMismatch(f"point of length {len(x)} in R^{self.n}")
        return tuple(Fraction(v) for v in x)

    def contains(self, x: Sequence) -> bool:
        x = self._coerce(x)
        if self.is_empty:
            return False
        return (all(dot(a, x) == rhs for a, rhs in self.eqs)
                and all(dot(a, x) <= rhs for a, rhs in self.ineqs))

    def relint_contains(self, x: Sequence) -> bool:
        """Membership in the relative interior."""
        x = self._coerce(x)
        if self.is_empty:
            return False
        return (all(dot(a, x) == rhs for a, rhs in self.eqs)
                and all(dot(a, x) < rhs for a, rhs in self.ineqs))

    def interior_contains(self, x: Sequence) -> bool:
        return self.is_full_dim() and self.relint_contains(x)

    def in_recession(self, v: Sequence) -> bool:
        """Whether ``v`` lies in the recession cone."""
        v = self._coerce(v)
        if self.is_empty:
            return False
        return (all(dot(a, v) == 0 for a, _ in self.eqs)
                and all(dot(a, v) <= 0 for a, _ in self.ineqs))

    def tight_ineq_indices(self, x: Sequence) -> tuple[int, ...]:
        x = self._coerce(x)
        return tuple(i for i, (a, rhs) in enumerate(self.ineqs) if dot(a, x) == rhs)

    def relint_point(self) -> RatVec:
        """A point of the relative interior: vertex barycenter plus ray sum.

        Any facet row tight at every vertex must be strictly slack on
        some ray, else it would be an implicit equality, so the ray sum
        pushes the barycenter off every facet.
        """
        if self.is_empty:
            raise EmptyPolyhedron("relative interior of the empty polyhedron")
        m = len(self.vertices)
        pt = tuple(sum(v[i] for v in self.vertices) / Fraction(m) for i in range(self.n))
        for r in self.rays:
            pt = tuple(a + b for a, b in zip(pt, r))
        if not self.relint_contains(pt):
            raise InternalInvariantError("constructed point misses the relative interior")
        return pt

    def contains_poly(self, other: "Polyhedron") -> bool:
        if other.n != self.n:
            raise DimensionMismatch("polyhedra in different ambient spaces")
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        for v in other.vertices:
            if not self.contains(v):
                return False
        for r in other.rays:
            if not self.in_recession(r):
                return False
        for l in other.lines:
            if not (self.in_recession(l) and self.in_recession(tuple(-x for x in l))):
                return False
        return True

    def direction_lattice_basis(self) -> IntMat:
        """Canonical basis of the lattice of integer directions of aff(P)."""
        if self.is_empty:
            return ()
        if not self.eqs:
            return identity(self.n)
        return kernel_lattice_basis(tuple(a for a, _ in self.eqs))

    # -- derived polyhedra --------------------------------------------

    def with_extra(self, ineqs: Sequence[tuple[Sequence, Fraction]] = (),
                   eqs: Sequence[tuple[Sequence, Fraction]] = ()) -> "Polyhedron":
        """Intersection with additional inequality and equality rows."""
        if self.is_empty:
            return self
        A = [a for a, _ in self.ineqs] + [tuple(a) for a, _ in ineqs]
        b = [rhs for _, rhs in self.ineqs] + [rhs for _, rhs in ineqs]
        C = [a for a, _ in self.eqs] + [tuple(a) for a, _ in eqs]
        d = [rhs for _, rhs in self.eqs] + [rhs for _, rhs in eqs]
        if not A and not C:
            A, b = [(0,) * self.n], [Fraction(0)]
        return Polyhedron.from_hrep(A, b, C, d)

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if other.n != self.n:
            raise DimensionMismatch("polyhedra in different ambient spaces")
        if self.is_empty:
            return self
        if other.is_empty:
            return other
        return self.with_extra(other.ineqs, other.eqs)

    def recession_cone(self) -> "Polyhedron":
        if self.is_empty:
            return Polyhedron.empty(self.n)
        return Polyhedron.from_vrep([(0,) * self.n], self.rays, self.lines)

    def hull_with_point(self, z: Sequence) -> "Polyhedron":
        z = tuple(Fraction(x) for x in z)
        if len(z) != self.n:
            raise DimensionMismatch(f"point of length {len(z)} in R^{self.n}")
        if self.is_empty:
            return Polyhedron.from_vrep([z])
        return Polyhedron.from_vrep(self.vertices + (z,), self.rays, self.lines)

    def add_line(self, v: Sequence) -> "Polyhedron":
        """The Minkowski sum with the line spanned by ``v``."""
        if self.is_empty:
            return self
        w = scale_to_coprime(clear_denominators(tuple(Fraction(x) for x in v)))
        return Polyhedron.from_vrep(self.vertices, self.rays, self.lines + (w,))

    def add_ray(self, v: Sequence) -> "Polyhedron":
        if self.is_empty:
            return self
        w = scale_to_coprime(clear_denominators(tuple(Fraction(x) for x in v)))
        return Polyhedron.from_vrep(self.vertices, self.rays + (w,), self.lines)

    def apply_unimodular(self, U: Sequence[Sequence[int]]) -> "Polyhedron":
        """The image under ``x -> U x`` for a unimodular integer ``U``."""
        if len(U) != self.n or not is_unimodular(U):
            raise NotUnimodular(f"expected a unimodular {self.n}x{self.n} matrix")
        if self.is_empty:
            return self
        return Polyhedron.from_vrep([mat_vec(U, v) for v in self.vertices],
                                    [mat_vec(U, r) for r in self.rays],
                                    [mat_vec(U, l) for l in self.lines])

    def translate(self, t: Sequence) -> "Polyhedron":
        t = self._coerce(t)
        if self.is_empty:
            return self
        return Polyhedron.from_vrep([tuple(a + b for a, b in zip(v, t)) for v in self.vertices],
                                    self.rays, self.lines)

    def dilate(self, center: Sequence, factor) -> "Polyhedron":
        """Scale by ``factor > 0`` about ``center``; rays and lines persist."""
        c = self._coerce(center)
        f = Fraction(factor)
        if f <= 0:
            raise ValueError("dilation factor must be positive")
        if self.is_empty:
            return self
        verts = [tuple(ci + f * (vi - ci) for vi, ci in zip(v, c)) for v in self.vertices]
        return Polyhedron.from_vrep(verts, self.rays, self.lines)

    # -- volume -------------------------------------------------------

    def volume(self) -> Fraction:
        """Volume of P inside aff(P), normalized by the direction lattice.

        A unimodular image has the same volume; the unit d-cube has
        volume 1.  Raises :class:`UnboundedVolume` on unbounded input.
        """
        if self.is_empty:
            return Fraction(0)
        if not self.is_bounded():
            raise UnboundedVolume("volume of an unbounded polyhedron")
        d = self.dim()
        if d == 0:
            return Fraction(1)
        basis = self.direction_lattice_basis()
        cols = tuple(zip(*basis))
        v0 = self.vertices[0]
        coords = []
        for v in self.vertices:
            sol = solve_rational(cols, vec_sub(v, v0))
            if sol is None:
                raise InternalInvariantError("vertex outside its own affine hull")
            coords.append(sol)
        Q = Polyhedron.from_vrep(coords)
        total = Fraction(0)
        for simplex in _triangulate(Q):
            rows = [vec_sub(p, simplex[-1]) for p in simplex[:-1]]
            total += abs(rat_det(rows))
        return total / factorial(d)

    # -- dunder -------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Polyhedron) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def key(self):
        """Canonical hashable identity, usable as a memo key."""
        return self._key

    def __repr__(self) -> str:
        if self.is_empty:
            return f"Polyhedron.empty({self.n})"
        return (f"Polyhedron(n={self.n}, dim={self.dim()}, "
                f"V={len(self.vertices)}, R={len(self.rays)}, L={len(self.lines)}, "
                f"facets={len(self.ineqs)})")


def _triangulate(P: Polyhedron):
    """Simplices (as vertex tuples) covering a polytope, by recursive coning."""
    if P.dim() == 0:
        return [(P.vertices[0],)]
    v0 = P.vertices[0]
    out = []
    for a, rhs in P.ineqs:
        if dot(a, v0) == rhs:
            continue
        F = P.with_extra(eqs=[(a, rhs)])
        for s in _triangulate(F):
            out.append(s + (v0,))
    return out
