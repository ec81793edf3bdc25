"""Exact integer and rational linear algebra on plain tuples.

Vectors are tuples of ``int`` (or :class:`fractions.Fraction`); matrices are
tuples of row tuples.  Every computation is exact: there is no floating
point anywhere in the package.

The Hermite normal form here is column-style: ``hnf(M)`` returns ``(H, U)``
with ``H = M @ U``, ``U`` unimodular, ``H`` in lower-trapezoidal echelon
shape with positive pivots, entries to the left of each pivot reduced into
``[0, pivot)``, and zero columns collected on the right when ``M`` is rank
deficient.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import DimensionMismatch, NotPrimitive, NotUnimodular, ZeroVector

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]
IntMat = tuple[IntVec, ...]


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    if len(u) != len(v):
        raise DimensionMismatch(f"add of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    if len(u) != len(v):
        raise DimensionMismatch(f"sub of lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def is_zero_vector(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    return g


def scale_to_coprime(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries, keeping direction."""
    g = vec_gcd(v)
    if g == 0:
        raise ZeroVector("cannot normalize the zero vector")
    return tuple(a // g for a in v)


def primitive(v: Sequence[int]) -> IntVec:
    """Canonical primitive representative of the line through ``v``.

    Entries are divided by their gcd and the sign is fixed so that the
    first nonzero entry is positive; thus ``primitive(k*v) == primitive(v)``
    for every nonzero integer ``k``.
    """
    w = scale_to_coprime(v)
    for a in w:
        if a != 0:
            return w if a > 0 else tuple(-x for x in w)
    raise ZeroVector("cannot normalize the zero vector")


def clear_denominators(v: Sequence) -> IntVec:
    """Scale a rational vector by a positive integer to obtain integers."""
    fracs = [Fraction(a) for a in v]
    mult = 1
    for f in fracs:
        mult = mult * f.denominator // gcd(mult, f.denominator)
    return tuple(int(f * mult) for f in fracs)


def identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence]) -> tuple:
    return tuple(zip(*M)) if M else ()


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = list(zip(*B))
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def mat_vec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(dot(row, x) for row in A)


def vec_mat(x: Sequence, A: Sequence[Sequence]) -> tuple:
    return tuple(dot(x, col) for col in zip(*A))


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(M)
    for row in M:
        if len(row) != n:
            raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot_row is None:
                return 0
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rat_det(M: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix by Gaussian elimination."""
    n = len(M)
    for row in M:
        if len(row) != n:
            raise DimensionMismatch("determinant of a non-square matrix")
    a = [[Fraction(x) for x in row] for row in M]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        pv = a[col][col]
        result *= pv
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / pv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) > 0`` and ``x*a + y*b = g``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def hnf(M: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Column-style Hermite normal form: ``H = M @ U`` with ``|det U| = 1``."""
    m = len(M)
    if m == 0:
        raise DimensionMismatch("hnf of a matrix with no rows")
    n = len(M[0])
    for row in M:
        if len(row) != n:
            raise DimensionMismatch("ragged matrix")
    H = [list(row) for row in M]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_combine(j1: int, j2: int, a: int, b: int, c: int, d: int) -> None:
        # (col j1, col j2) <- (a*col j1 + b*col j2, c*col j1 + d*col j2)
        for T in (H, U):
            for row in T:
                x, y = row[j1], row[j2]
                row[j1] = a * x + b * y
                row[j2] = c * x + d * y

    def col_axpy(j_dst: int, j_src: int, q: int) -> None:
        if q == 0:
            return
        for T in (H, U):
            for row in T:
                row[j_dst] -= q * row[j_src]

    def col_swap(j1: int, j2: int) -> None:
        for T in (H, U):
            for row in T:
                row[j1], row[j2] = row[j2], row[j1]

    def col_negate(j: int) -> None:
        for T in (H, U):
            for row in T:
                row[j] = -row[j]

    pc = 0
    for r in range(m):
        if pc >= n:
            break
        nz = [j for j in range(pc, n) if H[r][j] != 0]
        while len(nz) > 1:
            j1, j2 = nz[0], nz[1]
            a1, a2 = H[r][j1], H[r][j2]
            g, x, y = _ext_gcd(a1, a2)
            col_combine(j1, j2, x, y, -(a2 // g), a1 // g)
            nz = [j for j in range(pc, n) if H[r][j] != 0]
        if not nz:
            continue
        if nz[0] != pc:
            col_swap(nz[0], pc)
        if H[r][pc] < 0:
            col_negate(pc)
        piv = H[r][pc]
        for j in range(pc):
            col_axpy(j, pc, H[r][j] // piv)
        pc += 1
    return tuple(tuple(row) for row in H), tuple(tuple(row) for row in U)


def row_hnf(M: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row-style Hermite normal form: ``H = U @ M`` with ``|det U| = 1``."""
    Hc, Uc = hnf(transpose(M))
    return transpose(Hc), transpose(Uc)


def kernel_lattice_basis(M: Sequence[Sequence[int]]) -> IntMat:
    """Canonical basis of the lattice ``{x in Z^n : M x = 0}``.

    The result is saturated by construction; rows come back in row-HNF.
    """
    H, U = hnf(M)
    m, n = len(H), len(H[0])
    cols = []
    for j in range(n):
        if all(H[i][j] == 0 for i in range(m)):
            cols.append(tuple(U[i][j] for i in range(n)))
    if not cols:
        return ()
    Hr, _ = row_hnf(tuple(cols))
    return tuple(row for row in Hr if not is_zero_vector(row))


def lattice_span_basis(rows: Sequence[Sequence[int]]) -> IntMat:
    """Canonical basis of ``span(rows) intersect Z^k`` (a saturated lattice)."""
    rows = [tuple(r) for r in rows if not is_zero_vector(r)]
    if not rows:
        return ()
    k = len(rows[0])
    comp = kernel_lattice_basis(tuple(rows))
    if not comp:
        return identity(k)
    return kernel_lattice_basis(comp)


def unimodular_complete(v: Sequence[int]) -> IntMat:
    """A unimodular ``U`` with ``U @ v = e_n`` for a primitive integer ``v``."""
    v = tuple(int(a) for a in v)
    if is_zero_vector(v):
        raise ZeroVector("cannot complete the zero vector")
    if vec_gcd(v) != 1:
        raise NotPrimitive(f"{v} does not have coprime entries")
    n = len(v)
    _, Ucol = hnf((v,))
    W = transpose(Ucol)  # W @ v = e_1
    rows = list(W)
    rows[0], rows[n - 1] = rows[n - 1], rows[0]
    return tuple(rows)


def is_unimodular(U: Sequence[Sequence[int]]) -> bool:
    n = len(U)
    if any(len(row) != n for row in U):
        return False
    if any(not isinstance(x, int) and (not isinstance(x, Fraction) or x.denominator != 1)
           for row in U for x in row):
        return False
    return abs(det(tuple(tuple(int(x) for x in row) for row in U))) == 1


def mat_inverse_rational(M: Sequence[Sequence]) -> tuple[RatVec, ...]:
    """Exact inverse of a nonsingular square matrix, as Fractions."""
    n = len(M)
    a = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise NotUnimodular("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def mat_inverse_unimodular(U: Sequence[Sequence[int]]) -> IntMat:
    if not is_unimodular(U):
        raise NotUnimodular("expected an integer matrix with determinant +-1")
    inv = mat_inverse_rational(U)
    return tuple(tuple(int(x) for x in row) for row in inv)


def solve_rational(M: Sequence[Sequence], b: Sequence) -> Optional[RatVec]:
    """One exact solution of ``M x = b`` or ``None`` when inconsistent.

    Free variables (if any) are set to zero, so the answer is deterministic.
    """
    m = len(M)
    if len(b) != m:
        raise DimensionMismatch(f"system with {m} rows but {len(b)} right-hand sides")
    n = len(M[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(M, b)]
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][col]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivot_cols):
        x[col] = a[i][n]
    return tuple(x)


def solve_integer(M: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[IntVec]:
    """One integer solution of ``M x = b`` via the Hermite normal form."""
    m = len(M)
    if len(b) != m:
        raise DimensionMismatch(f"system with {m} rows but {len(b)} right-hand sides")
    if m == 0:
        raise DimensionMismatch("integer solve of a system with no rows")
    n = len(M[0])
    H, U = hnf(M)
    y = [0] * n
    pc = 0
    for r in range(m):
        if pc < n and H[r][pc] != 0:
            res = b[r] - sum(H[r][j] * y[j] for j in range(pc))
            if res % H[r][pc] != 0:
                return None
            y[pc] = res // H[r][pc]
            pc += 1
        else:
            res = b[r] - sum(H[r][j] * y[j] for j in range(pc))
            if res != 0:
                return None
    return mat_vec(U, tuple(y))


def floor_div(p: int, q: int) -> int:
    """Floor of ``p / q`` for positive ``q``."""
    return p // q


def ceil_div(p: int, q: int) -> int:
    """Ceiling of ``p / q`` for positive ``q``."""
    return -((-p) // q)
