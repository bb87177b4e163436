"""Exact integer arithmetic on a lattice N and its dual M.

Vectors are plain tuples of Python ints.  ``LatticeVec`` lives in N (the
lattice of one-parameter subgroups), ``CharVec`` in the dual M (characters);
the two are linked only through :func:`pairing`.  No floating point is used
anywhere.
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple

from .errors import LengthMismatch, NotABasis, NotPrimitive, ZeroVector

LatticeVec = tuple[int, ...]
CharVec = tuple[int, ...]


def pairing(p: LatticeVec, e: CharVec) -> int:
    """Canonical pairing <p, e> between N and M."""
    if len(p) != len(e):
        raise LengthMismatch(f"pairing of lengths {len(p)} and {len(e)}")
    return sum(a * b for a, b in zip(p, e))


def vadd(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    if len(u) != len(v):
        raise LengthMismatch(f"adding lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    if len(u) != len(v):
        raise LengthMismatch(f"subtracting lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-a for a in u)


def vscale(c: int, u: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(c * a for a in u)


def primitive(v: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Return (v / g, g) where g > 0 is the gcd of the coordinates.

    gcd(0, x) = |x|, so the gcd of a nonzero vector is always positive.
    """
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        raise ZeroVector("the zero vector has no primitive direction")
    return tuple(a // g for a in v), g


def is_primitive(v: tuple[int, ...]) -> bool:
    try:
        return primitive(v)[1] == 1
    except ZeroVector:
        return False


def det2(p: LatticeVec, q: LatticeVec) -> int:
    if len(p) != 2 or len(q) != 2:
        raise LengthMismatch("2x2 determinant needs two vectors of length 2")
    return p[0] * q[1] - p[1] * q[0]


def is_basis(p: LatticeVec, q: LatticeVec) -> bool:
    """True when p, q generate the full rank-2 lattice (determinant +-1)."""
    return abs(det2(p, q)) == 1


class DualBasis(NamedTuple):
    originals: tuple[LatticeVec, LatticeVec]
    duals: tuple[CharVec, CharVec]


def dual_basis(p: LatticeVec, q: LatticeVec) -> DualBasis:
    """Dual basis (p*, q*) in M with <p, p*> = <q, q*> = 1, cross pairings 0."""
    d = det2(p, q)
    if abs(d) != 1:
        raise NotABasis(f"determinant {d} is not a unit")
    ps = (q[1] // d, -q[0] // d)
    qs = (-p[1] // d, p[0] // d)
    return DualBasis(originals=(tuple(p), tuple(q)), duals=(ps, qs))


def negative_octant_coords(v: LatticeVec, b: DualBasis) -> tuple[int, int, bool]:
    """Coordinates (a1, a2) with v = -a1*p - a2*q, and whether both are >= 0."""
    a1 = -pairing(v, b.duals[0])
    a2 = -pairing(v, b.duals[1])
    return a1, a2, a1 >= 0 and a2 >= 0


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def solve_pairing_line(p: LatticeVec, c: int) -> tuple[CharVec, CharVec]:
    """Solve <p, e> = c over M for primitive p of length 2.

    Returns (e0, q): one particular solution and a primitive direction vector
    of the kernel line, so the full solution set is {e0 + k*q : k in Z}.  The
    sign of q is fixed by making its first nonzero coordinate positive.
    """
    if len(p) != 2:
        raise LengthMismatch("parameter line solving is implemented for rank 2")
    g, x, y = xgcd(p[0], p[1])
    if g != 1:
        raise NotPrimitive(-1, tuple(p))
    e0 = (c * x, c * y)
    q = (-p[1], p[0])
    lead = q[0] if q[0] != 0 else q[1]
    if lead < 0:
        q = (-q[0], -q[1])
    return e0, q


def mat_det(rows: list[LatticeVec]) -> int:
    """Integer determinant via fraction-free Bareiss elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise LengthMismatch("determinant of a non-square matrix")
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def unimodular_duals(rows: list[LatticeVec]) -> tuple[CharVec, ...]:
    """Dual basis vectors for an integer basis with determinant +-1, any rank.

    Entry j of the result pairs to 1 with rows[j] and to 0 with the others.
    """
    from fractions import Fraction

    n = len(rows)
    d = mat_det(rows)
    if abs(d) != 1:
        raise NotABasis(f"determinant {d} is not a unit")
    # Solve rows * X = I by Gauss-Jordan over the rationals; integrality of
    # the solution is forced by the unit determinant.
    a = [[Fraction(x) for x in r] + [Fraction(int(i == k)) for k in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    duals = []
    for j in range(n):
        col = tuple(a[i][n + j] for i in range(n))
        assert all(x.denominator == 1 for x in col)
        duals.append(tuple(int(x) for x in col))
    return tuple(duals)


def fraction_rank(rows: list[list]) -> int:
    """Exact rank of a rational matrix by Gaussian elimination."""
    from fractions import Fraction

    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank


def fraction_solve(rows: list[list], rhs: list) -> list | None:
    """Unique exact solution of rows * x = rhs, or None.

    Returns None when the system is inconsistent or the solution is not
    unique; the system may be overdetermined.
    """
    from fractions import Fraction

    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    nunk = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(nunk):
        piv = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, len(a)):
        if a[i][nunk] != 0:
            return None
    if rank != nunk:
        return None
    x = [Fraction(0)] * nunk
    for i, col in enumerate(pivots):
        x[col] = a[i][nunk]
    return x
