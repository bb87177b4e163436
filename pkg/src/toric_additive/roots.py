"""Demazure roots of a complete rank-2 fan.

A character e is a root attached to ray i when <p_i, e> = -1 and
<p_j, e> >= 0 for every other ray j, and additionally every ray j with
<p_j, e> = 0 spans a maximal cone together with ray i.  On complete 2D fans
the extra cone condition is implied by the inequalities; the enumeration
keeps the filter active and the verification layer confirms the redundancy
empirically.

Enumeration is exact: the affine line <p_i, e> = -1 is parametrised over Z
and each remaining ray contributes one half-line constraint, so the root set
is an integer interval that is read off without any search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import InternalInconsistency, NotRegular
from .fan import Fan2, adjacent
from .lattice import (
    CharVec,
    LatticeVec,
    pairing,
    solve_pairing_line,
    vadd,
    vneg,
    vsub,
)


class DemazureRoot(NamedTuple):
    e: CharVec
    ray: int


@dataclass(frozen=True)
class RootSystem:
    """All roots of a fan, split into semisimple and unipotent parts.

    ``positive`` and ``regular_vector`` are populated only when the fan
    admits an additive action: positivity is cut out by a regular one
    parameter subgroup u chosen relative to an admissible basis.
    """

    per_ray: tuple[tuple[DemazureRoot, ...], ...]
    semisimple: tuple[CharVec, ...]
    unipotent: tuple[CharVec, ...]
    regular_vector: LatticeVec | None
    positive: tuple[CharVec, ...] | None

    def all_roots(self) -> tuple[DemazureRoot, ...]:
        return tuple(sorted(r for rs in self.per_ray for r in rs))

    def roots_of_ray(self, i: int) -> tuple[CharVec, ...]:
        return tuple(r.e for r in self.per_ray[i])


def enumerate_roots_at(fan: Fan2, i: int, *, cone_condition: bool = True
                       ) -> tuple[DemazureRoot, ...]:
    """Roots attached to ray i, sorted lexicographically by character."""
    p = fan.rays[i]
    e0, q = solve_pairing_line(p, -1)
    lo: int | None = None
    hi: int | None = None
    for j, pj in enumerate(fan.rays):
        if j == i:
            continue
        a = pairing(pj, q)
        b = pairing(pj, e0)
        if a == 0:
            if b < 0:
                return ()
        elif a > 0:
            k = -(b // a)  # ceil(-b / a)
            if lo is None or k > lo:
                lo = k
        else:
            k = b // (-a)  # floor(b / -a)
            if hi is None or k < hi:
                hi = k
    if lo is None or hi is None:
        # Completeness forces constraints of both signs along the line.
        raise InternalInconsistency(
            f"parameter line of ray {i + 1} is unbounded; fan not complete?")
    found = []
    for k in range(lo, hi + 1):
        e = (e0[0] + k * q[0], e0[1] + k * q[1])
        if cone_condition:
            ok = True
            for j, pj in enumerate(fan.rays):
                if j != i and pairing(pj, e) == 0 and not adjacent(fan, i, j):
                    ok = False
                    break
            if not ok:
                continue
        found.append(DemazureRoot(e=e, ray=i))
    return tuple(sorted(found))


def roots_by_ray(fan: Fan2, *, cone_condition: bool = True
                 ) -> tuple[tuple[DemazureRoot, ...], ...]:
    return tuple(enumerate_roots_at(fan, i, cone_condition=cone_condition)
                 for i in range(fan.nrays))


def split_semisimple(per_ray: Sequence[Sequence[DemazureRoot]]
                     ) -> tuple[tuple[CharVec, ...], tuple[CharVec, ...]]:
    """Split the union of all roots into semisimple and unipotent parts.

    A root is semisimple when its negative is also a root.
    """
    universe = {r.e for rs in per_ray for r in rs}
    semi = tuple(sorted(e for e in universe if vneg(e) in universe))
    unip = tuple(sorted(e for e in universe if vneg(e) not in universe))
    return semi, unip


def _spiral(radius: int) -> Iterable[tuple[int, int]]:
    # Deterministic square spiral: ring 0, then each ring walked
    # counterclockwise starting from its east corner (r, 0).
    yield (0, 0)
    for r in range(1, radius + 1):
        for y in range(0, r + 1):
            yield (r, y)
        for x in range(r - 1, -r - 1, -1):
            yield (x, r)
        for y in range(r - 1, -r - 1, -1):
            yield (-r, y)
        for x in range(-r + 1, r + 1):
            yield (x, -r)
        for y in range(-r + 1, 0):
            yield (r, y)


def select_regular_vector(fan: Fan2, basis, semisimple: Iterable[CharVec],
                          nonbasis_roots: Iterable[CharVec] | None = None
                          ) -> LatticeVec:
    """Choose a one parameter subgroup u that cuts a positive system.

    Requirements: <u, e> != 0 for every semisimple root e, <u, w> < 0 for
    every root w attached to a ray outside the basis, and, when both
    p1* - p2* and its negative are semisimple roots, <u, p1* - p2*> > 0 so
    that the first basis ray keeps exactly one positive root.

    The search tries u0 = -(p1 + p2) first and then scans Q*u0 + delta for
    Q = 1, 2, ... with delta on a deterministic square spiral, accepting the
    first candidate that satisfies all constraints.
    """
    i1, i2 = basis.basis_indices
    p1, p2 = fan.rays[i1], fan.rays[i2]
    semi = tuple(semisimple)
    if nonbasis_roots is None:
        seen = set()
        for j in basis.nonbasis_indices:
            for r in enumerate_roots_at(fan, j):
                seen.add(r.e)
        nonbasis_roots = tuple(sorted(seen))
    else:
        nonbasis_roots = tuple(nonbasis_roots)
    d1, d2 = basis.duals[0], basis.duals[1]
    eplus = vsub(d1, d2)
    semi_set = set(semi)
    sign_constrained = eplus in semi_set and vneg(eplus) in semi_set
    u0 = vneg(vadd(p1, p2))
    for q_factor in range(1, 65):
        base = (q_factor * u0[0], q_factor * u0[1])
        for dx, dy in _spiral(8):
            u = (base[0] + dx, base[1] + dy)
            if any(pairing(u, e) == 0 for e in semi):
                continue
            if any(pairing(u, w) >= 0 for w in nonbasis_roots):
                continue
            if sign_constrained and pairing(u, eplus) <= 0:
                continue
            return u
    raise InternalInconsistency(
        "no regular vector found; the search bound should never be reached "
        "on a fan with an admissible basis")


def positive_system(semisimple: Iterable[CharVec], u: LatticeVec,
                    unipotent: Iterable[CharVec]) -> tuple[CharVec, ...]:
    """Positive roots: unipotent ones plus semisimple ones with <u, e> > 0."""
    pos = list(unipotent)
    for e in semisimple:
        v = pairing(u, e)
        if v == 0:
            raise NotRegular(f"u = {u} pairs to zero with semisimple root {e}")
        if v > 0:
            pos.append(e)
    return tuple(sorted(pos))


def all_roots(fan: Fan2, basis=None) -> RootSystem:
    """Full root data of the fan.

    When ``basis`` is omitted an admissible basis is searched for; without
    one (fan admits no additive action) the positive system is left unset.
    """
    per_ray = roots_by_ray(fan)
    semi, unip = split_semisimple(per_ray)
    if basis is None:
        from .additive import find_admissible_basis
        basis = find_admissible_basis(fan.rays, validate=False)
    if basis is None:
        return RootSystem(per_ray=per_ray, semisimple=semi, unipotent=unip,
                          regular_vector=None, positive=None)
    u = select_regular_vector(fan, basis, semi)
    pos = positive_system(semi, u, unip)
    return RootSystem(per_ray=per_ray, semisimple=semi, unipotent=unip,
                      regular_vector=u, positive=pos)


def closed_form_counts(basis) -> tuple[int, int]:
    """Expected |R_1|, |R_2| for the basis rays from the octant coordinates.

    |R_1| = floor(min_j a_j1 / a_j2) + 1 where rows with a_j2 = 0 impose no
    bound, and symmetrically for |R_2|.  At least one row must bound each
    side; otherwise the fan could not be complete.
    """
    def side(num_col: int, den_col: int) -> int:
        best: tuple[int, int] | None = None  # ratio as (num, den), den > 0
        for row in basis.alpha:
            num, den = row[num_col], row[den_col]
            if den == 0:
                continue
            if best is None or num * best[1] < best[0] * den:
                best = (num, den)
        if best is None:
            raise InternalInconsistency(
                "no octant row bounds the root interval; fan not complete?")
        return best[0] // best[1] + 1

    return side(0, 1), side(1, 0)
