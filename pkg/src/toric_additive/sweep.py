"""Exhaustive sweep over small complete fans with cross-checks.

The pool consists of all primitive vectors with coordinates bounded by a
constant, sorted by angle.  Complete fans are exactly the ascending index
chains whose consecutive rays (cyclically) span less than a half turn, so a
depth-first walk enumerates each fan once.  Existence of an additive action
is decided per fan from precomputed pair tables in integer arithmetic; the
expensive symbolic verification runs on the admitting fans afterwards.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cmp_to_key
from math import gcd
from typing import Callable, Iterator

from .additive import classify, find_admissible_basis
from .errors import InternalInconsistency
from .fan import _angular_cmp, build_fan, cross
from .lattice import (
    LatticeVec,
    dual_basis,
    negative_octant_coords,
    pairing,
    solve_pairing_line,
)
from .verify import verification_report

Progress = Callable[[str, int], None]


def primitive_pool(bound: int) -> tuple[LatticeVec, ...]:
    """All primitive vectors with |coordinates| <= bound, sorted by angle."""
    vecs = [(x, y)
            for x in range(-bound, bound + 1)
            for y in range(-bound, bound + 1)
            if (x, y) != (0, 0) and gcd(abs(x), abs(y)) == 1]
    return tuple(sorted(vecs, key=cmp_to_key(_angular_cmp)))


def enumerate_complete_fans(pool: tuple[LatticeVec, ...], min_rays: int = 3,
                            max_rays: int = 6
                            ) -> Iterator[tuple[LatticeVec, ...]]:
    """Complete fans whose rays come from the pool, as angularly sorted tuples."""
    n = len(pool)
    cr = [[cross(pool[i], pool[j]) for j in range(n)] for i in range(n)]
    succ = [[j for j in range(i + 1, n) if cr[i][j] > 0] for i in range(n)]

    def walk(start: int, chain: list[int]) -> Iterator[tuple[LatticeVec, ...]]:
        last = chain[-1]
        if len(chain) >= min_rays and cr[last][start] > 0:
            yield tuple(pool[i] for i in chain)
        if len(chain) == max_rays:
            return
        for j in succ[last]:
            chain.append(j)
            yield from walk(start, chain)
            chain.pop()

    for start in range(n):
        yield from walk(start, [start])


def _pair_tables(pool: tuple[LatticeVec, ...]):
    """Per unimodular pool pair: rays that must not appear, and closed sides.

    bad[i][j] is a bitmask of pool members outside the closed negative
    octant of (pool[i], pool[j]); a fan containing i and j admits an
    additive action through that pair iff none of its rays hits the mask.
    ratio[i][j] holds the octant coordinates of every pool member inside,
    for the cheap integer computation of the degree parameter d.
    """
    n = len(pool)
    bad: list[list[int | None]] = [[None] * n for _ in range(n)]
    coords: list[list[dict[int, tuple[int, int]] | None]] = \
        [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if abs(cr := cross(pool[i], pool[j])) != 1:
                continue
            db = dual_basis(pool[i], pool[j])
            mask = 0
            inside: dict[int, tuple[int, int]] = {}
            for k, v in enumerate(pool):
                a1, a2, ok = negative_octant_coords(v, db)
                if ok:
                    mask |= 1 << k
                    inside[k] = (a1, a2)
            full = (1 << n) - 1
            bad[i][j] = full & ~(mask | (1 << i) | (1 << j))
            coords[i][j] = inside
    return bad, coords


def _side_counts(rows: list[tuple[int, int]]) -> tuple[int, int]:
    """Root counts (|R1|, |R2|) of the basis rays from octant coordinates."""
    def side(num_col: int, den_col: int) -> int:
        best: tuple[int, int] | None = None
        for row in rows:
            num, den = row[num_col], row[den_col]
            if den == 0:
                continue
            if best is None or num * best[1] < best[0] * den:
                best = (num, den)
        assert best is not None
        return best[0] // best[1]

    return side(0, 1) + 1, side(1, 0) + 1


def _line_root_count(rays: tuple[LatticeVec, ...], i: int) -> int:
    """|R_i| by intersecting halfplane bounds along the pairing -1 line.

    Independent of the octant coordinate route: parametrizes the solutions
    of <p_i, e> = -1 and clips by <p_j, e> >= 0 directly.
    """
    e0, q = solve_pairing_line(rays[i], -1)
    lo = hi = None
    for j, p in enumerate(rays):
        if j == i:
            continue
        a = pairing(p, q)
        b = pairing(p, e0)
        if a > 0:
            k = -(b // a)
            if lo is None or k > lo:
                lo = k
        elif a < 0:
            k = b // (-a)
            if hi is None or k < hi:
                hi = k
        elif b < 0:
            return 0
    if lo is None or hi is None:
        raise InternalInconsistency(
            "root line of a complete fan must be bounded on both sides")
    return hi - lo + 1 if hi >= lo else 0


@dataclass
class SweepReport:
    bound: int
    min_rays: int
    max_rays: int
    total_fans: int = 0
    admitting: int = 0
    wide: int = 0
    num_classes_counts: dict[int, int] = field(default_factory=dict)
    d_histogram: dict[int, int] = field(default_factory=dict)
    heavy_checked: int = 0
    nonadmitting_sampled: int = 0
    t_enumerate_light: float = 0.0
    t_heavy: float = 0.0
    violation_counts: dict[str, int] = field(default_factory=dict)
    violations: dict[str, list] = field(default_factory=dict)

    @property
    def all_clean(self) -> bool:
        return not self.violation_counts

    def record_violation(self, kind: str, detail, cap: int = 10) -> None:
        self.violation_counts[kind] = self.violation_counts.get(kind, 0) + 1
        bucket = self.violations.setdefault(kind, [])
        if len(bucket) < cap:
            bucket.append(detail)

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "min_rays": self.min_rays,
            "max_rays": self.max_rays,
            "total_fans": self.total_fans,
            "admitting": self.admitting,
            "wide": self.wide,
            "num_classes_counts": {str(k): v for k, v in
                                   sorted(self.num_classes_counts.items())},
            "d_histogram": {str(k): v for k, v in
                            sorted(self.d_histogram.items())},
            "heavy_checked": self.heavy_checked,
            "nonadmitting_sampled": self.nonadmitting_sampled,
            "t_enumerate_light": self.t_enumerate_light,
            "t_heavy": self.t_heavy,
            "violation_counts": dict(self.violation_counts),
            "violations": {k: v for k, v in self.violations.items()},
            "all_clean": self.all_clean,
        }


def run_sweep(bound: int = 3, min_rays: int = 3, max_rays: int = 6, *,
              heavy: bool = True, heavy_stride: int = 1,
              nonadmitting_stride: int = 997, box: int = 10, seed: int = 0,
              progress: Progress | None = None) -> SweepReport:
    """Enumerate all complete fans from the pool and cross-check them.

    The light phase (timed as t_enumerate_light) decides existence for every
    fan by integer arithmetic, tallies the class statistics, checks that the
    degree parameter d is independent of the admitting pair used to compute
    it, and confirms the closed-form basis-ray root counts against a direct
    interval enumeration.  The heavy phase re-runs the full symbolic
    pipeline plus all verification oracles on every heavy_stride-th
    admitting fan and on the sampled non-admitting fans.
    """
    report = SweepReport(bound=bound, min_rays=min_rays, max_rays=max_rays)
    pool = primitive_pool(bound)
    index_of = {v: k for k, v in enumerate(pool)}
    bad, coords = _pair_tables(pool)

    t0 = time.perf_counter()
    admitting_fans: list[tuple[tuple[LatticeVec, ...], int]] = []
    nonadmitting_seen = 0
    nonadmitting_picks: list[tuple[LatticeVec, ...]] = []
    for rays in enumerate_complete_fans(pool, min_rays, max_rays):
        report.total_fans += 1
        idx = [index_of[r] for r in rays]
        mask = 0
        for k in idx:
            mask |= 1 << k
        degrees = []
        first: tuple[int, int, int, int] | None = None
        for a in range(len(idx)):
            ia = idx[a]
            for b in range(a + 1, len(idx)):
                jb = idx[b]
                i, j = (ia, jb) if ia < jb else (jb, ia)
                bm = bad[i][j]
                if bm is None or (mask & bm):
                    continue
                table = coords[i][j]
                assert table is not None
                rows = [table[k] for k in idx if k != i and k != j]
                n1, n2 = _side_counts(rows)
                degrees.append(max(n1, n2) - 1)
                if first is None:
                    first = (i, j, n1, n2)
        if degrees:
            d = degrees[0]
            if any(x != d for x in degrees):
                report.record_violation(
                    "d_depends_on_basis", {"rays": rays, "degrees": degrees})
            assert first is not None
            i, j, n1, n2 = first
            got = (_line_root_count(rays, idx.index(i)),
                   _line_root_count(rays, idx.index(j)))
            if got != (n1, n2):
                report.record_violation(
                    "root_count_mismatch",
                    {"rays": rays, "closed_form": (n1, n2), "interval": got})
            report.admitting += 1
            report.d_histogram[d] = report.d_histogram.get(d, 0) + 1
            ncls = 1 if d == 0 else 2
            if d == 0:
                report.wide += 1
            report.num_classes_counts[ncls] = \
                report.num_classes_counts.get(ncls, 0) + 1
            admitting_fans.append((rays, d))
        else:
            report.num_classes_counts[0] = \
                report.num_classes_counts.get(0, 0) + 1
            if nonadmitting_seen % nonadmitting_stride == 0:
                nonadmitting_picks.append(rays)
            nonadmitting_seen += 1
    report.t_enumerate_light = time.perf_counter() - t0
    if progress:
        progress("light", report.total_fans)

    if not heavy:
        return report
    t1 = time.perf_counter()
    for pos, (rays, d_light) in enumerate(admitting_fans):
        if pos % heavy_stride:
            continue
        c = classify(build_fan(rays))
        report.heavy_checked += 1
        if not c.admits_action or c.d != d_light:
            report.record_violation(
                "light_heavy_disagree",
                {"rays": rays, "d_light": d_light, "d_heavy": c.d})
            continue
        rep = verification_report(c, box=box, seed=seed)
        if not rep["all_pass"]:
            failing = [k for k, v in rep["checks"].items() if not v]
            report.record_violation(
                "verification", {"rays": rays, "failing": failing})
        if progress and report.heavy_checked % 200 == 0:
            progress("heavy", report.heavy_checked)
    for rays in nonadmitting_picks:
        report.nonadmitting_sampled += 1
        if find_admissible_basis(rays, validate=False) is not None:
            report.record_violation("nonadmitting_mismatch", {"rays": rays})
            continue
        c = classify(build_fan(rays), with_actions=False)
        if c.admits_action or c.num_classes != 0 or c.collections:
            report.record_violation("nonadmitting_mismatch", {"rays": rays})
            continue
        rep = verification_report(c, box=box, seed=seed)
        if not rep["all_pass"]:
            failing = [k for k, v in rep["checks"].items() if not v]
            report.record_violation(
                "verification", {"rays": rays, "failing": failing})
    report.t_heavy = time.perf_counter() - t1
    return report
