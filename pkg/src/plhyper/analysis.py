"""Sensitivity and hitting time-sets for base, product and hyperspace systems.

Open sets are handled through their closures: for a continuous map,
``sup_{x, y in V} |f(x) - f(y)|`` equals the diameter of ``f(closure V)``,
so ``n in N(V, delta)`` iff that diameter exceeds ``delta``. Hitting tests
need maps without constant pieces for the same trick to be exact; other
schedules fall back to sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .hyperspace import (
    FiniteSubset,
    HyperNeighborhood,
    VietorisBox,
    hausdorff_distance,
    induced_image,
    sample_hausdorff_ball,
    witness_partner,
)
from .pl_dynamics import IntervalUnion, MapSchedule, Pair
from .rational import as_q, fmt_q
from .timeset import Thresholds, TimeSet, classify

__all__ = [
    "QueryError",
    "UnsupportedExactMode",
    "SensitivityQuery",
    "HittingQuery",
    "HyperWitness",
    "HyperSensitivityResult",
    "open_interval",
    "closure",
    "image_diameters",
    "sensitivity_timeset",
    "sampled_sensitivity_timeset",
    "hitting_timeset",
    "transitivity_verdicts",
    "vietoris_hitting_timeset",
    "vietoris_brute_force",
    "multi_sensitivity_timeset",
    "product_sensitivity_timeset",
    "escape_point",
    "point_separation_timeset",
    "hyperspace_sensitivity_timeset",
    "hyperspace_brute_force",
]

Open = tuple[Fraction, Fraction]

# irrational offset keeps brute-force grids from collapsing onto coarse
# dyadics under the expanding fixture maps
_GRID_PHASE = (math.sqrt(5) - 1) / 2


class QueryError(ValueError):
    pass


class UnsupportedExactMode(ValueError):
    """Exact-mode analysis requested for a schedule with constant pieces."""


def open_interval(lo, hi) -> Open:
    lo, hi = as_q(lo), as_q(hi)
    if not (0 <= lo < hi <= 1):
        raise QueryError(f"open interval ({fmt_q(lo)}, {fmt_q(hi)}) is degenerate or leaves [0, 1]")
    return lo, hi


def _opens(v) -> tuple[Open, ...]:
    if isinstance(v, tuple) and len(v) == 2 and not isinstance(v[0], (tuple, list)):
        return (open_interval(*v),)
    out = tuple(open_interval(*o) for o in v)
    if not out:
        raise QueryError("empty list of open intervals")
    return out


def closure(v) -> IntervalUnion:
    return IntervalUnion(_opens(v))


@dataclass(frozen=True)
class SensitivityQuery:
    schedule: MapSchedule
    v: tuple[Open, ...]
    delta: Fraction
    horizon: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "v", _opens(self.v))
        object.__setattr__(self, "delta", as_q(self.delta))
        if self.delta <= 0:
            raise QueryError("delta must be positive")
        if self.horizon < 1:
            raise QueryError("horizon must be >= 1")


@dataclass(frozen=True)
class HittingQuery:
    schedule: MapSchedule
    u: Open
    v: Open
    horizon: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", open_interval(*self.u))
        object.__setattr__(self, "v", open_interval(*self.v))
        if self.horizon < 1:
            raise QueryError("horizon must be >= 1")


def image_diameters(schedule: MapSchedule, v, horizon: int) -> list[Fraction]:
    """Diameters of ``f_1^n(closure v)`` for ``n = 1..horizon``."""
    chain = schedule.images(closure(v), horizon)
    return [w.diameter for w in chain[1:]]


def sensitivity_timeset(q: SensitivityQuery) -> TimeSet:
    diams = image_diameters(q.schedule, q.v, q.horizon)
    return TimeSet.from_mask(d > q.delta for d in diams)


def _sample_points(opens: Sequence[Open], step: Fraction) -> np.ndarray:
    pts = []
    for lo, hi in opens:
        k = math.floor((hi - lo) / step)
        pts.append(float(lo) + float(step) * np.arange(k + 1))
        pts.append(np.array([float(hi)]))
    return np.concatenate(pts)


def sampled_sensitivity_timeset(
    schedule: MapSchedule, v, delta, horizon: int, step=Fraction(1, 1000)
) -> TimeSet:
    """Float estimate of ``N(v, delta)`` from a sampling grid on ``closure v``.

    Sampled diameters never exceed the true ones, so members are sound up to
    rounding; misses happen only when the true diameter is within one
    sampling cell of ``delta``.
    """
    xs = _sample_points(_opens(v), as_q(step))
    diams = kernels.sampled_diameters(schedule, xs, horizon)
    return TimeSet.from_mask(diams > float(as_q(delta)))


def _open_points(lo: Fraction, hi: Fraction, count: int) -> np.ndarray:
    return float(lo) + (float(hi) - float(lo)) * (np.arange(count) + _GRID_PHASE) / count


def hitting_timeset(q: HittingQuery, samples: int = 4096) -> TimeSet:
    """``{n : f_1^n(u) meets v}`` for open intervals u, v.

    Without constant pieces the image of the open interval u is a
    nondegenerate interval with the same closure as the image of
    ``closure u``, so meeting the open v is an interior-overlap test.
    """
    (ulo, uhi), (vlo, vhi) = q.u, q.v
    if not q.schedule.no_constant_piece:
        xs = _open_points(ulo, uhi, samples)
        return TimeSet.from_mask(kernels.sampled_hits(q.schedule, xs, q.horizon, vlo, vhi))
    chain = q.schedule.images(closure([q.u]), q.horizon)
    return TimeSet.from_mask(w.meets_open(vlo, vhi) for w in chain[1:])


def transitivity_verdicts(s: TimeSet, thresholds: Thresholds = Thresholds()) -> dict[str, bool]:
    report = classify(s, thresholds)
    v = report.verdicts
    return {
        "transitive": v["nonempty"],
        "mixing": report.cofinite_from is not None,
        "syndetic_transitive": v["syndetic"],
        "ergodic": v["positive_density"],
    }


def vietoris_hitting_timeset(
    schedule: MapSchedule, box_u: VietorisBox, box_v: VietorisBox, horizon: int
) -> TimeSet:
    """``{n : some K in box_u has f_1^n(K) in box_v}``.

    Such a K exists iff every ``U_i`` has a point landing in the union of
    the ``V_j`` and every ``V_j`` is reached from some ``U_i``; one chosen
    point per constraint is a finite witness.
    """
    if not schedule.no_constant_piece:
        raise UnsupportedExactMode("Vietoris hitting needs maps without constant pieces")
    chains = [schedule.images(closure([u]), horizon) for u in box_u.opens]
    mask = []
    for n in range(1, horizon + 1):
        hits = [[chain[n].meets_open(vlo, vhi) for vlo, vhi in box_v.opens] for chain in chains]
        each_u = all(any(row) for row in hits)
        each_v = all(any(row[j] for row in hits) for j in range(len(box_v.opens)))
        mask.append(each_u and each_v)
    return TimeSet.from_mask(mask)


def vietoris_brute_force(
    schedule: MapSchedule,
    box_u: VietorisBox,
    box_v: VietorisBox,
    horizon: int,
    grid_bits: int = 8,
    tol: float = 1e-12,
) -> TimeSet:
    """Grid search over finite subsets of a fixed grid, independent of the exact path.

    Membership conditions are monotone in K, so a grid subset works iff the
    largest admissible one does: all grid points inside some ``U_i`` whose
    image lies inside some ``V_j``.
    """
    size = 1 << grid_bits
    grid = (np.arange(size) + _GRID_PHASE) / size
    u = np.array([[float(lo), float(hi)] for lo, hi in box_u.opens])
    v = np.array([[float(lo), float(hi)] for lo, hi in box_v.opens])
    in_u = (grid[:, None] > u[:, 0] + tol) & (grid[:, None] < u[:, 1] - tol)
    pts = grid[in_u.any(axis=1)]
    in_u = in_u[in_u.any(axis=1)]
    table = kernels.orbit_table(schedule, pts, horizon)
    mask = []
    for n in range(1, horizon + 1):
        in_v = (table[n][:, None] > v[:, 0] + tol) & (table[n][:, None] < v[:, 1] - tol)
        keep = in_v.any(axis=1)
        mask.append(bool(keep.any() and in_u[keep].any(axis=0).all() and in_v[keep].any(axis=0).all()))
    return TimeSet.from_mask(mask)


def multi_sensitivity_timeset(schedule: MapSchedule, vs, delta, horizon: int) -> TimeSet:
    vs = list(vs)
    if not vs:
        raise QueryError("multi-sensitivity needs at least one open set")
    out = None
    for v in vs:
        s = sensitivity_timeset(SensitivityQuery(schedule, (open_interval(*v),), delta, horizon))
        out = s if out is None else out & s
    return out


def product_sensitivity_timeset(
    sched_x: MapSchedule, sched_y: MapSchedule, u, v, delta, horizon: int
) -> TimeSet:
    """Sensitivity set of ``U x V`` under ``f x g`` with the sum metric.

    The sup of ``|x - x'| + |y - y'|`` over the image rectangle splits into
    the two coordinate diameters.
    """
    delta = as_q(delta)
    if delta <= 0:
        raise QueryError("delta must be positive")
    dx = image_diameters(sched_x, [open_interval(*u)], horizon)
    dy = image_diameters(sched_y, [open_interval(*v)], horizon)
    return TimeSet.from_mask(a + b > delta for a, b in zip(dx, dy))


# hyperspace sensitivity ------------------------------------------------------


def _ball(x: Fraction, eps: Fraction) -> IntervalUnion:
    return IntervalUnion.clipped([(x - eps, x + eps)])


def _gaps(lo: Fraction, hi: Fraction, forbidden: IntervalUnion) -> list[Pair]:
    """Open intervals making up ``(lo, hi)`` minus ``forbidden``."""
    gaps = []
    cur = lo
    for p, q in forbidden:
        if q <= cur:
            continue
        if p >= hi:
            break
        if p > cur:
            gaps.append((cur, min(p, hi)))
        cur = max(cur, q)
        if cur >= hi:
            break
    if cur < hi:
        gaps.append((cur, hi))
    return gaps


def _pull_back(schedule: MapSchedule, chain: list[IntervalUnion], target: Pair, n: int) -> Optional[Pair]:
    # widest nondegenerate piece of f_k^{-1}(t) inside chain[k-1], without
    # building the merged union at every step
    t = target
    for k in range(n, 0, -1):
        best, width = None, 0
        for xa, xb in schedule.map_at(k).preimage_pairs(t[0], t[1]):
            for c, d in chain[k - 1]:
                lo, hi = max(xa, c), min(xb, d)
                if hi - lo > width:
                    best, width = (lo, hi), hi - lo
        if best is None:
            return None
        t = best
    return t


def escape_point(
    schedule: MapSchedule, chain: list[IntervalUnion], forbidden: IntervalUnion, n: int
) -> Optional[Fraction]:
    """A point y strictly inside ``chain[0]`` with ``f_1^n(y)`` outside ``forbidden``.

    ``chain`` is the forward image chain of a nondegenerate closed interval.
    Returns None when the open image misses the complement of ``forbidden``
    (exact for maps without constant pieces). The target is a closed
    subinterval well inside the first gap, pulled back step by step inside
    the forward chain, so the midpoint of the result is a valid witness.
    """
    img = chain[n]
    if len(img) != 1 or img.lo == img.hi:
        return None
    gaps = _gaps(img.lo, img.hi, forbidden)
    if not gaps:
        return None
    g0, g1 = gaps[0]
    quarter = (g1 - g0) / 4
    t0 = _pull_back(schedule, chain, (g0 + quarter, g1 - quarter), n)
    if t0 is None:
        return None
    return (t0[0] + t0[1]) / 2


def point_separation_timeset(schedule: MapSchedule, x, eps, delta, horizon: int) -> TimeSet:
    """``{n : sup_{y in B(x, eps)} |f_1^n(x) - f_1^n(y)| > delta}``.

    The per-point sets whose gaps the hyperspace construction merges.
    """
    x, eps, delta = as_q(x), as_q(eps), as_q(delta)
    chain = schedule.images(_ball(x, eps), horizon)
    orbit = schedule.orbit(x, horizon)
    mask = []
    for n in range(1, horizon + 1):
        w, fx = chain[n], orbit[n]
        mask.append(w.lo < fx - delta or w.hi > fx + delta)
    return TimeSet.from_mask(mask)


@dataclass(frozen=True)
class HyperWitness:
    n: int
    strategy: str
    subset: FiniteSubset
    separation: Fraction

    def record(self) -> dict:
        return {
            "n": self.n,
            "strategy": self.strategy,
            "witness": [fmt_q(p) for p in self.subset.points],
            "separation": fmt_q(self.separation),
        }


@dataclass(frozen=True)
class HyperSensitivityResult:
    timeset: TimeSet
    witnesses: dict[int, HyperWitness] = field(default_factory=dict)
    base_delta: Fraction = Fraction(0)


def _around(points, r) -> IntervalUnion:
    return IntervalUnion.clipped([(p - r, p + r) for p in points])


def _hyper_candidates(schedule, a, chains, fa, delta, base, n):
    """Lazily yield ``(strategy, B)`` candidates, cheapest first."""
    ys = []
    for ch, fx in zip(chains, fa):
        y = escape_point(schedule, ch, _around([fx], base), n)
        if y is None:
            break
        ys.append(y)
    else:
        yield "partner", witness_partner(schedule, a, ys, n, base)
    near_all = _around(fa, delta)
    for ch in chains:
        y = escape_point(schedule, ch, near_all, n)
        if y is not None:
            yield "augment", a | FiniteSubset.of(y)
            break
    for anchor in fa:
        forbidden = _around([anchor], delta)
        zs = []
        for ch in chains:
            z = escape_point(schedule, ch, forbidden, n)
            if z is None:
                break
            zs.append(z)
        else:
            yield "anchored", FiniteSubset(tuple(zs))
            return


def hyperspace_sensitivity_timeset(
    schedule: MapSchedule,
    nbhd: HyperNeighborhood,
    delta,
    horizon: int,
    samples: int = 16,
    seed: int = 0,
) -> HyperSensitivityResult:
    """Certified ``N(B_dH(A, eps), delta)`` for the induced system.

    Every member carries a set B with ``d_H(A, B) < eps`` and
    ``d_H(f_1^n A, f_1^n B) > delta``, re-verified exactly. Candidates, in
    order: the partner construction at base separation ``2 delta``; A plus
    one escaping point; a full replacement of A escaping from one anchored
    image point; random draws from the Hausdorff ball. For maps without
    constant pieces the escape searches are exact, so the set is complete.
    """
    delta = as_q(delta)
    if delta <= 0:
        raise QueryError("delta must be positive")
    a, eps = nbhd.center, nbhd.radius
    xs = a.points
    chains = [schedule.images(_ball(x, eps), horizon) for x in xs]
    orbits = [schedule.orbit(x, horizon) for x in xs]
    base = 2 * delta
    witnesses: dict[int, HyperWitness] = {}

    for n in range(1, horizon + 1):
        fa = [orb[n] for orb in orbits]
        fa_set = FiniteSubset(tuple(fa))
        found = None
        for strategy, b in _hyper_candidates(schedule, a, chains, fa, delta, base, n):
            sep = hausdorff_distance(fa_set, induced_image(schedule, b, n))
            if nbhd.contains(b) and sep > delta:
                found = HyperWitness(n, strategy, b, sep)
                break
        if found is None and samples:
            for b in sample_hausdorff_ball(nbhd, samples, seed * 1_000_003 + n):
                sep = hausdorff_distance(fa_set, induced_image(schedule, b, n))
                if sep > delta:
                    found = HyperWitness(n, "sampled", b, sep)
                    break
        if found is not None:
            witnesses[n] = found

    return HyperSensitivityResult(TimeSet(horizon, frozenset(witnesses)), witnesses, base)


def hyperspace_brute_force(
    schedule: MapSchedule,
    nbhd: HyperNeighborhood,
    delta,
    horizon: int,
    grid_bits: int = 8,
    extra: int = 2,
    tol: float = 1e-12,
) -> TimeSet:
    """Exhaustive search over grid subsets B with ``|B| <= |A| + extra``.

    Candidate points are grid points strictly within ``eps`` of the center;
    float comparisons use a conservative tolerance so every reported n is a
    genuine member.
    """
    a, eps = nbhd.center, nbhd.radius
    size = 1 << grid_bits
    grid = [Fraction(k, size) for k in range(size + 1)]
    near = [g for g in grid if any(abs(g - x) < eps for x in a.points)]
    found = kernels.hyper_brute(
        schedule,
        [float(g) for g in near],
        [float(x) for x in a.points],
        float(eps),
        float(as_q(delta)),
        horizon,
        len(a) + extra,
        tol,
    )
    return TimeSet.from_mask(found)
