"""Pseudo-orbits, exact tracer sets and the hyperspace pseudo-orbit lifting.

Tracing is read as ``|f_1^i(y) - x_i| < eps`` for ``0 <= i <= m`` with
``f_1^0`` the identity. Tracer sets are computed for the closed condition
``<= eps`` by backward preimages; the strict condition is certified by a
positive margin, found by bisection on a ``2**-20`` lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .hyperspace import FiniteSubset, hausdorff_distance, induced_image
from .pl_dynamics import IntervalUnion, MapSchedule
from .rational import as_q, fmt_q

__all__ = [
    "PseudoOrbitError",
    "PseudoOrbit",
    "HyperPseudoOrbit",
    "TracerSet",
    "ShadowingReport",
    "NestedReport",
    "Assembly",
    "validate_pseudo_orbit",
    "perturbed_orbit",
    "adversarial_orbit",
    "tracer_set",
    "tracer_carrier",
    "is_traced",
    "finite_shadowing_check",
    "nested_tracer_limit",
    "validate_hyper_pseudo_orbit",
    "lift_hyper_pseudo_orbit",
    "hyper_trace_assemble",
    "random_hyper_pseudo_orbit",
    "trial_orbits",
    "estimate_modulus",
]

MARGIN_BITS = 20
_MARGIN_UNIT = Fraction(1, 1 << MARGIN_BITS)


class PseudoOrbitError(ValueError):
    pass


def validate_pseudo_orbit(
    schedule: MapSchedule, points: Sequence, delta
) -> tuple[bool, list[tuple[int, Fraction]]]:
    """Check ``|f_i(x_{i-1}) - x_i| < delta`` for every step.

    Returns ``(ok, violations)`` where each violation is ``(i, gap)``.
    """
    pts = [as_q(p) for p in points]
    if not pts:
        raise PseudoOrbitError("a pseudo-orbit needs at least one point")
    delta = as_q(delta)
    violations = []
    for i in range(1, len(pts)):
        gap = abs(schedule.map_at(i)(pts[i - 1]) - pts[i])
        if gap >= delta:
            violations.append((i, gap))
    return not violations, violations


@dataclass(frozen=True)
class PseudoOrbit:
    points: tuple[Fraction, ...]
    delta: Fraction

    @classmethod
    def checked(cls, schedule: MapSchedule, points: Sequence, delta) -> "PseudoOrbit":
        ok, bad = validate_pseudo_orbit(schedule, points, delta)
        if not ok:
            i, gap = bad[0]
            raise PseudoOrbitError(f"step {i} misses by {fmt_q(gap)} >= delta")
        return cls(tuple(as_q(p) for p in points), as_q(delta))

    @property
    def length(self) -> int:
        return len(self.points) - 1

    def prefix(self, m: int) -> "PseudoOrbit":
        return PseudoOrbit(self.points[: m + 1], self.delta)

    def record(self) -> dict:
        return {"points": [fmt_q(p) for p in self.points], "delta": fmt_q(self.delta)}


def _noise_denominator(delta: Fraction) -> int:
    # dyadic lattice with at least 1024 steps inside (-delta, delta)
    return 1 << max(10, math.ceil(math.log2(1024 / delta)))


def _clamp(x: Fraction) -> Fraction:
    return min(max(x, Fraction(0)), Fraction(1))


def perturbed_orbit(schedule: MapSchedule, x0, delta, m: int, seed: int) -> PseudoOrbit:
    """``x_i = clamp(f_i(x_{i-1}) + eta_i)`` with ``|eta_i| < delta`` from ``seed``.

    Clamping toward [0, 1] only shrinks the step error since ``f_i`` maps
    into [0, 1].
    """
    delta = as_q(delta)
    if delta <= 0 or m < 1:
        raise ValueError("need delta > 0 and m >= 1")
    rng = np.random.default_rng(seed)
    denom = _noise_denominator(delta)
    span = math.ceil(delta * denom) - 1
    pts = [as_q(x0)]
    for i in range(1, m + 1):
        eta = Fraction(int(rng.integers(-span, span + 1)), denom)
        pts.append(_clamp(schedule.map_at(i)(pts[-1]) + eta))
    return PseudoOrbit(tuple(pts), delta)


def adversarial_orbit(schedule: MapSchedule, x0, delta, m: int, seed: int) -> PseudoOrbit:
    """Pseudo-orbit that hugs breakpoints and otherwise takes near-maximal steps.

    Folds are where preimages split and tracer sets thin out, so each step
    jumps onto a breakpoint of the next map when one lies within ``delta``;
    failing that it moves almost ``delta`` in a random direction.
    """
    delta = as_q(delta)
    if delta <= 0 or m < 1:
        raise ValueError("need delta > 0 and m >= 1")
    rng = np.random.default_rng(seed)
    denom = _noise_denominator(delta)
    span = math.ceil(delta * denom) - 1
    pts = [as_q(x0)]
    for i in range(1, m + 1):
        y = schedule.map_at(i)(pts[-1])
        nxt = schedule.map_at(i + 1).breakpoints
        near = [b for b in nxt if abs(b - y) < delta]
        if near and rng.random() < 0.7:
            b = near[int(rng.integers(0, len(near)))]
            # land just past the breakpoint, still strictly within delta
            tweak = Fraction(int(rng.integers(-2, 3)), denom)
            x = b + tweak if abs(b + tweak - y) < delta else b
        else:
            sign = 1 if rng.random() < 0.5 else -1
            x = y + sign * Fraction(span - int(rng.integers(0, max(1, span // 16))), denom)
        pts.append(_clamp(x))
    return PseudoOrbit(tuple(pts), delta)


def tracer_carrier(schedule: MapSchedule, points: Sequence[Fraction], eps: Fraction) -> IntervalUnion:
    """``{y : |f_1^i(y) - x_i| <= eps, 0 <= i <= m}`` by backward propagation."""
    m = len(points) - 1
    s = IntervalUnion.clipped([(points[m] - eps, points[m] + eps)])
    for i in range(m, 0, -1):
        if not s:
            return s
        s = schedule.map_at(i).preimage(s).intersect_interval(points[i - 1] - eps, points[i - 1] + eps)
    return s


@dataclass(frozen=True)
class TracerSet:
    carrier: IntervalUnion
    epsilon: Fraction
    margin: Fraction

    @property
    def traced(self) -> bool:
        """Strict tracing certified; zero margin counts as indeterminate."""
        return self.margin > 0

    @property
    def status(self) -> str:
        if self.carrier.is_empty():
            return "untraced"
        return "traced" if self.margin > 0 else "boundary-indeterminate"

    def record(self) -> dict:
        return {
            "carrier": [[fmt_q(lo), fmt_q(hi)] for lo, hi in self.carrier],
            "epsilon": fmt_q(self.epsilon),
            "margin": fmt_q(self.margin),
            "status": self.status,
        }


def tracer_set(schedule: MapSchedule, po: PseudoOrbit, epsilon) -> TracerSet:
    eps = as_q(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    pts = po.points
    carrier = tracer_carrier(schedule, pts, eps)
    if carrier.is_empty():
        return TracerSet(carrier, eps, Fraction(0))
    # largest k with a nonempty carrier at radius eps - k * 2**-20
    lo, hi = 0, math.floor(eps / _MARGIN_UNIT)
    if tracer_carrier(schedule, pts, eps - hi * _MARGIN_UNIT):
        lo = hi
    else:
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if tracer_carrier(schedule, pts, eps - mid * _MARGIN_UNIT):
                lo = mid
            else:
                hi = mid
    return TracerSet(carrier, eps, lo * _MARGIN_UNIT)


def is_traced(schedule: MapSchedule, po: PseudoOrbit, epsilon) -> bool:
    """Same verdict as ``tracer_set(...).traced`` with a single carrier computation."""
    eps = as_q(epsilon)
    if eps <= _MARGIN_UNIT:
        return tracer_set(schedule, po, eps).traced
    return not tracer_carrier(schedule, po.points, eps - _MARGIN_UNIT).is_empty()


@dataclass
class ShadowingReport:
    epsilon: Fraction
    delta: Fraction
    m: int
    trials: int
    traced: int
    failures: list[PseudoOrbit] = field(default_factory=list)
    modulus: Optional[Fraction] = None
    modulus_failures_at_double: Optional[int] = None

    @property
    def all_traced(self) -> bool:
        return self.traced == self.trials

    def record(self) -> dict:
        return {
            "epsilon": fmt_q(self.epsilon),
            "delta": fmt_q(self.delta),
            "m": self.m,
            "trials": self.trials,
            "traced": self.traced,
            "failures": [f.record() for f in self.failures[:5]],
            "modulus": None if self.modulus is None else fmt_q(self.modulus),
            "failures_at_double_modulus": self.modulus_failures_at_double,
        }


def trial_orbits(schedule: MapSchedule, delta: Fraction, m: int, trials: int, seed: int):
    """Seeded trial pseudo-orbits, alternating random starts with breakpoint-hugging ones."""
    rng = np.random.default_rng(seed)
    breakpoints = sorted({b for f in schedule.maps for b in f.breakpoints})
    for t in range(trials):
        sub = int(rng.integers(0, 2**31))
        if t % 2 == 0:
            x0 = Fraction(int(rng.integers(0, 1 << 16)), 1 << 16)
            yield perturbed_orbit(schedule, x0, delta, m, sub)
        else:
            b = breakpoints[int(rng.integers(0, len(breakpoints)))]
            x0 = _clamp(b + Fraction(int(rng.integers(-64, 65)), 1 << 12))
            yield adversarial_orbit(schedule, x0, delta, m, sub)


def _count_traced(schedule, eps, delta, m, trials, seed) -> tuple[int, list[PseudoOrbit]]:
    if delta == 0:
        # true orbits trace themselves
        return trials, []
    traced, failures = 0, []
    for po in trial_orbits(schedule, delta, m, trials, seed):
        if is_traced(schedule, po, eps):
            traced += 1
        else:
            failures.append(po)
    return traced, failures


def finite_shadowing_check(
    schedule: MapSchedule,
    epsilon,
    delta,
    m: int,
    trials: int,
    seed: int,
    bisect_steps: int = 10,
) -> ShadowingReport:
    """Trace ``trials`` random and adversarial delta-pseudo-orbits of length m.

    Also bisects ``delta`` over ``(0, epsilon]`` for the largest value with no
    failures on the same trial schedule; this is an empirical modulus, valid
    only for the orbits tested.
    """
    eps, delta = as_q(epsilon), as_q(delta)
    if eps <= 0 or delta < 0:
        raise ValueError("need epsilon > 0 and delta >= 0")
    traced, failures = _count_traced(schedule, eps, delta, m, trials, seed)
    modulus = estimate_modulus(schedule, eps, m, trials, seed, bisect_steps)
    double_failures = len(_count_traced(schedule, eps, 2 * modulus, m, trials, seed)[1]) if modulus else None
    return ShadowingReport(eps, delta, m, trials, traced, failures, modulus, double_failures)


def estimate_modulus(schedule, epsilon, m, trials, seed, bisect_steps=10) -> Fraction:
    """Largest delta on a dyadic grid of ``(0, epsilon]`` with zero failures."""
    eps = as_q(epsilon)
    lo, hi = Fraction(0), eps
    if not _count_traced(schedule, eps, hi, m, trials, seed)[1]:
        return hi
    for _ in range(bisect_steps):
        mid = (lo + hi) / 2
        if _count_traced(schedule, eps, mid, m, trials, seed)[1]:
            hi = mid
        else:
            lo = mid
    return lo


@dataclass(frozen=True)
class NestedReport:
    lengths: tuple[int, ...]
    carriers: tuple[IntervalUnion, ...]
    nested: bool
    first_empty: Optional[int]

    @property
    def final_nonempty(self) -> bool:
        return not self.carriers[-1].is_empty()

    def record(self) -> dict:
        return {
            "lengths": list(self.lengths),
            "nested": self.nested,
            "first_empty_length": self.first_empty,
            "carriers": [[[fmt_q(lo), fmt_q(hi)] for lo, hi in c] for c in self.carriers],
        }


def nested_tracer_limit(schedule: MapSchedule, po: PseudoOrbit, lengths: Sequence[int], epsilon) -> NestedReport:
    eps = as_q(epsilon)
    lengths = tuple(lengths)
    if any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise ValueError("lengths must be strictly increasing")
    if lengths and lengths[-1] > po.length:
        raise ValueError("a prefix length exceeds the pseudo-orbit")
    carriers = tuple(tracer_carrier(schedule, po.points[: m + 1], eps) for m in lengths)
    nested = all(b.issubset(a) for a, b in zip(carriers, carriers[1:]))
    first_empty = next((m for m, c in zip(lengths, carriers) if c.is_empty()), None)
    return NestedReport(lengths, carriers, nested, first_empty)


# hyperspace pseudo-orbits ------------------------------------------------------


@dataclass(frozen=True)
class HyperPseudoOrbit:
    sets: tuple[FiniteSubset, ...]
    delta: Fraction

    @classmethod
    def checked(cls, schedule: MapSchedule, sets: Sequence[FiniteSubset], delta) -> "HyperPseudoOrbit":
        hpo = cls(tuple(sets), as_q(delta))
        ok, bad = validate_hyper_pseudo_orbit(schedule, hpo)
        if not ok:
            raise PseudoOrbitError(f"hyper step {bad[0][0]} misses by {fmt_q(bad[0][1])} >= delta")
        return hpo

    @classmethod
    def singletons(cls, po: PseudoOrbit) -> "HyperPseudoOrbit":
        return cls(tuple(FiniteSubset.of(x) for x in po.points), po.delta)

    def record(self) -> dict:
        return {"sets": [[fmt_q(p) for p in s.points] for s in self.sets], "delta": fmt_q(self.delta)}


def validate_hyper_pseudo_orbit(schedule: MapSchedule, hpo: HyperPseudoOrbit):
    if not hpo.sets:
        raise PseudoOrbitError("a hyper pseudo-orbit needs at least one set")
    bad = []
    for i in range(1, len(hpo.sets)):
        step = FiniteSubset(tuple(schedule.map_at(i)(x) for x in hpo.sets[i - 1]))
        gap = hausdorff_distance(step, hpo.sets[i])
        if gap >= hpo.delta:
            bad.append((i, gap))
    return not bad, bad


def _closest(candidates: Sequence[Fraction], target: Fraction, delta: Fraction) -> Fraction:
    best = min(candidates, key=lambda c: (abs(c - target), c))
    if abs(best - target) >= delta:  # pragma: no cover - guaranteed by validation
        raise PseudoOrbitError("no admissible neighbour; hyper pseudo-orbit invalid")
    return best


def lift_hyper_pseudo_orbit(schedule: MapSchedule, hpo: HyperPseudoOrbit) -> list[PseudoOrbit]:
    """Split a hyper pseudo-orbit into point pseudo-orbits covering every set.

    First every terminal point is chained backward through predecessors
    whose image is within delta. Then, while some index has points no chain
    visits, take the largest such index s and run each uncovered point of
    ``A_s`` backward to index 0 and forward to index m; the forward step
    exists because ``f(A_s)`` lies in the delta-neighbourhood of ``A_{s+1}``.
    """
    ok, bad = validate_hyper_pseudo_orbit(schedule, hpo)
    if not ok:
        raise PseudoOrbitError(f"invalid hyper pseudo-orbit at step {bad[0][0]}")
    sets = [s.points for s in hpo.sets]
    m, delta = len(sets) - 1, hpo.delta
    covered = [set() for _ in sets]
    chains: list[list[Fraction]] = []

    def backward(i: int, x: Fraction) -> list[Fraction]:
        tail = [x]
        for k in range(i, 0, -1):
            f = schedule.map_at(k)
            tail.append(min(sets[k - 1], key=lambda c: (abs(f(c) - tail[-1]), c)))
            if abs(schedule.map_at(k)(tail[-1]) - tail[-2]) >= delta:  # pragma: no cover
                raise PseudoOrbitError("backward step failed; hyper pseudo-orbit invalid")
        return tail[::-1]

    def forward(i: int, x: Fraction) -> list[Fraction]:
        head = []
        for k in range(i + 1, m + 1):
            fx = schedule.map_at(k)(x)
            x = _closest(sets[k], fx, delta)
            head.append(x)
        return head

    def add(chain: list[Fraction]) -> None:
        chains.append(chain)
        for i, x in enumerate(chain):
            covered[i].add(x)

    for x in sets[m]:
        add(backward(m, x))
    while True:
        open_idx = [i for i in range(m) if len(covered[i]) < len(sets[i])]
        if not open_idx:
            break
        s = max(open_idx)
        for x in sets[s]:
            if x not in covered[s]:
                add(backward(s, x) + forward(s, x))
    return [PseudoOrbit(tuple(c), delta) for c in chains]


@dataclass(frozen=True)
class Assembly:
    subset: Optional[FiniteSubset]
    failing_index: Optional[int]
    distances: tuple[Fraction, ...] = ()

    def record(self) -> dict:
        return {
            "subset": None if self.subset is None else [fmt_q(p) for p in self.subset.points],
            "failing_index": self.failing_index,
            "distances": [fmt_q(d) for d in self.distances],
        }


def _pick(carrier: IntervalUnion, start: Fraction) -> Fraction:
    # the orbit's own start when it traces, else the middle of the widest piece
    if carrier.contains(start):
        return start
    comps = carrier.nondegenerate() or carrier.components
    lo, hi = max(comps, key=lambda c: c[1] - c[0])
    return (lo + hi) / 2


def hyper_trace_assemble(
    schedule: MapSchedule, hpo: HyperPseudoOrbit, lifted: Sequence[PseudoOrbit], epsilon
) -> Assembly:
    """Collect one tracing point per lifted orbit into a set B tracing ``hpo``.

    Returns an Assembly with ``subset=None`` and the index of the first
    lifted orbit whose tracer set is empty when any is.
    """
    eps = as_q(epsilon)
    picks = []
    for j, po in enumerate(lifted):
        carrier = tracer_carrier(schedule, po.points, eps)
        if carrier.is_empty():
            return Assembly(None, j)
        picks.append(_pick(carrier, po.points[0]))
    b = FiniteSubset(tuple(picks))
    dists = tuple(
        hausdorff_distance(induced_image(schedule, b, i), a) for i, a in enumerate(hpo.sets)
    )
    if any(d > eps for d in dists):  # pragma: no cover - each pick traces its chain
        raise AssertionError("assembled set fails to trace the hyper pseudo-orbit")
    return Assembly(b, None, dists)


def random_hyper_pseudo_orbit(
    schedule: MapSchedule, m: int, max_size: int, delta, seed: int
) -> HyperPseudoOrbit:
    """Seeded valid hyper pseudo-orbit: each image point spawns one or two
    perturbed successors, capped at ``max_size`` points per set."""
    delta = as_q(delta)
    rng = np.random.default_rng(seed)
    denom = _noise_denominator(delta)
    span = math.ceil(delta * denom) - 1

    def jitter(y: Fraction) -> Fraction:
        return _clamp(y + Fraction(int(rng.integers(-span, span + 1)), denom))

    size = int(rng.integers(1, max_size + 1))
    sets = [FiniteSubset(tuple(Fraction(int(rng.integers(0, 257)), 256) for _ in range(size)))]
    for i in range(1, m + 1):
        images = sorted({schedule.map_at(i)(x) for x in sets[-1]})
        pts = [jitter(y) for y in images]
        room = max_size - len(pts)
        for _ in range(int(rng.integers(0, room + 1)) if room > 0 else 0):
            pts.append(jitter(images[int(rng.integers(0, len(images)))]))
        sets.append(FiniteSubset(tuple(pts)))
    hpo = HyperPseudoOrbit(tuple(sets), delta)
    ok, _ = validate_hyper_pseudo_orbit(schedule, hpo)
    if not ok:  # pragma: no cover - every point sits within delta of an image and vice versa
        raise AssertionError("generated hyper pseudo-orbit is invalid")
    return hpo
