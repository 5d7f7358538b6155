"""Finite subsets of [0, 1] as the computable slice of the hyperspace.

Finite sets are dense in the space of nonempty compacta, so every hyperspace
object here is a :class:`FiniteSubset`; distances are exact Hausdorff
distances between rational point sets.
"""

from __future__ import annotations

import math
import re
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _toml
from .pl_dynamics import DomainError, MapSchedule
from .rational import as_q, fmt_q

__all__ = [
    "FiniteSubset",
    "VietorisBox",
    "HyperNeighborhood",
    "InvalidWitness",
    "hausdorff_distance",
    "directed_distance",
    "induced_image",
    "membership_vietoris",
    "sample_hausdorff_ball",
    "witness_partner",
]


class InvalidWitness(ValueError):
    """A witness point does not separate from its base point as required."""


@dataclass(frozen=True)
class FiniteSubset:
    points: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        pts = sorted({as_q(p) for p in self.points})
        if not pts:
            raise ValueError("a finite subset must be nonempty")
        if pts[0] < 0 or pts[-1] > 1:
            raise DomainError("finite subset leaves [0, 1]")
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def of(cls, *points) -> "FiniteSubset":
        return cls(tuple(points))

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __or__(self, other: "FiniteSubset") -> "FiniteSubset":
        return FiniteSubset(self.points + other.points)

    def to_record(self) -> str:
        return "{ points = [" + ", ".join(f'"{fmt_q(p)}"' for p in self.points) + "] }"

    @classmethod
    def from_record(cls, text: str) -> "FiniteSubset":
        body = text.strip()
        if not re.match(r"^\{.*\}$", body, re.DOTALL):
            raise ValueError("expected a record of the form '{ points = [...] }'")
        try:
            table = _toml.loads("s = " + body.replace("\n", " "))["s"]
        except _toml.TOMLDecodeError as exc:
            raise ValueError(f"malformed finite-subset record: {exc}") from exc
        if set(table) != {"points"}:
            raise ValueError("finite-subset record takes exactly one field, 'points'")
        return cls(tuple(table["points"]))

    def __str__(self) -> str:
        return "{" + ", ".join(fmt_q(p) for p in self.points) + "}"


def _nearest(sorted_pts: Sequence[Fraction], x: Fraction) -> Fraction:
    i = bisect_left(sorted_pts, x)
    best = None
    for j in (i - 1, i):
        if 0 <= j < len(sorted_pts):
            d = abs(sorted_pts[j] - x)
            if best is None or d < best:
                best = d
    return best


def directed_distance(a: FiniteSubset, b: FiniteSubset) -> Fraction:
    """``max over x in a of dist(x, b)``."""
    return max(_nearest(b.points, x) for x in a.points)


def hausdorff_distance(a: FiniteSubset, b: FiniteSubset) -> Fraction:
    return max(directed_distance(a, b), directed_distance(b, a))


def induced_image(schedule: MapSchedule, a: FiniteSubset, n: int) -> FiniteSubset:
    return FiniteSubset(tuple(schedule.orbit_point(x, n) for x in a.points))


@dataclass(frozen=True)
class VietorisBox:
    """Basic Vietoris open set ``<U_1, ..., U_k>`` for open intervals ``U_i``."""

    opens: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        opens = tuple((as_q(lo), as_q(hi)) for lo, hi in self.opens)
        if not opens:
            raise ValueError("a Vietoris box needs at least one open set")
        for lo, hi in opens:
            if not (0 <= lo < hi <= 1):
                raise ValueError(f"open interval ({fmt_q(lo)}, {fmt_q(hi)}) is empty or leaves [0, 1]")
        object.__setattr__(self, "opens", opens)

    @classmethod
    def of(cls, *opens) -> "VietorisBox":
        return cls(tuple(opens))


def _in_open(x: Fraction, lo: Fraction, hi: Fraction) -> bool:
    return lo < x < hi


def membership_vietoris(a: FiniteSubset, box: VietorisBox) -> bool:
    inside = all(any(_in_open(x, lo, hi) for lo, hi in box.opens) for x in a.points)
    meets = all(any(_in_open(x, lo, hi) for x in a.points) for lo, hi in box.opens)
    return inside and meets


@dataclass(frozen=True)
class HyperNeighborhood:
    """The open Hausdorff ball of radius ``radius`` about ``center``."""

    center: FiniteSubset
    radius: Fraction

    def __post_init__(self) -> None:
        r = as_q(self.radius)
        if r <= 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "radius", r)

    def contains(self, b: FiniteSubset) -> bool:
        return hausdorff_distance(self.center, b) < self.radius


def _offset_range(a: Fraction, eps: Fraction, denom: int) -> tuple[int, int]:
    # integers j with |j/denom| < eps and a + j/denom in [0, 1]
    span = math.ceil(eps * denom) - 1
    jmin = max(-span, math.ceil(-a * denom))
    jmax = min(span, math.floor((1 - a) * denom))
    return jmin, jmax


def sample_hausdorff_ball(
    nbhd: HyperNeighborhood,
    count: int,
    seed: int,
    extra_factor: int = 3,
) -> list[FiniteSubset]:
    """Draw ``count`` finite sets strictly inside ``nbhd``, deterministic per seed.

    Each draw puts one or two points near every center point and up to
    ``extra_factor * |center|`` further points near randomly chosen center
    points. Offsets live on a dyadic lattice fine enough for the radius.
    """
    rng = np.random.default_rng(seed)
    eps = nbhd.radius
    center = nbhd.center.points
    denom = 1 << max(6, math.ceil(math.log2(64 / eps)))
    ranges = [_offset_range(a, eps, denom) for a in center]

    def near(i: int) -> Fraction:
        lo, hi = ranges[i]
        return center[i] + Fraction(int(rng.integers(lo, hi + 1)), denom)

    out = []
    max_extra = extra_factor * len(center)
    while len(out) < count:
        pts = []
        for i in range(len(center)):
            pts.extend(near(i) for _ in range(1 + int(rng.integers(0, 2))))
        for _ in range(int(rng.integers(0, max_extra + 1))):
            pts.append(near(int(rng.integers(0, len(center)))))
        b = FiniteSubset(tuple(pts))
        if not nbhd.contains(b):  # pragma: no cover - construction guarantees it
            raise AssertionError(f"sample {b} left the Hausdorff ball")
        out.append(b)
    return out


def witness_partner(
    schedule: MapSchedule,
    a: FiniteSubset,
    witnesses: Sequence,
    n: int,
    delta0,
) -> FiniteSubset:
    """Partner set for ``a`` separated by more than ``delta0 / 2`` at time ``n``.

    ``witnesses[i]`` pairs with the i-th point of ``a`` (sorted order) and must
    satisfy ``|f_1^n(x_i) - f_1^n(y_i)| > delta0``. Points whose image stays
    within ``delta0 / 2`` of the first image are swapped for their witness;
    the others are kept, so every image point of the result lies more than
    ``delta0 / 2`` from ``f_1^n(x_1)``.
    """
    delta0 = as_q(delta0)
    ys = [as_q(y) for y in witnesses]
    xs = a.points
    if len(ys) != len(xs):
        raise InvalidWitness(f"{len(ys)} witnesses for {len(xs)} points")
    fx = [schedule.orbit_point(x, n) for x in xs]
    fy = [schedule.orbit_point(y, n) for y in ys]
    for i, (u, v) in enumerate(zip(fx, fy)):
        if abs(u - v) <= delta0:
            raise InvalidWitness(
                f"witness {fmt_q(ys[i])} for {fmt_q(xs[i])} separates by "
                f"{fmt_q(abs(u - v))} <= {fmt_q(delta0)} at n={n}"
            )
    half = delta0 / 2
    z = [ys[i] if abs(fx[0] - fx[i]) <= half else xs[i] for i in range(len(xs))]
    c = FiniteSubset(tuple(z))
    sep = hausdorff_distance(FiniteSubset(tuple(fx)), induced_image(schedule, c, n))
    if sep <= half:  # pragma: no cover - follows from the triangle inequality
        raise AssertionError(f"partner separation {fmt_q(sep)} <= {fmt_q(half)}")
    return c
