"""Piecewise-linear self-maps of [0, 1] and periodic schedules of them.

A :class:`MapSchedule` is the non-autonomous system ``f_1, f_2, ...`` with
``f_n = maps[(n - 1) % len(maps)]``; ``f_1^n`` is ``f_n o ... o f_1`` and
``f_1^0`` is the identity. Images and preimages of closed interval unions are
computed exactly on :class:`IntervalUnion` values.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import _toml
from .rational import as_q, check_size, fmt_q

__all__ = [
    "DomainError",
    "IntervalUnion",
    "PLMap",
    "MapSchedule",
    "ProductSystem",
    "closed",
]

ZERO = Fraction(0)
ONE = Fraction(1)

Pair = tuple[Fraction, Fraction]


class DomainError(ValueError):
    """A point or interval lies outside [0, 1]."""


def _in_unit(x: Fraction) -> bool:
    return ZERO <= x <= ONE


def _merge(pairs: list) -> tuple[Pair, ...]:
    pairs.sort()
    merged: list[list[Fraction]] = []
    for lo, hi in pairs:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


@dataclass(frozen=True)
class IntervalUnion:
    """Finite union of closed subintervals of [0, 1].

    Components are sorted, pairwise disjoint and non-touching: overlapping or
    adjacent intervals are merged on construction. Degenerate components
    ``[a, a]`` are allowed.
    """

    components: tuple[Pair, ...] = ()

    def __post_init__(self) -> None:
        pairs = []
        for lo, hi in self.components:
            lo, hi = as_q(lo), as_q(hi)
            if lo > hi:
                raise ValueError(f"empty interval [{fmt_q(lo)}, {fmt_q(hi)}]")
            if not (_in_unit(lo) and _in_unit(hi)):
                raise DomainError(f"interval [{fmt_q(lo)}, {fmt_q(hi)}] leaves [0, 1]")
            check_size(lo)
            check_size(hi)
            pairs.append((lo, hi))
        object.__setattr__(self, "components", _merge(pairs))

    @classmethod
    def _trusted(cls, pairs: list) -> "IntervalUnion":
        # pairs already ordered lo <= hi inside [0, 1]; skip validation
        for lo, hi in pairs:
            check_size(lo)
            check_size(hi)
        u = object.__new__(cls)
        object.__setattr__(u, "components", _merge(pairs))
        return u

    @classmethod
    def clipped(cls, pairs: Iterable[tuple]) -> "IntervalUnion":
        """Build from intervals that may stick out of [0, 1]; clip them first."""
        kept = []
        for lo, hi in pairs:
            lo, hi = max(as_q(lo), ZERO), min(as_q(hi), ONE)
            if lo <= hi:
                kept.append((lo, hi))
        return cls(tuple(kept))

    @classmethod
    def point(cls, x) -> "IntervalUnion":
        x = as_q(x)
        return cls(((x, x),))

    @classmethod
    def full(cls) -> "IntervalUnion":
        return cls(((ZERO, ONE),))

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __bool__(self) -> bool:
        return bool(self.components)

    def is_empty(self) -> bool:
        return not self.components

    @property
    def lo(self) -> Fraction:
        return self.components[0][0]

    @property
    def hi(self) -> Fraction:
        return self.components[-1][1]

    @property
    def diameter(self) -> Fraction:
        if not self.components:
            return ZERO
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        return any(lo <= x <= hi for lo, hi in self.components)

    def issubset(self, other: "IntervalUnion") -> bool:
        return all(
            any(olo <= lo and hi <= ohi for olo, ohi in other.components)
            for lo, hi in self.components
        )

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self.components + other.components)

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        i = j = 0
        a, b = self.components, other.components
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalUnion._trusted(out)

    def intersect_interval(self, lo, hi) -> "IntervalUnion":
        return self.intersect(IntervalUnion.clipped([(lo, hi)]))

    def nondegenerate(self) -> tuple[Pair, ...]:
        return tuple(c for c in self.components if c[0] < c[1])

    def meets_open(self, lo: Fraction, hi: Fraction) -> bool:
        """True iff some component shares an interior point with ``(lo, hi)``.

        Degenerate components never count; this is the open-set witness test.
        """
        return any(max(clo, lo) < min(chi, hi) for clo, chi in self.components)

    def __str__(self) -> str:
        if not self.components:
            return "{}"
        return " u ".join(f"[{fmt_q(lo)}, {fmt_q(hi)}]" for lo, hi in self.components)


def closed(lo, hi) -> IntervalUnion:
    """The closed interval ``[lo, hi]`` as a one-component union."""
    return IntervalUnion(((as_q(lo), as_q(hi)),))


_RECORD_RE = re.compile(r"^\s*pl-map\s*(\{.*\})\s*$", re.DOTALL)


@dataclass(frozen=True)
class PLMap:
    """Continuous piecewise-linear map of [0, 1] given by its graph vertices.

    On ``[b_{j-1}, b_j]`` the map interpolates linearly between ``v_{j-1}``
    and ``v_j``.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        bps = tuple(as_q(b) for b in self.breakpoints)
        vals = tuple(as_q(v) for v in self.values)
        if len(bps) < 2:
            raise ValueError("a PL map needs at least two breakpoints")
        if len(bps) != len(vals):
            raise ValueError("breakpoints and values differ in length")
        if bps[0] != ZERO or bps[-1] != ONE:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(b0 >= b1 for b0, b1 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if not all(_in_unit(v) for v in vals):
            raise ValueError("values must lie in [0, 1] for a self-map")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        # per-piece (slope, intercept), so evaluation is one multiply-add
        coef = []
        for b0, b1, v0, v1 in zip(bps, bps[1:], vals, vals[1:]):
            slope = (v1 - v0) / (b1 - b0)
            coef.append((slope, v0 - slope * b0))
        object.__setattr__(self, "_coef", tuple(coef))

    @classmethod
    def identity(cls) -> "PLMap":
        return cls((ZERO, ONE), (ZERO, ONE), name="id")

    @property
    def no_constant_piece(self) -> bool:
        return all(v0 != v1 for v0, v1 in zip(self.values, self.values[1:]))

    def pieces(self) -> Iterator[tuple[Fraction, Fraction, Fraction, Fraction]]:
        bps, vals = self.breakpoints, self.values
        for j in range(1, len(bps)):
            yield bps[j - 1], bps[j], vals[j - 1], vals[j]

    @property
    def slope_max(self) -> Fraction:
        return max(abs((v1 - v0) / (b1 - b0)) for b0, b1, v0, v1 in self.pieces())

    def __call__(self, x) -> Fraction:
        x = as_q(x)
        if not _in_unit(x):
            raise DomainError(f"{fmt_q(x)} is outside [0, 1]")
        return self._eval(x)

    def _eval(self, x: Fraction) -> Fraction:
        bps = self.breakpoints
        j = min(max(bisect_right(bps, x), 1), len(bps) - 1)
        slope, icpt = self._coef[j - 1]
        return check_size(slope * x + icpt)

    def image(self, u: IntervalUnion) -> IntervalUnion:
        out = []
        for lo, hi in u:
            if lo == hi:
                y = self(lo)
                out.append((y, y))
                continue
            for b0, b1, v0, v1 in self.pieces():
                a, b = max(lo, b0), min(hi, b1)
                if a >= b:
                    continue
                slope = (v1 - v0) / (b1 - b0)
                ya = v0 + slope * (a - b0)
                yb = v0 + slope * (b - b0)
                out.append((ya, yb) if ya <= yb else (yb, ya))
        return IntervalUnion._trusted(out)

    def preimage(self, u: IntervalUnion) -> IntervalUnion:
        out = []
        for c, d in u:
            out.extend(self.preimage_pairs(c, d))
        return IntervalUnion._trusted(out)

    def preimage_pairs(self, c: Fraction, d: Fraction) -> list[tuple[Fraction, Fraction]]:
        """Per-piece preimages of ``[c, d]``, unmerged, in piece order."""
        out = []
        for (b0, b1, v0, v1), (slope, icpt) in zip(self.pieces(), self._coef):
            if slope == 0:
                if c <= v0 <= d:
                    out.append((b0, b1))
                continue
            vlo, vhi = (v0, v1) if v0 < v1 else (v1, v0)
            ylo, yhi = max(c, vlo), min(d, vhi)
            if ylo > yhi:
                continue
            xa, xb = (ylo - icpt) / slope, (yhi - icpt) / slope
            out.append((xa, xb) if xa <= xb else (xb, xa))
        return out

    def to_record(self) -> str:
        bps = ", ".join(f'"{fmt_q(b)}"' for b in self.breakpoints)
        vals = ", ".join(f'"{fmt_q(v)}"' for v in self.values)
        return f"pl-map {{ breakpoints = [{bps}], values = [{vals}] }}"

    @classmethod
    def from_record(cls, text: str) -> "PLMap":
        match = _RECORD_RE.match(text)
        if not match:
            raise ValueError("expected a record of the form 'pl-map { ... }'")
        try:
            table = _toml.loads("m = " + match.group(1).replace("\n", " "))["m"]
        except _toml.TOMLDecodeError as exc:
            raise ValueError(f"malformed pl-map record: {exc}") from exc
        unknown = set(table) - {"breakpoints", "values"}
        if unknown:
            raise ValueError(f"unknown pl-map fields: {sorted(unknown)}")
        return cls(tuple(table["breakpoints"]), tuple(table["values"]))


@dataclass(frozen=True)
class MapSchedule:
    """Periodic non-autonomous system; ``maps[0]`` is ``f_1``."""

    maps: tuple[PLMap, ...]

    def __post_init__(self) -> None:
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("a schedule needs at least one map")
        object.__setattr__(self, "maps", maps)

    @property
    def period(self) -> int:
        return len(self.maps)

    @property
    def no_constant_piece(self) -> bool:
        return all(f.no_constant_piece for f in self.maps)

    def map_at(self, n: int) -> PLMap:
        if n < 1:
            raise ValueError("dynamics indices start at 1")
        return self.maps[(n - 1) % len(self.maps)]

    def shifted(self, m: int) -> "MapSchedule":
        """Schedule whose n-th map is this schedule's (n + m)-th."""
        k = m % len(self.maps)
        return MapSchedule(self.maps[k:] + self.maps[:k])

    def orbit_point(self, x, n: int) -> Fraction:
        x = as_q(x)
        if not _in_unit(x):
            raise DomainError(f"{fmt_q(x)} is outside [0, 1]")
        maps, p = self.maps, len(self.maps)
        for i in range(n):
            x = maps[i % p]._eval(x)
        return x

    def orbit(self, x, n: int) -> list[Fraction]:
        """``[x, f_1^1(x), ..., f_1^n(x)]``."""
        x = as_q(x)
        if not _in_unit(x):
            raise DomainError(f"{fmt_q(x)} is outside [0, 1]")
        out = [x]
        maps, p = self.maps, len(self.maps)
        for i in range(n):
            x = maps[i % p]._eval(x)
            out.append(x)
        return out

    def images(self, u: IntervalUnion, horizon: int) -> list[IntervalUnion]:
        """``[u, f_1^1(u), ..., f_1^horizon(u)]``, sharing the forward chain."""
        out = [u]
        for i in range(1, horizon + 1):
            u = self.map_at(i).image(u)
            out.append(u)
        return out

    def image_at_time(self, u: IntervalUnion, n: int) -> tuple[IntervalUnion, Fraction]:
        if n < 0:
            raise ValueError("n must be non-negative")
        w = self.images(u, n)[-1]
        return w, w.diameter

    def preimage_at_time(self, u: IntervalUnion, n: int) -> IntervalUnion:
        """``(f_1^n)^{-1}(u)``. Component counts grow with the lap number."""
        for i in range(n, 0, -1):
            u = self.map_at(i).preimage(u)
        return u


@dataclass(frozen=True)
class ProductSystem:
    """``f x g`` acting on [0, 1]^2 with the sum metric."""

    first: MapSchedule
    second: MapSchedule

    @staticmethod
    def distance(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
        return abs(p[0] - q[0]) + abs(p[1] - q[1])

    def orbit_point(self, p: Sequence, n: int) -> tuple[Fraction, Fraction]:
        return self.first.orbit_point(p[0], n), self.second.orbit_point(p[1], n)
