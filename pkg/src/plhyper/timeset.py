"""Finite-horizon subsets of {1..H} and the largeness classifiers.

Every verdict is evidence at the stated horizon: syndeticity, thickness,
cofiniteness and upper density are asymptotic notions that no finite
prefix decides. Reports carry the horizon and a ``tail_uncertain`` flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .rational import as_q, fmt_q

__all__ = [
    "TimeSet",
    "Thresholds",
    "ClassificationReport",
    "ImplicationViolation",
    "gap_metrics",
    "thickly_syndetic_bound",
    "upper_density_profile",
    "classify",
    "run_length_encode",
]


class ImplicationViolation(AssertionError):
    """cofinite => thickly syndetic => syndetic failed for a classified set."""


@dataclass(frozen=True)
class TimeSet:
    horizon: int
    members: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        members = frozenset(int(n) for n in self.members)
        bad = [n for n in members if not 1 <= n <= self.horizon]
        if bad:
            raise ValueError(f"members outside 1..{self.horizon}: {sorted(bad)[:5]}")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_mask(cls, mask: Iterable[bool]) -> "TimeSet":
        mask = list(mask)
        return cls(len(mask), frozenset(i + 1 for i, m in enumerate(mask) if m))

    @classmethod
    def full(cls, horizon: int) -> "TimeSet":
        return cls(horizon, frozenset(range(1, horizon + 1)))

    def __contains__(self, n: int) -> bool:
        return n in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def issubset(self, other: "TimeSet") -> bool:
        return self.members <= other.members

    def __and__(self, other: "TimeSet") -> "TimeSet":
        return TimeSet(min(self.horizon, other.horizon), self.members & other.members)

    def __or__(self, other: "TimeSet") -> "TimeSet":
        h = min(self.horizon, other.horizon)
        return TimeSet(h, frozenset(n for n in self.members | other.members if n <= h))

    def shifted_window(self, k: int) -> "TimeSet":
        """``{n : n, n+1, ..., n+k-1 all in self}`` over horizon ``H - k + 1``."""
        if not 1 <= k <= self.horizon:
            raise ValueError(f"window length {k} outside 1..{self.horizon}")
        m = self.members
        h = self.horizon - k + 1
        return TimeSet(h, frozenset(n for n in range(1, h + 1) if all(n + j in m for j in range(k))))


def run_length_encode(s: TimeSet) -> str:
    """``{3, 4, ..., 64}`` -> ``"3-64"``; isolated members stay single."""
    runs = _runs(s.sorted())
    return ",".join(f"{a}" if a == b else f"{a}-{b}" for a, b in runs)


def _runs(members: list[int]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    for n in members:
        if runs and n == runs[-1][1] + 1:
            runs[-1] = (runs[-1][0], n)
        else:
            runs.append((n, n))
    return runs


def _bound(members: list[int]) -> Optional[int]:
    if not members:
        return None
    gaps = [members[0]] + [b - a for a, b in zip(members, members[1:])]
    return max(gaps)


def gap_metrics(s: TimeSet) -> tuple[Optional[int], int, Optional[int]]:
    """``(syndetic_bound, longest_run, cofinite_from)``.

    The syndetic bound counts the leading gap from 0 to the first member.
    ``cofinite_from`` is the start of the final run when that run reaches the
    horizon and is strictly longer than every earlier run and every gap;
    anything weaker is no evidence of a cofinite tail.
    """
    members = s.sorted()
    bound = _bound(members)
    runs = _runs(members)
    longest = max((b - a + 1 for a, b in runs), default=0)
    cofinite_from = None
    if runs and runs[-1][1] == s.horizon:
        start, end = runs[-1]
        length = end - start + 1
        earlier = max((b - a + 1 for a, b in runs[:-1]), default=0)
        if length > earlier and length > bound:
            cofinite_from = start
        elif len(runs) == 1 and start == 1:
            cofinite_from = 1
    return bound, longest, cofinite_from


def tail_gap(s: TimeSet) -> int:
    members = s.sorted()
    return s.horizon - members[-1] if members else s.horizon


def thickly_syndetic_bound(s: TimeSet, k: int) -> Optional[int]:
    if k > s.horizon:
        raise ValueError(f"window length {k} exceeds horizon {s.horizon}")
    if k < 1:
        raise ValueError("window length must be positive")
    return _bound(s.shifted_window(k).sorted())


def upper_density_profile(s: TimeSet) -> tuple[list[Fraction], Fraction]:
    profile = []
    count = 0
    for n in range(1, s.horizon + 1):
        count += n in s.members
        profile.append(Fraction(count, n))
    start = -(-s.horizon // 2)
    estimate = max(profile[start - 1:])
    return profile, estimate


@dataclass(frozen=True)
class Thresholds:
    density_min: Fraction = Fraction(1, 10)
    thick_run_min: int = 8
    ts_window_max: int = 4

    def __post_init__(self) -> None:
        object.__setattr__(self, "density_min", as_q(self.density_min))
        if self.density_min <= 0 or self.thick_run_min < 1 or self.ts_window_max < 1:
            raise ValueError("thresholds must be positive")


@dataclass(frozen=True)
class ClassificationReport:
    horizon: int
    syndetic_bound: Optional[int]
    longest_run: int
    thickly_syndetic_bounds: dict[int, Optional[int]]
    cofinite_from: Optional[int]
    density_estimate: Fraction
    tail_uncertain: bool
    thresholds: Thresholds
    verdicts: dict[str, bool] = field(default_factory=dict)

    def record(self) -> dict:
        return {
            "horizon": self.horizon,
            "syndetic_bound": self.syndetic_bound,
            "longest_run": self.longest_run,
            "thickly_syndetic_bounds": {str(k): v for k, v in self.thickly_syndetic_bounds.items()},
            "cofinite_from": self.cofinite_from,
            "density_estimate": fmt_q(self.density_estimate),
            "tail_uncertain": self.tail_uncertain,
            "verdicts": dict(self.verdicts),
        }


def classify(s: TimeSet, thresholds: Thresholds = Thresholds()) -> ClassificationReport:
    bound, longest, cofinite_from = gap_metrics(s)
    tail_uncertain = bound is None or tail_gap(s) > bound
    windows = range(1, min(thresholds.ts_window_max, s.horizon) + 1)
    ts_bounds: dict[int, Optional[int]] = {}
    ts_ok = thresholds.ts_window_max <= s.horizon
    for k in windows:
        derived = s.shifted_window(k)
        b = _bound(derived.sorted())
        ts_bounds[k] = b
        if b is None or tail_gap(derived) > b:
            ts_ok = False
    _, density = upper_density_profile(s)

    cofinite = cofinite_from is not None and (
        s.horizon - cofinite_from + 1 >= thresholds.ts_window_max
    )
    verdicts = {
        "nonempty": bool(s.members),
        "cofinite": cofinite,
        "thickly_syndetic": ts_ok,
        "syndetic": bound is not None and not tail_uncertain,
        "thick": longest >= thresholds.thick_run_min,
        "positive_density": density >= thresholds.density_min,
    }
    if verdicts["cofinite"] and not verdicts["thickly_syndetic"]:
        raise ImplicationViolation(f"cofinite but not thickly syndetic: {run_length_encode(s)}")
    if verdicts["thickly_syndetic"] and not verdicts["syndetic"]:
        raise ImplicationViolation(f"thickly syndetic but not syndetic: {run_length_encode(s)}")
    return ClassificationReport(
        horizon=s.horizon,
        syndetic_bound=bound,
        longest_run=longest,
        thickly_syndetic_bounds=ts_bounds,
        cofinite_from=cofinite_from,
        density_estimate=density,
        tail_uncertain=tail_uncertain,
        thresholds=thresholds,
        verdicts=verdicts,
    )
