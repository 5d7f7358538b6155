"""Run configuration files (TOML) with exact rational fields.

Rationals are written as strings, ``"2/5"`` or ``"0.4"``; bare TOML floats
are refused because they are already rounded by the time we see them.

Example::

    fixture = "example31"
    analysis = "sensitivity"
    v = [["2/5", "1/2"]]
    delta = "1/2"
    horizon = 64
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .. import _toml
from ..fixtures import get_fixture
from ..pl_dynamics import MapSchedule, PLMap
from ..rational import as_q
from ..timeset import Thresholds

__all__ = ["ConfigError", "RunConfig", "ANALYSES", "load_config", "config_from_text"]

ANALYSES = (
    "sensitivity",
    "transitivity",
    "product",
    "hyperspace",
    "shadowing",
    "lift",
    "verify",
)
RANDOMIZED = {"hyperspace", "shadowing", "verify"}

Interval = tuple[Fraction, Fraction]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    analysis: str
    fixture: Optional[str] = None
    maps: tuple[PLMap, ...] = ()
    second_fixture: Optional[str] = None
    v: tuple[Interval, ...] = ()
    u: tuple[Interval, ...] = ()
    points: tuple[Fraction, ...] = ()
    sets: tuple[tuple[Fraction, ...], ...] = ()
    delta: Optional[Fraction] = None
    epsilon: Optional[Fraction] = None
    horizon: int = 64
    length: int = 12
    k: tuple[int, ...] = ()
    thresholds: Thresholds = field(default_factory=Thresholds)
    trials: int = 200
    seed: Optional[int] = None
    theorems: tuple[str, ...] = ()
    out: Optional[str] = None

    def __post_init__(self) -> None:
        if self.analysis not in ANALYSES:
            raise ConfigError(f"analysis: unknown kind {self.analysis!r}; expected one of {', '.join(ANALYSES)}")
        if self.fixture is not None and self.maps:
            raise ConfigError("fixture: give either a fixture name or inline maps, not both")
        if self.horizon < 1:
            raise ConfigError("horizon: must be >= 1")
        if self.length < 1:
            raise ConfigError("length: must be >= 1")
        if self.trials < 1:
            raise ConfigError("trials: must be >= 1")
        if self.delta is not None and self.delta <= 0:
            raise ConfigError("delta: must be > 0")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ConfigError("epsilon: must be > 0")
        if self.analysis in RANDOMIZED and self.seed is None:
            raise ConfigError(f"seed: required for randomized analysis {self.analysis!r}")

    def schedule(self) -> MapSchedule:
        if self.maps:
            return MapSchedule(self.maps)
        return get_fixture(self.fixture or "example31").schedule

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _rational(name: str, value: Any) -> Fraction:
    if isinstance(value, float):
        raise ConfigError(f"{name}: write rationals as strings (e.g. \"0.4\" or \"2/5\"), not TOML floats")
    try:
        return as_q(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}: {exc}") from None


def _interval(name: str, value: Any) -> Interval:
    if not isinstance(value, list) or len(value) != 2:
        raise ConfigError(f"{name}: expected a pair [lo, hi]")
    lo, hi = _rational(name, value[0]), _rational(name, value[1])
    if not (0 <= lo < hi <= 1):
        raise ConfigError(f"{name}: need 0 <= lo < hi <= 1")
    return lo, hi


def _intervals(name: str, value: Any) -> tuple[Interval, ...]:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{name}: expected a nonempty list of [lo, hi] pairs")
    if not isinstance(value[0], list):
        return (_interval(name, value),)
    return tuple(_interval(f"{name}[{i}]", p) for i, p in enumerate(value))


def _int(name: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name}: expected an integer")
    return value


def _map(name: str, value: Any) -> PLMap:
    if not isinstance(value, dict) or set(value) - {"breakpoints", "values"}:
        raise ConfigError(f"{name}: expected a table with breakpoints and values")
    try:
        return PLMap(
            tuple(_rational(f"{name}.breakpoints", b) for b in value.get("breakpoints", [])),
            tuple(_rational(f"{name}.values", b) for b in value.get("values", [])),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{name}: {exc}") from None


def _thresholds(value: Any) -> Thresholds:
    if not isinstance(value, dict):
        raise ConfigError("thresholds: expected a table")
    unknown = set(value) - {"density_min", "thick_run_min", "ts_window_max"}
    if unknown:
        raise ConfigError(f"thresholds: unknown keys {sorted(unknown)}")
    kw: dict[str, Any] = {}
    if "density_min" in value:
        kw["density_min"] = _rational("thresholds.density_min", value["density_min"])
    for key in ("thick_run_min", "ts_window_max"):
        if key in value:
            kw[key] = _int(f"thresholds.{key}", value[key])
    try:
        return Thresholds(**kw)
    except ValueError as exc:
        raise ConfigError(f"thresholds: {exc}") from None


_PARSERS = {
    "analysis": lambda v: v,
    "fixture": lambda v: v,
    "second_fixture": lambda v: v,
    "maps": lambda v: tuple(_map(f"maps[{i}]", m) for i, m in enumerate(v)),
    "v": lambda v: _intervals("v", v),
    "u": lambda v: _intervals("u", v),
    "points": lambda v: tuple(_rational("points", p) for p in v),
    "sets": lambda v: tuple(tuple(_rational(f"sets[{i}]", p) for p in s) for i, s in enumerate(v)),
    "delta": lambda v: _rational("delta", v),
    "epsilon": lambda v: _rational("epsilon", v),
    "horizon": lambda v: _int("horizon", v),
    "length": lambda v: _int("length", v),
    "k": lambda v: tuple(_int("k", x) for x in v),
    "thresholds": _thresholds,
    "trials": lambda v: _int("trials", v),
    "seed": lambda v: _int("seed", v),
    "theorems": lambda v: tuple(str(x) for x in v),
    "out": str,
}


def config_from_text(text: str, source: str = "<config>") -> RunConfig:
    try:
        raw = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        m = re.search(r"line (\d+), column (\d+)", str(exc))
        if m:
            where = f"{source}:{m.group(1)}:{m.group(2)}"
        else:
            # errors at end of input carry no position; point past the last character
            lines = text.split("\n")
            where = f"{source}:{len(lines)}:{len(lines[-1]) + 1}"
        raise ConfigError(f"{where}: parse error: {exc}") from None
    unknown = set(raw) - set(_PARSERS)
    if unknown:
        raise ConfigError(f"unknown keys: {', '.join(sorted(unknown))}")
    if "analysis" not in raw:
        raise ConfigError("analysis: missing")
    for name in ("fixture", "second_fixture"):
        if name in raw:
            try:
                get_fixture(raw[name])
            except KeyError as exc:
                raise ConfigError(f"{name}: {exc.args[0]}") from None
    return RunConfig(**{k: _PARSERS[k](v) for k, v in raw.items()})


def load_config(path) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{p}: cannot read config: {exc.strerror}") from None
    return config_from_text(text, str(p))
