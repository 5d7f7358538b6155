"""Report records and their two serializations.

``records`` is one JSON object per line with fields in insertion order and
rationals as ``"p/q"`` strings, so equal inputs give equal bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from ..rational import fmt_q
from ..timeset import TimeSet, run_length_encode

__all__ = ["Report", "emit_report", "to_plain"]


@dataclass
class Report:
    kind: str
    body: dict[str, Any] = field(default_factory=dict)
    violations: int = 0

    def record(self) -> dict[str, Any]:
        return {"kind": self.kind, **to_plain(self.body), "violations": self.violations}


def to_plain(value: Any) -> Any:
    """Convert a report value to JSON-ready data without losing exactness."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return fmt_q(value)
    if isinstance(value, float):
        raise TypeError("floats are not allowed in report records")
    if isinstance(value, TimeSet):
        return run_length_encode(value)
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if hasattr(value, "record"):
        return to_plain(value.record())
    return value


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    if value is None:
        return "-"
    return str(value)


def emit_report(reports: Sequence[Report], format: str = "records") -> bytes:
    if format == "records":
        lines = [json.dumps(r.record(), separators=(",", ":"), ensure_ascii=True) for r in reports]
        return ("\n".join(lines) + "\n").encode("ascii") if lines else b""
    if format == "table":
        out = []
        for r in reports:
            rec = r.record()
            out.append(f"== {rec.pop('kind')}")
            width = max((len(k) for k in rec), default=0)
            out.extend(f"  {k.ljust(width)}  {_cell(v)}" for k, v in rec.items())
        return ("\n".join(out) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r} (expected 'records' or 'table')")
