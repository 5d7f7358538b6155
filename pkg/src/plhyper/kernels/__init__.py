"""Float kernels for sampling fallbacks and grid brute-force oracles.

Two interchangeable backends exist: numba-compiled loops and pure numpy.
``PLHYPER_BACKEND=numpy`` (or ``numba``) selects one at import time; the
default is numba when it imports cleanly. The exact rational core never
goes through here.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _numpy as numpy_backend

try:
    from . import _numba as numba_backend
except ImportError:  # pragma: no cover - numba missing
    numba_backend = None

__all__ = [
    "BACKEND",
    "backend",
    "get_backend",
    "pack_schedule",
    "numpy_backend",
    "numba_backend",
]


def get_backend(name: str) -> ModuleType:
    if name == "numpy":
        return numpy_backend
    if name == "numba":
        if numba_backend is None:
            raise RuntimeError("numba backend requested but numba is not importable")
        return numba_backend
    raise ValueError(f"unknown kernel backend {name!r} (expected 'numba' or 'numpy')")


BACKEND = os.environ.get("PLHYPER_BACKEND", "numba" if numba_backend else "numpy").lower()
backend = get_backend(BACKEND)


def pack_schedule(schedule) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flatten a MapSchedule into ``(breakpoints, values, offsets)`` float arrays."""
    bps: list[float] = []
    vals: list[float] = []
    offsets = [0]
    for f in schedule.maps:
        bps.extend(float(b) for b in f.breakpoints)
        vals.extend(float(v) for v in f.values)
        offsets.append(len(bps))
    return (
        np.asarray(bps, dtype=np.float64),
        np.asarray(vals, dtype=np.float64),
        np.asarray(offsets, dtype=np.int64),
    )


def orbit_table(schedule, xs, n: int) -> np.ndarray:
    return backend.orbit_table(*pack_schedule(schedule), np.asarray(xs, dtype=np.float64), n)


def sampled_diameters(schedule, xs, horizon: int) -> np.ndarray:
    return backend.sampled_diameters(
        *pack_schedule(schedule), np.asarray(xs, dtype=np.float64), horizon
    )


def sampled_hits(schedule, xs, horizon: int, c: float, d: float) -> np.ndarray:
    return backend.sampled_hits(
        *pack_schedule(schedule), np.asarray(xs, dtype=np.float64), horizon, float(c), float(d)
    )


def tracer_mask(schedule, ys, pts, eps: float) -> np.ndarray:
    return backend.tracer_mask(
        *pack_schedule(schedule),
        np.asarray(ys, dtype=np.float64),
        np.asarray(pts, dtype=np.float64),
        float(eps),
    )


def hyper_brute(schedule, grid, a_pts, eps, delta, horizon, max_size, tol=1e-12) -> np.ndarray:
    return backend.hyper_brute(
        *pack_schedule(schedule),
        np.asarray(grid, dtype=np.float64),
        np.asarray(a_pts, dtype=np.float64),
        float(eps),
        float(delta),
        int(horizon),
        int(max_size),
        float(tol),
    )
