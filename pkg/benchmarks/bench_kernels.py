"""Time the numba and numpy kernel backends on the fixture schedules.

    python benchmarks/bench_kernels.py --repeat 5

Both backends are imported directly, so PLHYPER_BACKEND does not matter
here. Outputs are cross-checked before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from plhyper.fixtures import schedule
from plhyper.kernels import numba_backend, numpy_backend, pack_schedule


def _cases(name: str, size: int, horizon: int):
    packed = pack_schedule(schedule(name))
    xs = (np.arange(size) + 0.5) / size
    pts = np.full(13, 0.5)
    grid = (np.arange(24) + 0.5) / 24 * 0.1 + 0.4
    return {
        "orbit_table": (*packed, xs, horizon),
        "sampled_diameters": (*packed, xs, horizon),
        "sampled_hits": (*packed, xs, horizon, 0.0, 0.1),
        "tracer_mask": (*packed, xs, pts, 0.1),
        "hyper_brute": (*packed, grid, np.array([0.45]), 0.05, 0.25, 16, 3, 1e-12),
    }


def _time(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixture", default="example31")
    ap.add_argument("--size", type=int, default=100_000, help="sample points")
    ap.add_argument("--horizon", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if numba_backend is None:
        raise SystemExit("numba is not importable; nothing to compare")

    cases = _cases(args.fixture, args.size, args.horizon)
    print(f"{'kernel':<18} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, call_args in cases.items():
        ref = getattr(numpy_backend, name)(*call_args)
        fast_fn = getattr(numba_backend, name)
        got = fast_fn(*call_args)  # also triggers compilation
        if not np.allclose(ref, got, atol=1e-12):
            raise SystemExit(f"{name}: backends disagree")
        t_np = _time(getattr(numpy_backend, name), call_args, args.repeat)
        t_nb = _time(fast_fn, call_args, args.repeat)
        print(f"{name:<18} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
