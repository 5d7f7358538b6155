import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile the numba kernels once so timed tests measure steady-state cost."""
    import numpy as np

    from plhyper import kernels
    from plhyper.fixtures import schedule

    s = schedule("example31")
    xs = np.linspace(0.0, 1.0, 17)
    kernels.orbit_table(s, xs, 4)
    kernels.sampled_diameters(s, xs, 4)
    kernels.sampled_hits(s, xs, 4, 0.0, 0.5)
    kernels.tracer_mask(s, xs, [0.5, 0.5], 0.1)
    kernels.hyper_brute(s, [0.4, 0.45, 0.5], [0.45], 0.05, 0.25, 4, 2)
    return kernels.BACKEND


_CRITERIA: list[str] = []


class _Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.detail = ""

    def __enter__(self):
        import time

        self._t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        import time

        elapsed = time.perf_counter() - self._t0
        slow = elapsed >= self.limit
        ok = exc_type is None and not slow
        why = "" if exc_type is None else f" [{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}]"
        line = (
            f"criterion {self.number:>2} {'PASS' if ok else 'FAIL'}  {self.title}"
            f"  ({elapsed:.2f}s, limit {self.limit:g}s){' ' + self.detail if self.detail else ''}{why}"
        )
        _CRITERIA.append(line)
        print(line)
        if exc_type is None and slow:
            raise AssertionError(f"criterion {self.number} took {elapsed:.2f}s, limit {self.limit:g}s")
        return False


@pytest.fixture
def criterion():
    """``with criterion(n, title, seconds) as c:`` times a block and logs one PASS/FAIL line."""
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
