"""Built-in schedules used by the CLI, the theorem suites and the tests."""

from __future__ import annotations

from dataclasses import dataclass

from .pl_dynamics import MapSchedule, PLMap

# 1/2 - 2x on [0, 1/4], 4x - 1 on [1/4, 1/2], 2 - 2x on [1/2, 1]
EXAMPLE31_MAP = PLMap(("0", "1/4", "1/2", "1"), ("1/2", "0", "1", "0"), name="example31")
# 2x + 1/2 on [0, 1/4], -2x + 3/2 on [1/4, 3/4], 2x - 3/2 on [3/4, 1]
EXAMPLE32_MAP = PLMap(("0", "1/4", "3/4", "1"), ("1/2", "1", "0", "1/2"), name="example32")
TENT_MAP = PLMap(("0", "1/2", "1"), ("0", "1", "0"), name="tent")
IDENTITY_MAP = PLMap.identity()


@dataclass(frozen=True)
class Fixture:
    name: str
    schedule: MapSchedule
    description: str


FIXTURES: dict[str, Fixture] = {
    f.name: f
    for f in (
        Fixture(
            "example31",
            MapSchedule((EXAMPLE31_MAP, IDENTITY_MAP)),
            "three-piece expanding map on odd steps, identity on even steps",
        ),
        Fixture(
            "example32",
            MapSchedule((EXAMPLE32_MAP, IDENTITY_MAP)),
            "slope +-2 map swapping [0,1/2] and [1/2,1] on odd steps, identity on even steps",
        ),
        Fixture("identity", MapSchedule((IDENTITY_MAP,)), "identity at every step"),
        Fixture("tent", MapSchedule((TENT_MAP,)), "classical full tent map, autonomous"),
    )
}


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


def schedule(name: str) -> MapSchedule:
    return get_fixture(name).schedule
