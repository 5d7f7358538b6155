"""Exact analysis of periodic piecewise-linear interval schedules and their hyperspaces."""

from .analysis import (
    HittingQuery,
    SensitivityQuery,
    hitting_timeset,
    hyperspace_sensitivity_timeset,
    multi_sensitivity_timeset,
    product_sensitivity_timeset,
    sensitivity_timeset,
    vietoris_hitting_timeset,
)
from .fixtures import FIXTURES, get_fixture
from .hyperspace import (
    FiniteSubset,
    HyperNeighborhood,
    VietorisBox,
    hausdorff_distance,
    induced_image,
)
from .pl_dynamics import IntervalUnion, MapSchedule, PLMap, ProductSystem
from .rational import DenominatorOverflow, as_q, fmt_q
from .shadowing import HyperPseudoOrbit, PseudoOrbit, TracerSet, tracer_set
from .timeset import TimeSet, classify

__version__ = "0.1.0"

__all__ = [
    "HittingQuery",
    "SensitivityQuery",
    "hitting_timeset",
    "hyperspace_sensitivity_timeset",
    "multi_sensitivity_timeset",
    "product_sensitivity_timeset",
    "sensitivity_timeset",
    "vietoris_hitting_timeset",
    "FIXTURES",
    "get_fixture",
    "FiniteSubset",
    "HyperNeighborhood",
    "VietorisBox",
    "hausdorff_distance",
    "induced_image",
    "IntervalUnion",
    "MapSchedule",
    "PLMap",
    "ProductSystem",
    "DenominatorOverflow",
    "as_q",
    "fmt_q",
    "HyperPseudoOrbit",
    "PseudoOrbit",
    "TracerSet",
    "tracer_set",
    "TimeSet",
    "classify",
    "__version__",
]
