"""Dispatch a RunConfig to the analysis, shadowing or suite code and wrap the results."""

from __future__ import annotations

from fractions import Fraction

from ..analysis import (
    HittingQuery,
    SensitivityQuery,
    hitting_timeset,
    hyperspace_sensitivity_timeset,
    image_diameters,
    multi_sensitivity_timeset,
    product_sensitivity_timeset,
    sensitivity_timeset,
    transitivity_verdicts,
)
from ..fixtures import get_fixture
from ..hyperspace import FiniteSubset, HyperNeighborhood
from ..rational import fmt_q
from ..shadowing import (
    HyperPseudoOrbit,
    estimate_modulus,
    finite_shadowing_check,
    hyper_trace_assemble,
    lift_hyper_pseudo_orbit,
    tracer_set,
    validate_pseudo_orbit,
)
from ..timeset import classify
from .config import ConfigError, RunConfig
from .report import Report
from .suites import SUITES, run_suites

__all__ = ["run_suite", "DEFAULTS"]

F = Fraction

DEFAULTS: dict[str, dict] = {
    "sensitivity": {"fixture": "example31", "v": ((F(2, 5), F(1, 2)),), "delta": F(1, 2), "horizon": 64},
    "transitivity": {"fixture": "example31", "u": ((F(2, 5), F(1, 2)),), "v": ((F(0), F(1, 10)),), "horizon": 64},
    "product": {
        "fixture": "example31",
        "second_fixture": "example32",
        "u": ((F(2, 5), F(1, 2)),),
        "v": ((F(1, 10), F(1, 5)),),
        "delta": F(1, 2),
        "horizon": 32,
    },
    "hyperspace": {"fixture": "example31", "points": (F(9, 20),), "epsilon": F(1, 20), "delta": F(1, 4), "horizon": 64},
    "shadowing": {"fixture": "example32", "epsilon": F(1, 20), "length": 12, "trials": 200},
    "lift": {"fixture": "example31", "epsilon": F(1, 10)},
    "verify": {},
}


def _need(cfg: RunConfig, name: str):
    value = getattr(cfg, name)
    if value is None or value == ():
        raise ConfigError(f"{name}: required for analysis {cfg.analysis!r}")
    return value


def _name(cfg: RunConfig) -> str:
    return cfg.fixture or ("inline" if cfg.maps else "example31")


def _intervals(pairs) -> list[list[str]]:
    return [[fmt_q(lo), fmt_q(hi)] for lo, hi in pairs]


def _sensitivity(cfg: RunConfig) -> list[Report]:
    sch, v, delta = cfg.schedule(), _need(cfg, "v"), _need(cfg, "delta")
    if len(v) == 1:
        s = sensitivity_timeset(SensitivityQuery(sch, v, delta, cfg.horizon))
        diams = image_diameters(sch, v, cfg.horizon)
    else:
        s = multi_sensitivity_timeset(sch, v, delta, cfg.horizon)
        diams = None
    body = {
        "fixture": _name(cfg),
        "v": _intervals(v),
        "delta": delta,
        "horizon": cfg.horizon,
        "timeset": s,
        "classification": classify(s, cfg.thresholds),
    }
    if diams is not None:
        body["image_diameters"] = diams
    return [Report("sensitivity", body)]


def _transitivity(cfg: RunConfig) -> list[Report]:
    sch = cfg.schedule()
    u, v = _need(cfg, "u")[0], _need(cfg, "v")[0]
    s = hitting_timeset(HittingQuery(sch, u, v, cfg.horizon))
    body = {
        "fixture": _name(cfg),
        "u": _intervals([u]),
        "v": _intervals([v]),
        "horizon": cfg.horizon,
        "timeset": s,
        "verdicts": transitivity_verdicts(s, cfg.thresholds),
        "classification": classify(s, cfg.thresholds),
    }
    return [Report("transitivity", body)]


def _product(cfg: RunConfig) -> list[Report]:
    f, g = cfg.schedule(), get_fixture(cfg.second_fixture or "example32").schedule
    u, v, delta = _need(cfg, "u")[0], _need(cfg, "v")[0], _need(cfg, "delta")
    h = cfg.horizon
    nf = sensitivity_timeset(SensitivityQuery(f, u, delta, h))
    ng = sensitivity_timeset(SensitivityQuery(g, v, delta, h))
    nfg = product_sensitivity_timeset(f, g, u, v, delta, h)
    nf3 = sensitivity_timeset(SensitivityQuery(f, u, delta / 3, h))
    ng3 = sensitivity_timeset(SensitivityQuery(g, v, delta / 3, h))
    lower = (nf | ng).issubset(nfg)
    upper = nfg.issubset(nf3 | ng3)
    body = {
        "first": _name(cfg),
        "second": cfg.second_fixture or "example32",
        "u": _intervals([u]),
        "v": _intervals([v]),
        "delta": delta,
        "horizon": h,
        "first_timeset": nf,
        "second_timeset": ng,
        "product_timeset": nfg,
        "union_contained": lower,
        "within_third_delta_union": upper,
        "classification": classify(nfg, cfg.thresholds),
    }
    return [Report("product", body, violations=(not lower) + (not upper))]


def _hyperspace(cfg: RunConfig) -> list[Report]:
    sch = cfg.schedule()
    a = FiniteSubset(_need(cfg, "points"))
    eps, delta = _need(cfg, "epsilon"), _need(cfg, "delta")
    res = hyperspace_sensitivity_timeset(sch, HyperNeighborhood(a, eps), delta, cfg.horizon, seed=cfg.seed)
    body = {
        "fixture": _name(cfg),
        "center": [fmt_q(x) for x in a],
        "epsilon": eps,
        "sensitivity_constant": delta,
        "base_separation": res.base_delta,
        "horizon": cfg.horizon,
        "timeset": res.timeset,
        "classification": classify(res.timeset, cfg.thresholds),
        "witnesses": [res.witnesses[n] for n in sorted(res.witnesses)],
    }
    return [Report("hyperspace", body)]


def _shadowing(cfg: RunConfig) -> list[Report]:
    sch, eps = cfg.schedule(), _need(cfg, "epsilon")
    delta = cfg.delta
    if delta is None:
        delta = estimate_modulus(sch, eps, cfg.length, cfg.trials, cfg.seed)
    rep = finite_shadowing_check(sch, eps, delta, cfg.length, cfg.trials, cfg.seed)
    body = {
        "fixture": _name(cfg),
        **rep.record(),
        "statement": (
            f"{rep.traced} of {rep.trials} tested delta-pseudo-orbits of length {cfg.length} "
            f"traced at eps={fmt_q(eps)}"
        ),
    }
    return [Report("shadowing", body)]


def _lift(cfg: RunConfig) -> list[Report]:
    sch, eps = cfg.schedule(), _need(cfg, "epsilon")
    sets = _need(cfg, "sets")
    hpo = HyperPseudoOrbit.checked(sch, [FiniteSubset(s) for s in sets], _need(cfg, "delta"))
    lifted = lift_hyper_pseudo_orbit(sch, hpo)
    reports = []
    for j, po in enumerate(lifted):
        gaps = [abs(sch.map_at(i)(po.points[i - 1]) - po.points[i]) for i in range(1, len(po.points))]
        reports.append(
            Report(
                "lifted-orbit",
                {
                    "index": j,
                    "points": [fmt_q(x) for x in po.points],
                    "step_gaps": gaps,
                    "valid": validate_pseudo_orbit(sch, po.points, po.delta)[0],
                    "tracer": tracer_set(sch, po, eps),
                },
            )
        )
    asm = hyper_trace_assemble(sch, hpo, lifted, eps)
    reports.append(Report("assembly", {"epsilon": eps, "orbits": len(lifted), **asm.record()}))
    return reports


def _verify(cfg: RunConfig) -> list[Report]:
    names = cfg.theorems or tuple(SUITES)
    results, ctx = run_suites(names, cfg.seed)
    reports = [Report("theorem-check", r.record(), violations=len(r.violations)) for r in results]
    reports.append(
        Report(
            "implication-chain",
            {"classifications": ctx.classifications, "chain_failures": ctx.chain_violations},
            violations=len(ctx.chain_violations),
        )
    )
    return reports


_DISPATCH = {
    "sensitivity": _sensitivity,
    "transitivity": _transitivity,
    "product": _product,
    "hyperspace": _hyperspace,
    "shadowing": _shadowing,
    "lift": _lift,
    "verify": _verify,
}


def run_suite(cfg: RunConfig) -> list[Report]:
    return _DISPATCH[cfg.analysis](cfg)
