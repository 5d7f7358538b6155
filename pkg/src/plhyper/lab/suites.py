"""Seeded evidence suites for the sensitivity, transitivity and shadowing results.

Each suite checks finite-horizon containments and constructions on random
instances and returns a :class:`TheoremCheckResult`. A result is evidence
at the tested horizon, never a proof. Every violation carries the seed
and the instance so it can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

import numpy as np

from ..analysis import (
    HittingQuery,
    SensitivityQuery,
    hitting_timeset,
    hyperspace_sensitivity_timeset,
    multi_sensitivity_timeset,
    point_separation_timeset,
    product_sensitivity_timeset,
    sensitivity_timeset,
    vietoris_brute_force,
    vietoris_hitting_timeset,
)
from ..fixtures import schedule as fixture_schedule
from ..hyperspace import (
    FiniteSubset,
    HyperNeighborhood,
    VietorisBox,
    hausdorff_distance,
    induced_image,
)
from ..rational import fmt_q
from ..shadowing import (
    HyperPseudoOrbit,
    PseudoOrbit,
    estimate_modulus,
    hyper_trace_assemble,
    is_traced,
    lift_hyper_pseudo_orbit,
    nested_tracer_limit,
    perturbed_orbit,
    random_hyper_pseudo_orbit,
    tracer_carrier,
    trial_orbits,
    validate_pseudo_orbit,
)
from ..timeset import (
    ClassificationReport,
    ImplicationViolation,
    Thresholds,
    TimeSet,
    classify,
    gap_metrics,
)

__all__ = ["TheoremCheckResult", "SuiteContext", "SUITES", "run_suites", "lemma21_holds"]

FIXTURE_PAIR = ("example31", "example32")


@dataclass
class TheoremCheckResult:
    theorem: str
    instances: int
    violations: list[dict] = field(default_factory=list)
    evidence: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self) -> dict:
        return {
            "theorem": self.theorem,
            "status": "evidence" if self.ok else "violated",
            "seed": self.seed,
            "instances": self.instances,
            "violation_count": len(self.violations),
            "evidence": self.evidence,
            "violation_details": self.violations[:10],
        }


@dataclass
class SuiteContext:
    """Shared state for one run: the seed, a scale factor and the classifier audit."""

    seed: int
    scale: int = 1
    thresholds: Thresholds = field(default_factory=Thresholds)
    classifications: int = 0
    chain_violations: list[str] = field(default_factory=list)

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])

    def classify(self, s: TimeSet) -> Optional[ClassificationReport]:
        self.classifications += 1
        try:
            return classify(s, self.thresholds)
        except ImplicationViolation as exc:
            self.chain_violations.append(str(exc))
            return None


def _q(rng, denom: int, lo: int = 0, hi: Optional[int] = None) -> Fraction:
    hi = denom if hi is None else hi
    return Fraction(int(rng.integers(lo, hi + 1)), denom)


def _open(rng, denom: int = 40, min_cells: int = 1) -> tuple[Fraction, Fraction]:
    a = int(rng.integers(0, denom - min_cells + 1))
    b = int(rng.integers(a + min_cells, denom + 1))
    return Fraction(a, denom), Fraction(b, denom)


def _ball(x: Fraction, eps: Fraction) -> tuple[Fraction, Fraction]:
    return max(Fraction(0), x - eps), min(Fraction(1), x + eps)


def _bound(s: TimeSet) -> Optional[int]:
    return gap_metrics(s)[0]


def _longest(s: TimeSet) -> int:
    return gap_metrics(s)[1]


def _iv(pair) -> list[str]:
    return [fmt_q(pair[0]), fmt_q(pair[1])]


# -- interval minima ------------------------------------------------------------


def lemma21_holds(a, b, c, d, bound) -> bool:
    return min(b, d) - min(a, c) <= bound


def suite_lemma21(ctx: SuiteContext) -> TheoremCheckResult:
    rng = ctx.rng(21)
    n = 10_000 * ctx.scale
    res = TheoremCheckResult("lemma21", n, seed=ctx.seed)
    for _ in range(n):
        a, c = _q(rng, 1000, -5000, 5000), _q(rng, 1000, -5000, 5000)
        bound = _q(rng, 1000, 1, 5000)
        top = bound.numerator * (1000 // bound.denominator)
        b, d = a + _q(rng, 1000, 1, top), c + _q(rng, 1000, 1, top)
        if not lemma21_holds(a, b, c, d, bound):
            res.violations.append({"a": a, "b": b, "c": c, "d": d, "L": bound})
    return res


# -- hyperspace sensitivity -----------------------------------------------------


def _hyper(schedule, a: FiniteSubset, eps, delta, horizon, seed):
    return hyperspace_sensitivity_timeset(schedule, HyperNeighborhood(a, eps), delta, horizon, seed=seed)


def _witnesses_valid(schedule, a, eps, delta, result) -> bool:
    fa = {}
    for n, w in result.witnesses.items():
        fa[n] = induced_image(schedule, a, n)
        if not hausdorff_distance(a, w.subset) < eps:
            return False
        if not hausdorff_distance(fa[n], induced_image(schedule, w.subset, n)) > delta:
            return False
    return True


_EPS = (Fraction(1, 10), Fraction(1, 20), Fraction(1, 40))
_DELTA = (Fraction(1, 8), Fraction(1, 5), Fraction(1, 4))


def _hyper_instance(rng, max_points: int):
    name = FIXTURE_PAIR[int(rng.integers(0, 2))]
    size = int(rng.integers(1, max_points + 1))
    a = FiniteSubset(tuple(_q(rng, 40) for _ in range(size)))
    eps = _EPS[int(rng.integers(0, len(_EPS)))]
    delta = _DELTA[int(rng.integers(0, len(_DELTA)))]
    return name, a, eps, delta


def suite_thm31(ctx: SuiteContext, horizon: int = 32) -> TheoremCheckResult:
    """Base point sets at ``2 delta`` sit inside the certified hyperspace set at ``delta``,
    so its syndetic bound can only shrink; singletons also sit below the base set."""
    rng = ctx.rng(31)
    count = 6 * ctx.scale
    res = TheoremCheckResult("thm31", count, seed=ctx.seed)
    bounds = []
    for i in range(count):
        name, a, eps, delta = _hyper_instance(rng, 3)
        sch = fixture_schedule(name)
        result = _hyper(sch, a, eps, delta, horizon, ctx.seed + i)
        hyper = result.timeset
        base = None
        for x in a:
            s = point_separation_timeset(sch, x, eps, 2 * delta, horizon)
            base = s if base is None else base & s
        inst = {"fixture": name, "A": [fmt_q(x) for x in a], "eps": eps, "delta": delta, "H": horizon}
        problems = []
        if not base.issubset(hyper):
            problems.append("base intersection not contained in hyperspace set")
        hb, bb = _bound(hyper), _bound(base)
        if bb is not None and (hb is None or hb > bb):
            problems.append(f"hyperspace bound {hb} exceeds base bound {bb}")
        if not _witnesses_valid(sch, a, eps, delta, result):
            problems.append("a witness failed re-verification")
        if len(a) == 1:
            x = a.points[0]
            upper = sensitivity_timeset(SensitivityQuery(sch, _ball(x, eps), delta, horizon))
            lower = sensitivity_timeset(SensitivityQuery(sch, _ball(x, eps), 2 * delta, horizon))
            if not hyper.issubset(upper):
                problems.append("singleton hyperspace set exceeds base set at delta")
            if not lower.issubset(hyper):
                problems.append("base set at 2 delta not contained in singleton hyperspace set")
        ctx.classify(hyper)
        bounds.append([hb, bb])
        if problems:
            res.violations.append({**inst, "problems": problems, "hyper": hyper, "base": base})
    res.evidence = {"bounds_hyper_vs_base": bounds, "constant_note": "base separation 2*delta, hyperspace delta"}
    return res


def suite_thm33(ctx: SuiteContext, horizon: int = 24) -> TheoremCheckResult:
    """Nonempty intersections of base point sets transfer to the hyperspace family."""
    rng = ctx.rng(33)
    count = 3 * ctx.scale
    res = TheoremCheckResult("thm33", count, seed=ctx.seed)
    sizes = []
    for i in range(count):
        name = FIXTURE_PAIR[i % 2]
        sch = fixture_schedule(name)
        eps, delta = Fraction(1, 20), Fraction(1, 8)
        sets = [FiniteSubset(tuple(_q(rng, 40) for _ in range(int(rng.integers(1, 3))))) for _ in range(2)]
        base = None
        hyper = None
        for a in sets:
            for x in a:
                s = point_separation_timeset(sch, x, eps, 2 * delta, horizon)
                base = s if base is None else base & s
            h = _hyper(sch, a, eps, delta, horizon, ctx.seed + i).timeset
            hyper = h if hyper is None else hyper & h
        singles = sorted({x for a in sets for x in a})
        hyper_singles = None
        for x in singles:
            h = _hyper(sch, FiniteSubset.of(x), eps, delta, horizon, ctx.seed + i).timeset
            hyper_singles = h if hyper_singles is None else hyper_singles & h
        multi = multi_sensitivity_timeset(sch, [_ball(x, eps) for x in singles], delta, horizon)
        problems = []
        if not base.issubset(hyper):
            problems.append("base intersection not contained in hyperspace intersection")
        if not hyper_singles.issubset(multi):
            problems.append("singleton hyperspace intersection exceeds base multi-sensitivity set")
        sizes.append([len(base), len(hyper)])
        if problems:
            res.violations.append({"fixture": name, "sets": [[fmt_q(x) for x in a] for a in sets], "problems": problems})
    res.evidence = {"sizes_base_vs_hyper": sizes}
    return res


def _singleton_pairs(ctx: SuiteContext, salt: int, horizon: int, count: int):
    rng = ctx.rng(salt)
    for i in range(count):
        name, a, eps, delta = _hyper_instance(rng, 1)
        sch = fixture_schedule(name)
        x = a.points[0]
        hyper = _hyper(sch, a, eps, delta, horizon, ctx.seed + i).timeset
        base = sensitivity_timeset(SensitivityQuery(sch, _ball(x, eps), delta, horizon))
        yield {"fixture": name, "x": x, "eps": eps, "delta": delta}, hyper, base


def suite_thm35(ctx: SuiteContext, horizon: int = 32) -> TheoremCheckResult:
    count = 4 * ctx.scale
    res = TheoremCheckResult("thm35", count, seed=ctx.seed)
    dens = []
    for inst, hyper, base in _singleton_pairs(ctx, 35, horizon, count):
        rh, rb = ctx.classify(hyper), ctx.classify(base)
        if rh is None or rb is None:
            continue
        dens.append([rh.density_estimate, rb.density_estimate])
        if not hyper.issubset(base) or rh.density_estimate > rb.density_estimate:
            res.violations.append({**inst, "hyper": hyper, "base": base})
    res.evidence = {"density_hyper_vs_base": dens}
    return res


def suite_thm37(ctx: SuiteContext, horizon: int = 32) -> TheoremCheckResult:
    count = 4 * ctx.scale
    res = TheoremCheckResult("thm37", count, seed=ctx.seed)
    runs = []
    for inst, hyper, base in _singleton_pairs(ctx, 37, horizon, count):
        problems = []
        if _longest(hyper) > _longest(base):
            problems.append("hyperspace run longer than base run")
        rh, rb = ctx.classify(hyper), ctx.classify(base)
        if rh is not None and rb is not None:
            for k, hb in rh.thickly_syndetic_bounds.items():
                bb = rb.thickly_syndetic_bounds[k]
                if hb is not None and (bb is None or bb > hb):
                    problems.append(f"window {k}: base bound {bb} worse than hyperspace {hb}")
        runs.append([_longest(hyper), _longest(base)])
        if problems:
            res.violations.append({**inst, "problems": problems})
    res.evidence = {"longest_run_hyper_vs_base": runs}
    return res


# -- products --------------------------------------------------------------------


def _product_instances(ctx: SuiteContext, salt: int, count: int, horizon: int):
    rng = ctx.rng(salt)
    f, g = fixture_schedule("example31"), fixture_schedule("example32")
    for _ in range(count):
        u, v = _open(rng), _open(rng)
        delta = _q(rng, 20, 1, 20)
        nf = sensitivity_timeset(SensitivityQuery(f, u, delta, horizon))
        ng = sensitivity_timeset(SensitivityQuery(g, v, delta, horizon))
        nfg = product_sensitivity_timeset(f, g, u, v, delta, horizon)
        nf3 = sensitivity_timeset(SensitivityQuery(f, u, delta / 3, horizon))
        ng3 = sensitivity_timeset(SensitivityQuery(g, v, delta / 3, horizon))
        inst = {"U": _iv(u), "V": _iv(v), "delta": delta, "H": horizon}
        yield inst, nf, ng, nfg, nf3, ng3


def product_containment_violations(nf, ng, nfg, nf3, ng3) -> list[str]:
    out = []
    if not (nf | ng).issubset(nfg):
        out.append("factor union not contained in product set")
    if not nfg.issubset(nf3 | ng3):
        out.append("product set exceeds factor union at delta/3")
    return out


def suite_thm32(ctx: SuiteContext, horizon: int = 32) -> TheoremCheckResult:
    count = 40 * ctx.scale
    res = TheoremCheckResult("thm32", count, seed=ctx.seed)
    for inst, nf, ng, nfg, nf3, ng3 in _product_instances(ctx, 32, count, horizon):
        problems = product_containment_violations(nf, ng, nfg, nf3, ng3)[:1]
        bp = _bound(nfg)
        for b in (_bound(nf), _bound(ng)):
            if b is not None and (bp is None or bp > b):
                problems.append(f"product bound {bp} exceeds factor bound {b}")
        if problems:
            res.violations.append({**inst, "problems": problems})
    return res


def suite_cor31(ctx: SuiteContext, horizon: int = 32) -> TheoremCheckResult:
    """Union containment on balls around points, with the syndetic verdict carried over."""
    rng = ctx.rng(131)
    f, g = fixture_schedule("example31"), fixture_schedule("example32")
    count = 20 * ctx.scale
    res = TheoremCheckResult("cor31", count, seed=ctx.seed)
    carried = 0
    for _ in range(count):
        eps = _EPS[int(rng.integers(0, len(_EPS)))]
        u, v = _ball(_q(rng, 40), eps), _ball(_q(rng, 40), eps)
        delta = _DELTA[int(rng.integers(0, len(_DELTA)))]
        nf = sensitivity_timeset(SensitivityQuery(f, u, delta, horizon))
        ng = sensitivity_timeset(SensitivityQuery(g, v, delta, horizon))
        nfg = product_sensitivity_timeset(f, g, u, v, delta, horizon)
        rf, rg, rp = ctx.classify(nf), ctx.classify(ng), ctx.classify(nfg)
        problems = []
        if not (nf | ng).issubset(nfg):
            problems.append("factor union not contained in product set")
        if rf and rg and rp and (rf.verdicts["syndetic"] or rg.verdicts["syndetic"]):
            carried += 1
            if not rp.verdicts["syndetic"]:
                problems.append("syndetic factor but product not syndetic")
        if problems:
            res.violations.append({"U": _iv(u), "V": _iv(v), "delta": delta, "problems": problems})
    res.evidence = {"syndetic_factor_cases": carried}
    return res


def suite_thm36(ctx: SuiteContext, horizon: int = 32) -> TheoremCheckResult:
    count = 40 * ctx.scale
    res = TheoremCheckResult("thm36", count, seed=ctx.seed)
    for inst, nf, ng, nfg, nf3, ng3 in _product_instances(ctx, 36, count, horizon):
        problems = product_containment_violations(nf, ng, nfg, nf3, ng3)
        reps = [ctx.classify(s) for s in (nf, ng, nfg, nf3, ng3)]
        if all(reps):
            df, dg, dp, df3, dg3 = (r.density_estimate for r in reps)
            if dp < max(df, dg):
                problems.append("product density below a factor density")
            if dp > df3 + dg3:
                problems.append("product density above the delta/3 sum")
        if problems:
            res.violations.append({**inst, "problems": problems})
    return res


def suite_thm38(ctx: SuiteContext, horizon: int = 32) -> TheoremCheckResult:
    count = 40 * ctx.scale
    res = TheoremCheckResult("thm38", count, seed=ctx.seed)
    for inst, nf, ng, nfg, _, _ in _product_instances(ctx, 38, count, horizon):
        problems = []
        if _longest(nfg) < max(_longest(nf), _longest(ng)):
            problems.append("product run shorter than a factor run")
        rf, rg, rp = ctx.classify(nf), ctx.classify(ng), ctx.classify(nfg)
        if rf and rg and rp:
            for k, pb in rp.thickly_syndetic_bounds.items():
                for b in (rf.thickly_syndetic_bounds[k], rg.thickly_syndetic_bounds[k]):
                    if b is not None and (pb is None or pb > b):
                        problems.append(f"window {k}: product bound {pb} exceeds factor bound {b}")
        if problems:
            res.violations.append({**inst, "problems": problems})
    return res


# -- transitivity -------------------------------------------------------------


def random_box(rng, boxes: int, denom: int = 20, min_cells: int = 3) -> VietorisBox:
    return VietorisBox(tuple(_open(rng, denom, min_cells) for _ in range(boxes)))


def _transitivity(ctx: SuiteContext, theorem: str, salt: int, metric: Callable, horizon: int = 24):
    rng = ctx.rng(salt)
    count = 12 * ctx.scale
    res = TheoremCheckResult(theorem, count, seed=ctx.seed)
    equal = 0
    for i in range(count):
        name = FIXTURE_PAIR[i % 2]
        sch = fixture_schedule(name)
        u, v = _open(rng), _open(rng)
        hyper = vietoris_hitting_timeset(sch, VietorisBox.of(u), VietorisBox.of(v), horizon)
        base = hitting_timeset(HittingQuery(sch, u, v, horizon))
        problems = []
        if not hyper.issubset(base):
            problems.append("single-box hyperspace set exceeds base hitting set")
        equal += hyper == base
        rh, rb = ctx.classify(hyper), ctx.classify(base)
        if rh and rb:
            problems.extend(metric(rh, rb))
        if problems:
            res.violations.append({"fixture": name, "U": _iv(u), "V": _iv(v), "problems": problems})
    # independent grid oracle on multi-box instances
    brute_checked = 0
    for i in range(2 * ctx.scale):
        sch = fixture_schedule(FIXTURE_PAIR[i % 2])
        bu, bv = random_box(rng, int(rng.integers(1, 3))), random_box(rng, int(rng.integers(1, 3)), min_cells=4)
        exact = vietoris_hitting_timeset(sch, bu, bv, 8)
        brute = vietoris_brute_force(sch, bu, bv, 8)
        brute_checked += 1
        if exact != brute:
            res.violations.append(
                {"U": [_iv(o) for o in bu.opens], "V": [_iv(o) for o in bv.opens], "exact": exact, "grid": brute}
            )
    res.evidence = {"single_box_equal_to_base": equal, "grid_checked_multi_box": brute_checked}
    return res


def suite_thm39(ctx: SuiteContext) -> TheoremCheckResult:
    def metric(rh, rb):
        if rh.syndetic_bound is not None and (rb.syndetic_bound is None or rb.syndetic_bound > rh.syndetic_bound):
            return ["base syndetic bound worse than hyperspace bound"]
        return []

    return _transitivity(ctx, "thm39", 39, metric)


def suite_thm310(ctx: SuiteContext) -> TheoremCheckResult:
    def metric(rh, rb):
        return ["base density below hyperspace density"] if rb.density_estimate < rh.density_estimate else []

    return _transitivity(ctx, "thm310", 310, metric)


# -- shadowing ----------------------------------------------------------------------


def _random_orbit(rng, sch, delta, m) -> PseudoOrbit:
    return perturbed_orbit(sch, _q(rng, 1 << 10), delta, m, int(rng.integers(0, 2**31)))


def singleton_embedding_problems(sch, po: PseudoOrbit, eps) -> list[str]:
    hpo = HyperPseudoOrbit.singletons(po)
    lifted = lift_hyper_pseudo_orbit(sch, hpo)
    problems = []
    if [p.points for p in lifted] != [po.points]:
        return ["singleton lift is not the point pseudo-orbit"]
    base = tracer_carrier(sch, po.points, eps)
    lifted_carrier = tracer_carrier(sch, lifted[0].points, eps)
    if base != lifted_carrier:
        problems.append("lifted tracer differs from base tracer")
    asm = hyper_trace_assemble(sch, hpo, lifted, eps)
    if (asm.subset is None) != base.is_empty():
        problems.append("assembly disagrees with base tracer emptiness")
    elif asm.subset is not None and not base.contains(asm.subset.points[0]):
        problems.append("assembled point outside base tracer")
    return problems


def suite_thm41(ctx: SuiteContext) -> TheoremCheckResult:
    rng = ctx.rng(41)
    count = 20 * ctx.scale
    res = TheoremCheckResult("thm41", count, seed=ctx.seed)
    nonempty = 0
    for i in range(count):
        sch = fixture_schedule(FIXTURE_PAIR[i % 2])
        delta, eps = Fraction(1, 64), Fraction(1, 10)
        po = _random_orbit(rng, sch, delta, int(rng.integers(1, 11)))
        problems = singleton_embedding_problems(sch, po, eps)
        nonempty += not tracer_carrier(sch, po.points, eps).is_empty()
        if problems:
            res.violations.append({"orbit": po.record(), "eps": eps, "problems": problems})
    res.evidence = {"nonempty_tracers": nonempty}
    return res


def lifting_problems(sch, hpo: HyperPseudoOrbit, eps) -> tuple[list[str], bool]:
    """Postcondition failures of lifting and assembly, plus whether all lifts were traced."""
    lifted = lift_hyper_pseudo_orbit(sch, hpo)
    problems = []
    for p in lifted:
        if not validate_pseudo_orbit(sch, p.points, hpo.delta)[0]:
            problems.append("lifted orbit is not a delta-pseudo-orbit")
        if len(p.points) != len(hpo.sets) or any(x not in a.points for x, a in zip(p.points, hpo.sets)):
            problems.append("lifted orbit leaves the hyper pseudo-orbit")
    for i, a in enumerate(hpo.sets):
        if {p.points[i] for p in lifted} != set(a.points):
            problems.append(f"lifted points do not cover set {i}")
    all_traced = all(is_traced(sch, p, eps) for p in lifted)
    if all_traced:
        asm = hyper_trace_assemble(sch, hpo, lifted, eps)
        if asm.subset is None:
            problems.append("assembly failed although every lift is traced")
        else:
            for i, a in enumerate(hpo.sets):
                if hausdorff_distance(induced_image(sch, asm.subset, i), a) > eps:
                    problems.append(f"assembled set misses set {i} by more than eps")
    return problems, all_traced


def suite_thm42(ctx: SuiteContext) -> TheoremCheckResult:
    rng = ctx.rng(42)
    sch = fixture_schedule("example31")
    count = 30 * ctx.scale
    res = TheoremCheckResult("thm42", count, seed=ctx.seed)
    traced = 0
    for _ in range(count):
        hpo = random_hyper_pseudo_orbit(sch, int(rng.integers(1, 11)), 5, Fraction(1, 256), int(rng.integers(0, 2**31)))
        problems, ok = lifting_problems(sch, hpo, Fraction(1, 10))
        traced += ok
        if problems:
            res.violations.append({"hpo": hpo.record(), "problems": problems})
    res.evidence = {"fully_traced_instances": traced}
    return res


def suite_lemma42(ctx: SuiteContext) -> TheoremCheckResult:
    rng = ctx.rng(142)
    count = 10 * ctx.scale
    res = TheoremCheckResult("lemma42", count, seed=ctx.seed)
    first_empty = []
    for i in range(count):
        sch = fixture_schedule(FIXTURE_PAIR[i % 2])
        po = _random_orbit(rng, sch, Fraction(1, 32), 16)
        rep = nested_tracer_limit(sch, po, (2, 4, 8, 16), Fraction(1, 10))
        first_empty.append(rep.first_empty)
        if not rep.nested:
            res.violations.append({"orbit": po.record(), "problem": "carriers not nested"})
    res.evidence = {"first_empty_length": first_empty}
    return res


def hyper_orbits_from(orbits: list[PseudoOrbit], group: int = 3) -> list[HyperPseudoOrbit]:
    """Stack consecutive groups of equal-length pseudo-orbits into hyper pseudo-orbits."""
    out = []
    for k in range(0, len(orbits) - group + 1, group):
        chunk = orbits[k : k + group]
        sets = tuple(FiniteSubset(tuple(p.points[i] for p in chunk)) for i in range(len(chunk[0].points)))
        out.append(HyperPseudoOrbit(sets, chunk[0].delta))
    return out


def suite_cor41(ctx: SuiteContext, trials: int = 40, m: int = 12) -> TheoremCheckResult:
    sch = fixture_schedule("example32")
    eps = Fraction(1, 20)
    trials *= ctx.scale
    res = TheoremCheckResult("cor41", trials, seed=ctx.seed)
    delta = estimate_modulus(sch, eps, m, trials, ctx.seed)
    orbits = list(trial_orbits(sch, delta, m, trials, ctx.seed))
    base_traced = sum(is_traced(sch, p, eps) for p in orbits)
    if base_traced != trials:
        res.violations.append({"problem": "base orbit untraced at the modulus", "delta": delta})
    hyper_ok = 0
    hpos = hyper_orbits_from(orbits)
    for hpo in hpos:
        problems, ok = lifting_problems(sch, hpo, eps)
        hyper_ok += ok
        if problems or not ok:
            res.violations.append({"hpo": hpo.record(), "problems": problems or ["lifted orbit untraced"]})
    for po in orbits[:10]:
        problems = singleton_embedding_problems(sch, po, eps)
        if problems:
            res.violations.append({"orbit": po.record(), "problems": problems})
    res.evidence = {
        "epsilon": eps,
        "modulus": delta,
        "length": m,
        "base_traced": base_traced,
        "hyper_traced": hyper_ok,
        "hyper_instances": len(hpos),
        "statement": f"all tested delta-pseudo-orbits of length <= {m} traced at eps",
    }
    return res


SUITES: dict[str, Callable[[SuiteContext], TheoremCheckResult]] = {
    "lemma21": suite_lemma21,
    "thm31": suite_thm31,
    "thm32": suite_thm32,
    "cor31": suite_cor31,
    "thm33": suite_thm33,
    "thm35": suite_thm35,
    "thm36": suite_thm36,
    "thm37": suite_thm37,
    "thm38": suite_thm38,
    "thm39": suite_thm39,
    "thm310": suite_thm310,
    "thm41": suite_thm41,
    "thm42": suite_thm42,
    "lemma42": suite_lemma42,
    "cor41": suite_cor41,
}


def run_suites(names, seed: int, scale: int = 1) -> tuple[list[TheoremCheckResult], SuiteContext]:
    """Run suites in the fixed registry order, whatever order ``names`` has."""
    wanted = set(names)
    unknown = wanted - set(SUITES)
    if unknown:
        raise KeyError(f"unknown theorem ids: {', '.join(sorted(unknown))}")
    ctx = SuiteContext(seed, scale)
    results = [fn(ctx) for name, fn in SUITES.items() if name in wanted]
    return results, ctx
