from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from plhyper import kernels
from plhyper.fixtures import schedule
from plhyper.hyperspace import FiniteSubset, hausdorff_distance, induced_image
from plhyper.pl_dynamics import closed
from plhyper.shadowing import (
    HyperPseudoOrbit,
    PseudoOrbit,
    PseudoOrbitError,
    adversarial_orbit,
    finite_shadowing_check,
    hyper_trace_assemble,
    is_traced,
    lift_hyper_pseudo_orbit,
    nested_tracer_limit,
    perturbed_orbit,
    random_hyper_pseudo_orbit,
    tracer_carrier,
    tracer_set,
    validate_pseudo_orbit,
)

S31, S32, ID = schedule("example31"), schedule("example32"), schedule("identity")
fixture_schedules = st.sampled_from([S31, S32])
seeds = st.integers(0, 2**31)


def _half(x):
    return F(x, 1 << 12)


def test_validate_examples():
    assert validate_pseudo_orbit(S32, [F(1, 2)] * 6, F(1, 10**9)) == (True, [])
    orbit = S31.orbit(F(3, 7), 8)
    assert validate_pseudo_orbit(S31, orbit, F(1, 10**9))[0]
    ok, bad = validate_pseudo_orbit(S31, [0, 1], F(1, 10))
    assert not ok and bad == [(1, F(1, 2))]
    with pytest.raises(PseudoOrbitError):
        PseudoOrbit.checked(S31, [0, 1], F(1, 10))
    with pytest.raises(PseudoOrbitError):
        validate_pseudo_orbit(S31, [], F(1, 10))


def test_perturbed_orbit_determinism_and_validity():
    a = perturbed_orbit(S32, F(1, 3), F(1, 50), 12, seed=5)
    assert a == perturbed_orbit(S32, F(1, 3), F(1, 50), 12, seed=5)
    assert a != perturbed_orbit(S32, F(1, 3), F(1, 50), 12, seed=6)
    with pytest.raises(ValueError):
        perturbed_orbit(S32, 0, 0, 3, seed=1)


def test_perturbed_orbit_tiny_delta():
    delta = F(1, 10**6)
    po = perturbed_orbit(ID, F(1, 2), delta, 10, seed=2)
    assert all(abs(x - F(1, 2)) < delta * i for i, x in enumerate(po.points) if i)
    # under expansion the drift obeys e_i <= L_i e_{i-1} + delta, not m * delta
    po = perturbed_orbit(S32, F(1, 2), delta, 10, seed=2)
    true = S32.orbit(F(1, 2), 10)
    bound = F(0)
    for i in range(1, 11):
        bound = S32.map_at(i).slope_max * bound + delta
        assert abs(po.points[i] - true[i]) <= bound


def test_perturbed_orbits_always_validate():
    rng = np.random.default_rng(0)
    for k in range(10_000):
        s = (S31, S32)[k % 2]
        delta = F(int(rng.integers(1, 100)), 1000)
        po = perturbed_orbit(s, F(int(rng.integers(0, 1025)), 1024), delta, 4, int(rng.integers(0, 2**31)))
        assert validate_pseudo_orbit(s, po.points, delta)[0]


def test_adversarial_orbits_validate_and_hug_breakpoints():
    hits = 0
    for seed in range(40):
        po = adversarial_orbit(S32, F(1, 4), F(1, 20), 10, seed)
        assert validate_pseudo_orbit(S32, po.points, F(1, 20))[0]
        hits += sum(x in (F(1, 4), F(3, 4)) for x in po.points[1:])
    assert hits > 0


def test_tracer_examples():
    po = PseudoOrbit.checked(S32, [F(1, 2), F(1, 2)], F(1, 100))
    ts = tracer_set(S32, po, F(1, 10))
    assert ts.carrier == closed("9/20", "11/20")
    assert ts.traced and ts.status == "traced" and 0 < ts.margin <= F(1, 10)
    true = PseudoOrbit(tuple(S31.orbit(F(2, 7), 9)), F(1, 100))
    assert tracer_set(S31, true, F(1, 50)).carrier.contains(F(2, 7))
    far = PseudoOrbit((F(0), F(1), F(0), F(1)), F(2))
    assert tracer_set(S31, far, F(1, 1000)).carrier.is_empty()
    assert tracer_set(S31, far, F(1, 1000)).status == "untraced"
    ys = np.arange(2049) / 2048
    assert not kernels.tracer_mask(S31, ys, [0, 1, 0, 1], 1e-3).any()


def test_tracer_margin_on_lattice():
    # only y = 1/2 comes within 1/2 of both 0 and 1, and only non-strictly
    po = PseudoOrbit((F(0), F(1)), F(2))
    ts = tracer_set(ID, po, F(1, 2))
    assert ts.carrier == closed("1/2", "1/2")
    assert ts.margin == 0 and not ts.traced and ts.status == "boundary-indeterminate"
    assert is_traced(ID, po, F(1, 2)) is False


def test_finite_shadowing_examples():
    r = finite_shadowing_check(S31, F(1, 10), 0, 8, 20, seed=1)
    assert r.all_traced
    r = finite_shadowing_check(ID, F(1, 10), F(1, 100), 10, 200, seed=1)
    assert r.traced == 200
    rec = r.record()
    assert list(rec)[:3] == ["epsilon", "delta", "m"]


def test_finite_shadowing_modulus_on_example32():
    r = finite_shadowing_check(S32, F(1, 20), F(1, 100), 12, 60, seed=2)
    assert r.modulus is not None and r.modulus > 0
    again = finite_shadowing_check(S32, F(1, 20), r.modulus, 12, 60, seed=2)
    assert again.all_traced
    assert r.modulus_failures_at_double is not None and r.modulus_failures_at_double > 0


def test_nested_examples():
    po = PseudoOrbit.checked(S32, [F(1, 2)] * 17, F(1, 100))
    rep = nested_tracer_limit(S32, po, (2, 4, 8, 16), F(1, 10))
    # g doubles distances from 1/2, so each pair of steps halves the carrier
    assert rep.carriers == tuple(closed(F(1, 2) - F(1, 20) / 2**j, F(1, 2) + F(1, 20) / 2**j) for j in (0, 1, 3, 7))
    assert rep.nested and rep.final_nonempty and rep.first_empty is None
    bad = PseudoOrbit((F(1, 2), F(1), F(0), F(0), F(1), F(1)), F(2))
    rep = nested_tracer_limit(S31, bad, (1, 2, 3, 5), F(1, 100))
    assert rep.nested and rep.first_empty == 2
    with pytest.raises(ValueError):
        nested_tracer_limit(S31, bad, (3, 2), F(1, 100))
    with pytest.raises(ValueError):
        nested_tracer_limit(S31, bad, (3, 9), F(1, 100))


def test_lift_examples():
    po = perturbed_orbit(S31, F(1, 3), F(1, 64), 6, seed=4)
    lifted = lift_hyper_pseudo_orbit(S31, HyperPseudoOrbit.singletons(po))
    assert [p.points for p in lifted] == [po.points]
    a, b = F(1, 2), F(2, 5) + F(1, 1000)
    c = F(1, 2) + F(1, 1000)
    hpo = HyperPseudoOrbit.checked(ID, [FiniteSubset.of(a, b), FiniteSubset.of(c)], F(1, 5))
    lifted = lift_hyper_pseudo_orbit(ID, hpo)
    assert sorted(p.points for p in lifted) == sorted([(a, c), (b, c)])
    with pytest.raises(PseudoOrbitError):
        HyperPseudoOrbit.checked(ID, [FiniteSubset.of(0), FiniteSubset.of(1)], F(1, 2))


def test_lift_covers_intermediate_points():
    # 3/10 in A_1 has no successor chain from A_2 backward; it must be lifted forward
    sets = [FiniteSubset.of("1/4"), FiniteSubset.of("1/4", "3/10"), FiniteSubset.of("1/4")]
    hpo = HyperPseudoOrbit.checked(ID, sets, F(1, 10))
    lifted = lift_hyper_pseudo_orbit(ID, hpo)
    assert {p.points for p in lifted} == {(F(1, 4),) * 3, (F(1, 4), F(3, 10), F(1, 4))}


def test_assemble_examples():
    true = PseudoOrbit(tuple(S31.orbit(F(2, 7), 6)), F(1, 100))
    hpo = HyperPseudoOrbit.singletons(true)
    asm = hyper_trace_assemble(S31, hpo, lift_hyper_pseudo_orbit(S31, hpo), F(1, 20))
    assert asm.subset == FiniteSubset.of(F(2, 7)) and set(asm.distances) == {0}
    fixed = HyperPseudoOrbit.checked(S32, [FiniteSubset.of(F(1, 2))] * 5, F(1, 100))
    asm = hyper_trace_assemble(S32, fixed, lift_hyper_pseudo_orbit(S32, fixed), F(1, 10))
    assert closed("9/20", "11/20").contains(asm.subset.points[0])
    assert all(d <= F(1, 10) for d in asm.distances)
    far = HyperPseudoOrbit((FiniteSubset.of(0), FiniteSubset.of(1)), F(2))
    asm = hyper_trace_assemble(S31, far, lift_hyper_pseudo_orbit(S31, far), F(1, 1000))
    assert asm.subset is None and asm.failing_index == 0


@given(fixture_schedules, st.integers(0, 4096).map(_half), st.integers(1, 12), seeds, st.integers(10, 200))
def test_tracer_matches_grid(s, x0, m, seed, dinv):
    po = perturbed_orbit(s, x0, F(1, dinv), m, seed)
    eps = F(1, 16)
    carrier = tracer_carrier(s, po.points, eps)
    grid = np.arange(2049) / 2048
    mask = kernels.tracer_mask(s, grid, [float(x) for x in po.points], float(eps))
    cell = 1 / 2048
    for y, inside in zip(grid, mask):
        exact = carrier.contains(F(y))
        if inside != exact:
            near = any(min(abs(y - float(lo)), abs(y - float(hi))) <= cell for lo, hi in carrier)
            assert near or carrier.is_empty()


@given(fixture_schedules, st.integers(0, 4096).map(_half), st.integers(1, 10), seeds)
def test_tracer_monotone_in_epsilon(s, x0, m, seed):
    po = perturbed_orbit(s, x0, F(1, 40), m, seed)
    small, big = tracer_carrier(s, po.points, F(1, 30)), tracer_carrier(s, po.points, F(1, 10))
    assert small.issubset(big)


@given(fixture_schedules, st.integers(0, 4096).map(_half), st.integers(1, 10), seeds)
def test_margin_certifies_strict_tracing(s, x0, m, seed):
    po = perturbed_orbit(s, x0, F(1, 40), m, seed)
    ts = tracer_set(s, po, F(1, 20))
    assert ts.traced == is_traced(s, po, F(1, 20))
    if ts.traced:
        inner = tracer_carrier(s, po.points, ts.epsilon - ts.margin)
        lo, hi = inner.components[0]
        y = (lo + hi) / 2
        assert all(abs(s.orbit_point(y, i) - x) < ts.epsilon for i, x in enumerate(po.points))
    else:
        assert ts.status in ("untraced", "boundary-indeterminate")


@given(seeds, st.integers(1, 10))
def test_lift_postconditions(seed, m):
    hpo = random_hyper_pseudo_orbit(S31, m, 5, F(1, 256), seed)
    lifted = lift_hyper_pseudo_orbit(S31, hpo)
    for p in lifted:
        assert validate_pseudo_orbit(S31, p.points, hpo.delta)[0]
        assert all(x in a.points for x, a in zip(p.points, hpo.sets))
    for i, a in enumerate(hpo.sets):
        assert {p.points[i] for p in lifted} == set(a.points)
    asm = hyper_trace_assemble(S31, hpo, lifted, F(1, 10))
    if asm.subset is not None:
        for i, a in enumerate(hpo.sets):
            assert hausdorff_distance(induced_image(S31, asm.subset, i), a) <= F(1, 10)


@given(fixture_schedules, st.integers(0, 4096).map(_half), st.integers(1, 10), seeds)
def test_singleton_embedding_tracer(s, x0, m, seed):
    po = perturbed_orbit(s, x0, F(1, 64), m, seed)
    hpo = HyperPseudoOrbit.singletons(po)
    lifted = lift_hyper_pseudo_orbit(s, hpo)
    assert tracer_carrier(s, lifted[0].points, F(1, 20)) == tracer_carrier(s, po.points, F(1, 20))


# dense invariant subset: dyadic rationals are mapped to dyadics by both fixtures


def _dyadic(x: F) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


@given(fixture_schedules, st.integers(0, 2**16), st.integers(0, 12))
def test_dyadics_are_invariant(s, k, n):
    assert _dyadic(s.orbit_point(F(k, 2**16), n))


@given(fixture_schedules, st.integers(0, 999), st.integers(1, 8), seeds)
def test_dyadic_tracing_transfers_to_all_points(s, k, m, seed):
    # non-dyadic pseudo-orbit with denominators of 3
    delta, eps, step = F(1, 100), F(1, 10), F(1, 2**14)
    po = perturbed_orbit(s, F(3 * k + 1, 3000), delta, m, seed)
    po = PseudoOrbit(tuple(x + F(1, 3 * 2**20) if x < 1 else x for x in po.points), delta)
    rounded = [F(round(x / step)) * step for x in po.points]
    lip = max(f.slope_max for f in s.maps)
    assert validate_pseudo_orbit(s, rounded, delta + (lip + 1) * step)[0]
    carrier = tracer_carrier(s, rounded, eps)
    wide = carrier.nondegenerate()
    if wide:
        lo, hi = wide[0]
        y = (lo + hi) / 2
        y = F(round(y / step**2)) * step**2
        if carrier.contains(y):
            assert _dyadic(y)
            # the dyadic tracer of the rounded orbit traces the original one
            assert all(abs(s.orbit_point(y, i) - x) <= eps + step for i, x in enumerate(po.points))
