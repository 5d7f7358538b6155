from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import unit_intervals, unit_rationals

from plhyper.fixtures import (
    EXAMPLE31_MAP,
    EXAMPLE32_MAP,
    IDENTITY_MAP,
    TENT_MAP,
    schedule,
)
from plhyper.pl_dynamics import (
    DomainError,
    IntervalUnion,
    MapSchedule,
    PLMap,
    ProductSystem,
    closed,
)
from plhyper.rational import DenominatorOverflow, set_denominator_limit

MAPS = [EXAMPLE31_MAP, EXAMPLE32_MAP, TENT_MAP, IDENTITY_MAP]
maps = st.sampled_from(MAPS)
unions = st.lists(unit_intervals(), min_size=1, max_size=3).map(IntervalUnion)


def test_eval_examples():
    assert EXAMPLE31_MAP(F(1, 2)) == 1
    assert IDENTITY_MAP(F(37, 100)) == F(37, 100)
    assert EXAMPLE32_MAP(F(3, 4)) == 0


def test_eval_piece_formulas():
    for x in (F(k, 97) for k in range(98)):
        f = F(1, 2) - 2 * x if x <= F(1, 4) else 4 * x - 1 if x <= F(1, 2) else 2 - 2 * x
        g = 2 * x + F(1, 2) if x <= F(1, 4) else -2 * x + F(3, 2) if x <= F(3, 4) else 2 * x - F(3, 2)
        assert EXAMPLE31_MAP(x) == f
        assert EXAMPLE32_MAP(x) == g


def test_eval_domain_error():
    with pytest.raises(DomainError):
        EXAMPLE31_MAP(F(11, 10))


@pytest.mark.parametrize(
    "bps, vals",
    [
        (("0", "1/2"), ("0", "1")),
        (("0", "1/2", "1/2", "1"), ("0", "1", "1", "0")),
        (("0", "1"), ("0", "2")),
        (("0",), ("0",)),
        (("0", "1"), ("0",)),
    ],
)
def test_map_validation(bps, vals):
    with pytest.raises(ValueError):
        PLMap(bps, vals)


def test_no_constant_piece_flag():
    assert EXAMPLE31_MAP.no_constant_piece
    flat = PLMap(("0", "1/2", "1"), ("0", "1/2", "1/2"))
    assert not flat.no_constant_piece
    assert not MapSchedule((EXAMPLE31_MAP, flat)).no_constant_piece


def test_orbit_examples():
    s = schedule("example31")
    assert s.orbit_point(F(1, 2), 1) == 1
    assert s.orbit_point(F(1, 2), 2) == 1
    assert s.orbit_point(F(3, 7), 0) == F(3, 7)
    assert s.map_at(2) is IDENTITY_MAP and s.map_at(3) is EXAMPLE31_MAP


def test_image_examples():
    assert EXAMPLE31_MAP.image(closed(0, "1/4")) == closed(0, "1/2")
    assert EXAMPLE31_MAP.image(closed("3/10", "2/5")) == closed("1/5", "3/5")
    u = IntervalUnion((("1/10", "1/5"), ("1/2", "3/5")))
    assert IDENTITY_MAP.image(u) == u


def test_preimage_examples():
    assert EXAMPLE31_MAP.preimage(IntervalUnion.point(0)) == IntervalUnion((("1/4", "1/4"), (1, 1)))
    assert EXAMPLE32_MAP.preimage(IntervalUnion.point(1)) == IntervalUnion.point("1/4")
    u = IntervalUnion((("1/10", "1/5"),))
    assert IDENTITY_MAP.preimage(u) == u


def test_constant_piece_preimage_takes_whole_piece():
    flat = PLMap(("0", "1/2", "1"), ("0", "1/2", "1/2"))
    assert flat.preimage(IntervalUnion.point("1/2")) == closed("1/2", 1)


def test_image_at_time_examples():
    s = schedule("example31")
    u = closed("2/5", "1/2")
    assert s.image_at_time(u, 3) == (closed(0, "4/5"), F(4, 5))
    assert s.image_at_time(u, 0) == (u, F(1, 10))
    assert s.image_at_time(IntervalUnion.full(), 1) == (IntervalUnion.full(), 1)


def test_image_diameter_chain_frozen():
    chain = schedule("example31").images(closed("2/5", "1/2"), 6)
    assert [w.diameter for w in chain] == [F(1, 10), F(2, 5), F(2, 5), F(4, 5), F(4, 5), 1, 1]


def test_image_matches_dense_sampling():
    u = closed(0, "1/4")
    xs = np.arange(0, 0.25 + 1e-12, 1e-3)
    ys = [float(EXAMPLE31_MAP(F(x).limit_denominator(10**4))) for x in xs]
    img = EXAMPLE31_MAP.image(u)
    assert abs(min(ys) - float(img.lo)) < 1e-2 and abs(max(ys) - float(img.hi)) < 1e-2


def test_union_normalization():
    u = IntervalUnion(((0, "1/4"), ("1/4", "1/2"), ("3/4", "3/4"), ("1/8", "1/5")))
    assert u.components == ((0, F(1, 2)), (F(3, 4), F(3, 4)))
    assert IntervalUnion(u.components) == u
    assert u.diameter == F(3, 4)
    with pytest.raises(DomainError):
        IntervalUnion(((0, 2),))
    with pytest.raises(ValueError):
        IntervalUnion(((F(1, 2), F(1, 4)),))


def test_meets_open_ignores_boundary_contact():
    u = IntervalUnion(((0, "1/4"), ("1/2", "1/2")))
    assert not u.meets_open(F(1, 4), F(1, 3))
    assert not u.meets_open(F(2, 5), F(3, 5))
    assert u.meets_open(F(1, 5), F(1, 3))


def test_record_round_trip():
    for m in MAPS:
        assert PLMap.from_record(m.to_record()) == m
    text = 'pl-map { breakpoints = ["0","1/4","1/2","1"], values = ["1/2","0","1","0"] }'
    assert PLMap.from_record(text) == EXAMPLE31_MAP
    with pytest.raises(ValueError):
        PLMap.from_record('pl-map { breakpoints = ["0","1"], values = ["0","1"], extra = [] }')
    with pytest.raises(ValueError):
        PLMap.from_record("nonsense")


def test_product_metric():
    p = ProductSystem(schedule("example31"), schedule("example32"))
    assert p.distance((F(0), F(1)), (F(1, 2), F(1, 4))) == F(5, 4)
    assert p.orbit_point((F(1, 2), F(1, 2)), 1) == (1, F(1, 2))


def test_denominator_limit_aborts():
    s = MapSchedule((PLMap(("0", "1"), ("0", "1/3")),))
    prev = set_denominator_limit(16)
    try:
        with pytest.raises(DenominatorOverflow):
            s.images(closed("1/7", "1/5"), 40)
    finally:
        set_denominator_limit(prev)


@given(maps, unions, st.data())
def test_image_sound(m, u, data):
    img = m.image(u)
    lo, hi = data.draw(st.sampled_from(u.components))
    t = data.draw(unit_rationals())
    assert img.contains(m(lo + t * (hi - lo)))


GRID = np.arange(4097) / 4096


@given(maps, unions, st.lists(unit_rationals(), min_size=1, max_size=5))
def test_image_is_attained(m, u, ts):
    # float oracle: every image endpoint is hit by some grid point of u up to one step
    bp = np.array([float(b) for b in m.breakpoints])
    val = np.array([float(v) for v in m.values])
    inside = np.zeros_like(GRID, dtype=bool)
    ends = []
    for lo, hi in u.components:
        inside |= (GRID >= float(lo)) & (GRID <= float(hi))
        ends += [float(lo), float(hi)]
    vals = np.interp(np.concatenate([GRID[inside], ends]), bp, val)
    img = m.image(u)
    step = float(m.slope_max) / 4096 + 1e-12
    targets = [lo + t * (hi - lo) for t in ts for lo, hi in img.components]
    for y in [img.lo, img.hi, *targets]:
        assert np.abs(vals - float(y)).min() <= step


@given(maps, unions)
def test_galois(m, u):
    assert u.issubset(m.preimage(m.image(u)))
    rng = m.image(IntervalUnion.full())
    inside = u.intersect(rng)
    if inside:
        assert m.image(m.preimage(inside)).issubset(inside)


@given(st.sampled_from(["example31", "example32", "tent"]), unions, st.integers(0, 6), st.integers(0, 6))
def test_composition_coherence(name, u, m, n):
    s = schedule(name)
    first, _ = s.image_at_time(u, m)
    assert s.image_at_time(u, m + n)[0] == s.shifted(m).image_at_time(first, n)[0]


@given(unions)
def test_diameter_is_sup_separation(u):
    ends = [c for pair in u.components for c in pair]
    assert max(abs(x - y) for x in ends for y in ends) == u.diameter


@given(unions)
def test_normalization_idempotent(u):
    again = IntervalUnion(u.components)
    assert again == u
    assert all(0 <= lo <= hi <= 1 for lo, hi in again.components)
