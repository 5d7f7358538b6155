from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plhyper import kernels
from plhyper.fixtures import FIXTURES, schedule
from plhyper.kernels import numba_backend, numpy_backend, pack_schedule

needs_numba = pytest.mark.skipif(numba_backend is None, reason="numba not importable")
names = sorted(FIXTURES)


def test_backend_selection():
    assert kernels.get_backend("numpy") is numpy_backend
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")
    assert kernels.BACKEND in ("numba", "numpy")


@pytest.mark.parametrize("name", names)
def test_orbit_table_matches_exact_orbits(name):
    s = schedule(name)
    xs = [F(k, 97) for k in range(98)]
    table = kernels.orbit_table(s, [float(x) for x in xs], 20)
    for j, x in enumerate(xs):
        exact = [float(y) for y in s.orbit(x, 20)]
        np.testing.assert_allclose(table[:, j], exact, atol=1e-9)


@needs_numba
@pytest.mark.parametrize("name", names)
def test_backends_agree(name):
    packed = pack_schedule(schedule(name))
    xs = (np.arange(3001) + 0.5) / 3001
    for kernel, args in [
        ("orbit_table", (xs, 30)),
        ("sampled_diameters", (xs, 30)),
        ("sampled_hits", (xs, 30, 0.2, 0.3)),
        ("tracer_mask", (xs, np.full(8, 0.5), 0.15)),
    ]:
        ref = getattr(numpy_backend, kernel)(*packed, *args)
        got = getattr(numba_backend, kernel)(*packed, *args)
        np.testing.assert_allclose(ref, got, atol=1e-12, err_msg=kernel)


@needs_numba
@settings(max_examples=40)
@given(
    st.sampled_from(names),
    st.integers(0, 19),
    st.sampled_from([F(1, 20), F(1, 10)]),
    st.sampled_from([F(1, 10), F(1, 4)]),
)
def test_hyper_brute_backends_agree(name, k, eps, delta):
    packed = pack_schedule(schedule(name))
    grid = (np.arange(12) + 0.5) / 12
    centre = np.array([(k + 0.5) / 20])
    args = (grid, centre, float(eps), float(delta), 8, 2, 1e-12)
    np.testing.assert_array_equal(numpy_backend.hyper_brute(*packed, *args), numba_backend.hyper_brute(*packed, *args))


def test_sampled_hits_shape_and_range():
    s = schedule("example31")
    xs = np.linspace(0, 1, 101)
    hits = kernels.sampled_hits(s, xs, 10, 0.0, 0.1)
    assert hits.shape == (10,) and hits.dtype == np.bool_
