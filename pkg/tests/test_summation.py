import math

import numpy as np
from hypothesis import given, strategies as st

from pntlab.summation import NeumaierSum, PrefixSampler, fsum_array


def test_neumaier_recovers_cancelled_mass():
    acc = NeumaierSum()
    for v in [1.0, 1e100, 1.0, -1e100]:
        acc.add(v)
    assert acc.value == 2.0


def test_fsum_array_empty():
    assert fsum_array(np.zeros(0)) == 0.0


@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=200))
def test_neumaier_close_to_fsum(values):
    acc = NeumaierSum()
    acc.extend(values)
    assert math.isclose(acc.value, math.fsum(values), rel_tol=1e-12, abs_tol=1e-6)


@given(
    st.lists(st.integers(1, 500), min_size=1, max_size=20, unique=True),
    st.integers(1, 7),
)
def test_prefix_sampler_matches_brute_force(points, chunk):
    ns = np.arange(1, 600, dtype=np.int64)
    vals = np.sin(ns.astype(float))
    weights = (ns % 3) - 1
    s = PrefixSampler(points)
    for i in range(0, ns.size, chunk * 37):
        sl = slice(i, i + chunk * 37)
        s.feed(ns[sl], vals[sl], weights=weights[sl])
    sums, ints = s.result()
    for p, got, gi in zip(sorted(points), sums, ints):
        assert math.isclose(got, math.fsum(vals[:p]), abs_tol=1e-12)
        assert gi == int(weights[:p].sum())
