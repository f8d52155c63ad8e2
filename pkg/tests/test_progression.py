import math

import pytest
from hypothesis import given, strategies as st

from oracles import count_multiples_brute, pi_oracle, psi_oracle
from pntlab.arith import ProgressionClass as P
from pntlab.progression import (
    as_threshold,
    chebyshev_samples,
    count_progression_multiples,
    crt_residue,
    pi_direct,
    prime_power_excess,
    psi_all,
    psi_direct,
)


def test_crt_examples():
    s = crt_residue(1, P(3, 1))
    assert (s.exists, s.b, s.modulus) == (True, 1, 3)
    s = crt_residue(3, P(4, 1))
    assert (s.exists, s.b, s.modulus) == (True, 9, 12)
    assert not crt_residue(2, P(4, 1)).exists


@given(st.integers(1, 60), st.integers(1, 40), st.data())
def test_crt_invariants(d, q, data):
    a = data.draw(st.sampled_from([r for r in range(q) if math.gcd(r, q) == 1]))
    s = crt_residue(d, P(q, a))
    assert s.exists == (math.gcd(d, q) == 1)
    if s.exists:
        assert s.modulus == d * q
        assert 0 < s.b <= d * q and s.b % d == 0 and s.b % q == a
        assert [n for n in range(1, d * q + 1) if n % d == 0 and n % q == a] == [s.b]


@pytest.mark.parametrize("x, d, q, a, n", [(100, 3, 4, 1, 8), (100, 2, 4, 1, 0), (10, 1, 3, 1, 4)])
def test_count_examples(x, d, q, a, n):
    assert count_progression_multiples(x, d, P(q, a)) == n


def test_count_matches_brute_small_grid():
    for q in range(1, 13):
        for a in range(q):
            if math.gcd(a, q) != 1:
                continue
            for d in range(1, 13):
                for x in (0, 1, 7, 50, 143):
                    assert count_progression_multiples(x, d, P(q, a)) == count_multiples_brute(x, d, q, a)


def test_psi_examples():
    assert psi_direct(1, P(3, 1)).psi == 0
    r = psi_direct(20, P(3, 1))
    assert r.psi == pytest.approx(2 * math.log(2) + math.log(7) + math.log(13) + math.log(19), rel=1e-15)
    assert r.residual == pytest.approx(r.psi - 10.0)
    assert psi_all(1) == 0
    assert psi_all(10) == pytest.approx(3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7), rel=1e-15)


def test_psi_1e6_against_oracle():
    # frozen from psi_oracle(10**6) (pure-Python prime list)
    assert psi_all(10**6) == pytest.approx(999586.597495633, rel=1e-6)
    assert psi_all(10**6) == pytest.approx(psi_oracle(10**6), rel=1e-12)


def test_psi_100_conservation():
    total = sum(psi_direct(100, P(5, a, require_coprime=False)).psi for a in range(5))
    assert total == pytest.approx(psi_all(100), rel=1e-12)
    assert psi_all(100) == pytest.approx(psi_oracle(100), rel=1e-14)


@pytest.mark.parametrize("x, q, a, n", [(100, 4, 1, 11), (100, 4, 3, 13), (10, 3, 2, 2)])
def test_pi_examples(x, q, a, n):
    assert pi_direct(x, P(q, a)) == n == pi_oracle(x, q, a)


@given(st.integers(0, 3000), st.integers(1, 30), st.data())
def test_psi_theta_pi_against_oracles(x, q, data):
    a = data.draw(st.sampled_from([r for r in range(q) if math.gcd(r, q) == 1]))
    r = psi_direct(x, P(q, a))
    assert r.psi == pytest.approx(psi_oracle(x, q, a), rel=1e-12, abs=1e-12)
    assert r.pi_count == pi_oracle(x, q, a)
    assert r.psi >= r.theta >= 0


def test_samples_any_order_and_segment_independent():
    xs = [1000, 10, 999, 10, 5000]
    a = chebyshev_samples(xs, P(7, 3), segment=97)
    b = [psi_direct(x, P(7, 3), segment=1 << 20) for x in xs]
    assert [r.x for r in a] == xs
    for r, s in zip(a, b):
        assert r.pi_count == s.pi_count
        assert r.psi == pytest.approx(s.psi, rel=1e-14, abs=0)


def test_psi_minus_theta_is_prime_power_excess():
    for x in (10, 100, 12345, 10**6):
        r = psi_direct(x, P(1, 0))
        assert abs((r.psi - r.theta) - prime_power_excess(x)) < 1e-9 * max(1.0, r.psi)


def test_thresholds_are_floored():
    assert as_threshold(10.9) == 10
    assert psi_direct(20.7, P(3, 1)).psi == psi_direct(20, P(3, 1)).psi
    with pytest.raises(ValueError):
        as_threshold(-1)
