import math
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from totaldom.bounds import (
    comb_float,
    diagnostics,
    failure_bound,
    janson_delta,
    janson_mu,
    janson_probability_bound,
)
from totaldom.random_graph import threshold_p


@given(st.integers(0, 3000), st.integers(0, 40))
def test_log_gamma_binomials_within_budget(n, k):
    exact = math.comb(n, k)
    if exact == 0:
        assert comb_float(n, k) == 0
    else:
        assert comb_float(n, k) == pytest.approx(exact, rel=1e-9)


def test_mu_examples():
    assert janson_mu(10, 3, 0.5).exact == pytest.approx(3.5, rel=1e-12)
    assert janson_mu(10, 3, 0.0).exact == 0
    n = 10**4
    mu = janson_mu(n, 3, threshold_p(n, 3).p)
    assert mu.paper_lower == pytest.approx(0.9 * 3 * math.log(n))
    assert mu.paper_lower == pytest.approx(24.8679, abs=1e-4)
    assert mu.exact >= mu.paper_lower


def _delta_by_path_pairs(n, k, p):
    """Count ordered pairs of k-edge u-v paths (u=0, v=1, interior in increasing order) sharing t edges."""
    others = range(2, n)
    paths = []
    for inner in combinations(others, k - 1):
        seq = (0, *inner, 1)
        paths.append({frozenset(e) for e in zip(seq, seq[1:])})
    total = 0.0
    for a in paths:
        for b in paths:
            if a is b:
                continue
            t = len(a & b)
            if t:
                total += p ** (2 * k - t)
    return total


def test_delta_hand_expansion():
    # k=2, n=5: C(3,1) * C(2,1) C(3,0) p^3
    assert janson_delta(5, 2, 0.5) == pytest.approx(0.75, rel=1e-12)
    assert janson_delta(5, 2, 0.0) == 0


@pytest.mark.parametrize("n, k", [(7, 2), (7, 3), (8, 3), (8, 4)])
def test_delta_upper_bounds_true_delta(n, k):
    p = 0.3
    assert _delta_by_path_pairs(n, k, p) <= janson_delta(n, k, p) * (1 + 1e-12)


def test_delta_decreasing_at_threshold():
    grid = [10**3, 10**4, 10**5, 10**6]
    deltas = [janson_delta(n, 3, threshold_p(n, 3).p) for n in grid]
    assert all(a > b for a, b in zip(deltas, deltas[1:]))


def test_delta_eventually_below_mu():
    # with this explicit form the crossover sits near n = 10^7
    for n in [10**7, 10**8, 10**9]:
        p = threshold_p(n, 3).p
        assert janson_delta(n, 3, p) < janson_mu(n, 3, p).exact


def test_probability_bound_examples():
    assert janson_probability_bound(0, 0).bound == 1
    jb = janson_probability_bound(2, 1)
    assert jb.bound == pytest.approx(math.exp(-1.5))
    assert jb.bound == pytest.approx(0.2231302, rel=1e-6)
    mu = 0.9 * 3 * math.log(100)
    jb = janson_probability_bound(mu, 1e-3)
    assert jb.simplified_applies
    assert jb.simplified == pytest.approx(100**-1.35, rel=1e-12)
    assert jb.simplified == pytest.approx(0.0019953, rel=1e-4)
    raw = janson_probability_bound(1, 10)
    assert raw.clamped and raw.bound > 1 and not raw.simplified_applies
    with pytest.raises(ValueError):
        janson_probability_bound(-1, 0)


def test_failure_bound_examples():
    fb = failure_bound(100, 3, 2)
    assert fb.value == pytest.approx(0.3990525, rel=1e-6)
    # the two printed forms agree under natural log
    assert fb.value == pytest.approx(100 * 2 * math.exp(-(9 / 20) * 3 * math.log(100)))
    grid = [10**e for e in range(2, 10)]
    vals = [failure_bound(n, 3, 1).value for n in grid]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-3
    k2 = failure_bound(100, 2, 1)
    assert not k2.conclusive
    assert k2.exponent == pytest.approx(0.1)


def test_failure_bound_monotone_in_k():
    for n in (50, 1000, 10**6):
        vals = [failure_bound(n, k, 2).value for k in range(3, 9)]
        assert all(a > b for a, b in zip(vals, vals[1:]))


def test_diagnostics_pure_and_flags():
    a = diagnostics(10**4, 3, 2)
    b = diagnostics(10**4, 3, 2)
    assert a == b
    assert not a.below_threshold
    assert diagnostics(10**4, 3, 2, p=0.001).below_threshold
    assert a.janson_clamped and a.janson_bound > 1
    assert not a.delta_below_mu
