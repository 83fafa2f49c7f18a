import math
import random

import numpy as np
import pytest

from totaldom.random_graph import (
    GnpSpec,
    bollobas_p,
    compare_thresholds,
    edge_uniforms,
    sample_gnp,
    threshold_p,
)
from totaldom.rng import derive_seed, keyed_uniforms, splitmix64


def test_splitmix64_reference_values():
    # published SplitMix64 outputs for state 0: successive calls add the golden gamma
    gamma = 0x9E3779B97F4A7C15
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(gamma) == 0x6E789E6AA1B965F4


def test_keyed_uniforms_order_independent():
    keys = np.arange(5, dtype=np.uint64)
    u = keyed_uniforms(11, 7, keys)
    assert ((u >= 0) & (u < 1)).all()
    again = keyed_uniforms(11, 7, keys[::-1])[::-1]
    assert (u == again).all()


def test_derive_seed_is_pure():
    assert derive_seed(1, 5) == derive_seed(1, 5)
    assert len({derive_seed(1, i) for i in range(1000)}) == 1000
    assert derive_seed(1, 0) != derive_seed(2, 0)


def test_p_extremes():
    assert sample_gnp(GnpSpec(5, 0.0, 1)).m == 0
    assert sample_gnp(GnpSpec(5, 1.0, 1)).m == 10


def test_invalid_p():
    with pytest.raises(ValueError):
        GnpSpec(5, 1.5, 0)
    with pytest.raises(ValueError):
        GnpSpec(5, -0.1, 0)


def test_determinism():
    a = sample_gnp(GnpSpec(60, 0.3, 42))
    b = sample_gnp(GnpSpec(60, 0.3, 42))
    assert a.edges == b.edges
    assert a.edges != sample_gnp(GnpSpec(60, 0.3, 43)).edges


def test_coupling_is_monotone_in_p():
    lo = set(sample_gnp(GnpSpec(40, 0.2, 9)).edges)
    hi = set(sample_gnp(GnpSpec(40, 0.35, 9)).edges)
    assert lo <= hi


def test_edge_count_mean():
    # Bin(4950, 0.3): mean 1485, sd sqrt(4950 * 0.21) = 32.24; mean of 1000 samples has sd 1.02
    counts = [sample_gnp(GnpSpec(100, 0.3, s)).m for s in range(1000)]
    mean = sum(counts) / len(counts)
    assert abs(mean - 1485) <= 3 * 32.24 / math.sqrt(1000)
    sd = np.std(counts)
    assert 0.85 * 32.24 < sd < 1.15 * 32.24


def test_pair_inclusion_frequency():
    n, p, samples = 30, 0.37, 600
    rng = random.Random(0)
    us, vs, _ = edge_uniforms(n, 0)
    pairs = rng.sample(list(zip(us.tolist(), vs.tolist())), 20)
    hits = dict.fromkeys(pairs, 0)
    for s in range(samples):
        edges = set(sample_gnp(GnpSpec(n, p, s)).edges)
        for e in pairs:
            hits[e] += e in edges
    tol = 4 * math.sqrt(p * (1 - p) / samples)
    for e in pairs:
        assert abs(hits[e] / samples - p) <= tol


def test_threshold_examples():
    t = threshold_p(200, 3)
    assert t.p == pytest.approx(0.1529257, rel=1e-6)
    assert not t.clamped
    assert threshold_p(10**6, 2, 1.01).p == pytest.approx(0.003754091, rel=1e-6)
    assert threshold_p(400, 2, 1.01).p == pytest.approx(0.1236112, rel=1e-6)


def test_threshold_clamp_path():
    t = threshold_p(math.e, 3)
    assert t.clamped
    assert t.p == 1.0
    assert t.raw == pytest.approx(3 * math.exp(-2 / 3))


def test_threshold_errors():
    with pytest.raises(ValueError):
        threshold_p(1, 3)
    with pytest.raises(ValueError):
        threshold_p(100, 1)
    with pytest.raises(ValueError):
        threshold_p(100, 2, c2=1.0)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_threshold_decreasing_in_n(k):
    grid = [10, 30, 100, 300, 10**3, 10**4, 10**5, 10**6, 10**8]
    values = [threshold_p(n, k).raw for n in grid]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_bollobas():
    b = bollobas_p(100, 2, 3)
    assert b.p == pytest.approx(0.0947906, rel=1e-6)
    assert b.diameter_probability == pytest.approx(math.exp(-1))
    # p^d n^(d-1) = ln(n^2/c)
    assert b.p**3 * 100**2 == pytest.approx(math.log(100**2 / 2))
    with pytest.raises(ValueError):
        bollobas_p(2, 4, 3)


def test_compare_thresholds_example():
    c = compare_thresholds(1e6, 3, 1, 0.4)
    assert c.weak_below_diameter
    assert c.p_weak == pytest.approx(3 * (math.log(1e6) / 1e12) ** (1 / 3))
    assert c.p_diameter == pytest.approx(math.sqrt(math.log(1e12) / 1e6))
    # (ln 10^6)^0.4 = 2.86 < 3: condition not met, so nothing is claimed
    assert not c.degree_condition


@pytest.mark.parametrize("d", [2, 3])
def test_compare_thresholds_sweep(d):
    for n in [10**3, 10**4, 10**5, 10**6, 10**7]:
        assert compare_thresholds(n, d, 1.0, 0.4).weak_below_diameter


@pytest.mark.parametrize("d, n_ok", [(4, 10**5), (5, 10**12)])
def test_compare_thresholds_holds_eventually(d, n_ok):
    # larger constant d needs larger n before the weakened threshold drops below
    assert not compare_thresholds(1000, d, 1.0, 0.4).weak_below_diameter
    for n in [n_ok, n_ok * 10, n_ok * 1000]:
        assert compare_thresholds(n, d, 1.0, 0.4).weak_below_diameter


def test_compare_thresholds_guard_true():
    assert compare_thresholds(1e40, 3, 1, 0.4).degree_condition
