"""Seeded G(n, p) sampling and the probability thresholds for it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph import Graph, build_graph
from .rng import STREAM_EDGE, keyed_uniforms, pair_keys

DEFAULT_C2 = 1.01


@dataclass(frozen=True)
class GnpSpec:
    n: int
    p: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")


def edge_uniforms(n: int, seed: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The per-pair uniform variates behind :func:`sample_gnp`.

    Pair (u, v) is present iff its variate is below p, so graphs sampled with
    one seed at increasing p are nested.
    """
    us, vs, keys = pair_keys(n)
    return us, vs, keyed_uniforms(seed, STREAM_EDGE, keys)


def sample_gnp(spec: GnpSpec) -> Graph:
    us, vs, u01 = edge_uniforms(spec.n, spec.seed)
    keep = u01 < spec.p
    return build_graph(spec.n, zip(us[keep].tolist(), vs[keep].tolist()))


class Threshold(NamedTuple):
    p: float
    raw: float
    clamped: bool


def threshold_p(n: float, k: int, c2: float = DEFAULT_C2) -> Threshold:
    """Edge probability above which γᵗ₍ₖ,ᵣ₎(G(n,p)) = r+1 a.a.s.

    k >= 3: ``k * (ln n / n^(k-1))^(1/k)``; k = 2: ``c2 * sqrt(ln n / n)``
    with ``c2 > 1``.  Values above 1 are clamped and flagged.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n <= 1:
        raise ValueError(f"log n must be positive, got n={n}")
    logn = math.log(n)
    if k == 2:
        if c2 <= 1:
            raise ValueError(f"c2 must exceed 1, got {c2}")
        raw = c2 * math.sqrt(logn / n)
    else:
        # n^(k-1) overflows floats for large n; work in logs
        raw = k * math.exp((math.log(logn) - (k - 1) * logn) / k)
    return Threshold(min(raw, 1.0), raw, raw > 1.0)


class BollobasThreshold(NamedTuple):
    p: float
    diameter_probability: float


def bollobas_p(n: float, c: float, d: int) -> BollobasThreshold:
    """p solving ``p^d n^(d-1) = ln(n^2/c)`` and the limit P[diam = d] = e^(-c/2)."""
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    arg = 2 * math.log(n) - math.log(c)
    if arg <= 0:
        raise ValueError(f"log(n^2/c) must be positive (n={n}, c={c})")
    p = math.exp((math.log(arg) - (d - 1) * math.log(n)) / d)
    return BollobasThreshold(p, math.exp(-c / 2))


@dataclass(frozen=True)
class ThresholdComparison:
    n: float
    d: int
    c: float
    eps: float
    p_weak: float
    p_diameter: float
    weak_below_diameter: bool
    degree_condition: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def compare_thresholds(n: float, d: int, c: float, eps: float) -> ThresholdComparison:
    """Compare ``d (ln n / n^(d-1))^(1/d)`` with ``(ln(n^2/c) / n^(d-2))^(1/(d-1))``.

    ``degree_condition`` records whether ``d <= (ln n)^eps``; the inequality
    is only claimed under that condition, so it is reported, not enforced.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if n <= 1:
        raise ValueError(f"log n must be positive, got n={n}")
    logn = math.log(n)
    p_weak = d * math.exp((math.log(logn) - (d - 1) * logn) / d)
    arg = 2 * logn - math.log(c)
    if arg <= 0:
        raise ValueError(f"log(n^2/c) must be positive (n={n}, c={c})")
    p_diam = math.exp((math.log(arg) - (d - 2) * logn) / (d - 1))
    return ThresholdComparison(
        n=n, d=d, c=c, eps=eps,
        p_weak=p_weak,
        p_diameter=p_diam,
        weak_below_diameter=p_weak < p_diam,
        degree_condition=d <= logn ** eps,
    )
