"""Janson-inequality diagnostics and failure probabilities for G(n, p).

For a fixed pair (u, v) the events B_i are "the k-edge path from u through
the i-th (k-1)-subset of the other n-2 vertices to v is present".  All
binomials go through log-gamma so n in the millions is fine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .random_graph import threshold_p


def log_comb(n: float, k: int) -> float:
    if k < 0 or k > n:
        return -math.inf
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def comb_float(n: float, k: int) -> float:
    return math.exp(log_comb(n, k))


def _check(n: int, k: int, p: float) -> None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < k + 1:
        raise ValueError(f"need n >= k+1, got n={n}, k={k}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")


class JansonMu(NamedTuple):
    exact: float
    paper_lower: float


def janson_mu(n: int, k: int, p: float) -> JansonMu:
    """Expected number of u-v paths of length k: ``C(n-2, k-1) p^k``, and ``0.9 k ln n``."""
    _check(n, k, p)
    lower = 0.9 * k * math.log(n)
    if p == 0:
        return JansonMu(0.0, lower)
    return JansonMu(math.exp(log_comb(n - 2, k - 1) + k * math.log(p)), lower)


def janson_delta(n: int, k: int, p: float) -> float:
    """``C(n-2,k-1) * sum_{t=1}^{k-1} C(k,t) C(n-2,k-1-t) p^(2k-t)``.

    Counts ordered pairs of paths sharing t >= 1 edges; it is an upper bound
    on the true Δ.
    """
    _check(n, k, p)
    if p == 0:
        return 0.0
    outer = log_comb(n - 2, k - 1)
    logp = math.log(p)
    total = 0.0
    for t in range(1, k):
        total += math.exp(
            outer + log_comb(k, t) + log_comb(n - 2, k - 1 - t) + (2 * k - t) * logp
        )
    return total


class JansonBound(NamedTuple):
    bound: float
    simplified: float
    simplified_applies: bool
    clamped: bool


def janson_probability_bound(mu: float, delta: float) -> JansonBound:
    """``e^(-mu + delta/2)`` and the simplified ``e^(-mu/2)``, valid when delta < mu.

    ``clamped`` flags a raw bound above 1; the value itself is left raw.
    """
    if mu < 0 or delta < 0:
        raise ValueError("mu and delta must be non-negative")
    bound = math.exp(-mu + delta / 2)
    return JansonBound(bound, math.exp(-mu / 2), delta < mu, bound > 1.0)


class FailureBound(NamedTuple):
    value: float
    exponent: float
    conclusive: bool


def failure_bound(n: float, k: int, r: int) -> FailureBound:
    """Markov bound ``n r e^(-(9/20) k ln n) = r n^(1 - 9k/20)`` on P[some vertex is bad].

    The bound only tends to 0 when ``1 - 9k/20 < 0``, i.e. k >= 3.
    """
    exponent = 1 - 9 * k / 20
    return FailureBound(r * n ** exponent, exponent, exponent < 0)


def bad_vertex_bound(n: float, k: int, r: int) -> float:
    """Per-vertex term ``r e^(-(9/20) k ln n) = r n^(-9k/20)``."""
    return r * n ** (-9 * k / 20)


@dataclass(frozen=True)
class JansonDiagnostics:
    n: int
    k: int
    r: int
    p: float
    threshold: float
    below_threshold: bool
    mu_exact: float
    mu_paper_lower: float
    delta_explicit: float
    janson_bound: float
    janson_simplified: float
    delta_below_mu: bool
    janson_clamped: bool
    failure_bound: float
    failure_conclusive: bool
    failure_clamped: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def diagnostics(n: int, k: int, r: int, p: Optional[float] = None, c2: float = 1.01) -> JansonDiagnostics:
    """All calculators for one (n, k, r, p); p defaults to the threshold."""
    thr = threshold_p(n, k, c2).p
    if p is None:
        p = thr
    mu = janson_mu(n, k, p)
    delta = janson_delta(n, k, p)
    jb = janson_probability_bound(mu.exact, delta)
    fb = failure_bound(n, k, r)
    return JansonDiagnostics(
        n=n, k=k, r=r, p=p,
        threshold=thr,
        below_threshold=p < thr,
        mu_exact=mu.exact,
        mu_paper_lower=mu.paper_lower,
        delta_explicit=delta,
        janson_bound=jb.bound,
        janson_simplified=jb.simplified,
        delta_below_mu=jb.simplified_applies,
        janson_clamped=jb.clamped,
        failure_bound=fb.value,
        failure_conclusive=fb.conclusive,
        failure_clamped=fb.value > 1.0,
    )
