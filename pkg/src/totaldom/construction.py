"""Randomized construction for graphs of large girth and its expected-size bound.

Pick each vertex independently with probability ``p = min(1, 2r/(d-1)^k)``,
then repair every vertex with fewer than r picked vertices in N_k(v) by
adding vertices of N_k(v).  Repair order is ascending vertex id and repair
vertices are the smallest ids available, so a seed fixes the output.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Literal, Optional

import numpy as np

from .domination import DominationInstance, InfeasibleError, _from_mask, _popcount, feasibility
from .graph import Graph, min_degree
from .rng import STREAM_VERTEX, keyed_uniforms

Mode = Literal["literal", "economical"]


class ChernoffNotApplicable(ValueError):
    """The lower-tail bound needs ``p * m > r``."""


@dataclass(frozen=True)
class ConstructionTrace:
    k: int
    r: int
    d: int
    seed: int
    mode: str
    p_used: float
    p_clamped: bool
    S: tuple[int, ...]
    bad_vertices: tuple[int, ...]
    A: tuple[int, ...]
    final: tuple[int, ...]

    @property
    def sizes(self) -> dict[str, int]:
        return {
            "S": len(self.S),
            "bad": len(self.bad_vertices),
            "A": len(self.A),
            "final": len(self.final),
        }

    def as_dict(self) -> dict:
        out = asdict(self)
        for key in ("S", "bad_vertices", "A", "final"):
            out[key] = list(out[key])
        out["sizes"] = self.sizes
        return out

    CSV_FIELDS = ("seed", "mode", "k", "r", "d", "p_used", "S", "bad", "A", "final")

    def csv_row(self) -> dict:
        s = self.sizes
        return {
            "seed": self.seed, "mode": self.mode, "k": self.k, "r": self.r, "d": self.d,
            "p_used": self.p_used, "S": s["S"], "bad": s["bad"], "A": s["A"], "final": s["final"],
        }


def selection_probability(d: int, k: int, r: int) -> tuple[float, bool]:
    raw = 2 * r / (d - 1) ** k
    return min(raw, 1.0), raw > 1.0


def construct(
    g: Graph,
    k: int,
    r: int,
    seed: int,
    mode: Mode = "literal",
    d: Optional[int] = None,
    inst: Optional[DominationInstance] = None,
) -> ConstructionTrace:
    """Run the random-selection-plus-repair construction once.

    ``d`` defaults to the graph's minimum degree; passing a smaller value
    weakens p on purpose.  In ``literal`` mode each bad vertex contributes
    its r smallest-id k-neighbours; in ``economical`` mode only the shortfall
    is topped up, counting vertices already chosen (S and earlier repairs).
    """
    if mode not in ("literal", "economical"):
        raise ValueError(f"unknown mode {mode!r}")
    if inst is None:
        inst = DominationInstance(g, k, r)
    ok, bad_v = feasibility(inst)
    if not ok:
        raise InfeasibleError(bad_v, _popcount(inst.masks[bad_v]), r)
    actual_d = min_degree(g)
    if d is None:
        d = actual_d
    elif d > actual_d:
        raise ValueError(f"d={d} exceeds the minimum degree {actual_d}")
    if d < 2:
        raise ValueError(f"construction needs minimum degree d >= 2, got {d}")

    p, clamped = selection_probability(d, k, r)
    u01 = keyed_uniforms(seed, STREAM_VERTEX, np.arange(g.n, dtype=np.uint64))
    S = 0
    for v in np.flatnonzero(u01 < p).tolist():
        S |= 1 << v

    masks = inst.masks
    bad = [v for v, m in enumerate(masks) if _popcount(m & S) < r]
    A = 0
    for v in bad:
        nbrs = masks[v]
        if mode == "literal":
            want, pool = r, nbrs
        else:
            want = r - _popcount(nbrs & (S | A))
            pool = nbrs & ~(S | A)
        while want > 0 and pool:
            low = pool & -pool
            A |= low
            pool ^= low
            want -= 1

    return ConstructionTrace(
        k=k, r=r, d=d, seed=seed, mode=mode,
        p_used=p, p_clamped=clamped,
        S=_from_mask(S), bad_vertices=tuple(bad), A=_from_mask(A), final=_from_mask(S | A),
    )


def theorem3_bound(n: int, d: int, k: int, r: int) -> float:
    """Upper bound ``2nr/(d-1)^k + n r e^(-r/4)`` on the minimum set size."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return 2 * n * r / (d - 1) ** k + n * r * math.exp(-r / 4)


def chernoff_tail(p: float, m: int, r: int) -> float:
    """Bound ``e^(-eps^2 p m / 2)`` on P[Bin(m, p) < r], with ``eps = 1 - r/(pm)``."""
    pm = p * m
    if pm <= r:
        raise ChernoffNotApplicable(f"p*m = {pm} must exceed r = {r}")
    eps = 1 - r / pm
    return math.exp(-eps * eps * pm / 2)
