"""Total (k,r)-domination: validity, feasibility, exact minimum and greedy.

A set S is total (k,r)-dominating when every vertex v (members of S
included) has at least r vertices of S in its open distance-k
neighbourhood N_k(v).  A vertex never dominates itself.

Internally neighbourhoods are integer bitmasks, so a dominator count is a
single ``(mask & S).bit_count()``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .graph import Graph, GraphError, neighborhood_masks


class InfeasibleError(Exception):
    """No total (k,r)-dominating set exists (some |N_k(v)| < r)."""

    def __init__(self, vertex: int, size: int, r: int):
        super().__init__(f"vertex {vertex} has |N_k| = {size} < r = {r}")
        self.vertex = vertex


class CapExceededError(Exception):
    """The exact search would need sets larger than ``size_cap``."""


_popcount = int.bit_count


def _to_mask(vertices: Iterable[int], n: int) -> int:
    mask = 0
    for v in vertices:
        if not 0 <= v < n:
            raise GraphError(f"vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


def _from_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class DominationInstance:
    graph: Graph
    k: int
    r: int
    _masks: Optional[tuple[int, ...]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 1 or self.r < 1:
            raise ValueError(f"k and r must be >= 1, got k={self.k}, r={self.r}")

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """N_k(v) as bitmasks, one per vertex."""
        if self._masks is not None:
            return self._masks
        return tuple(neighborhood_masks(self.graph, self.k))

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class DominationResult:
    witness: tuple[int, ...]
    valid: bool
    deficiency: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.witness)

    def as_dict(self) -> dict:
        return {
            "witness": list(self.witness),
            "size": self.size,
            "valid": self.valid,
            "deficiency": {v: d for v, d in enumerate(self.deficiency) if d},
        }


def dominator_count(inst: DominationInstance, S: Iterable[int], v: int) -> int:
    """|N_k(v) ∩ S|; v itself never counts."""
    if not 0 <= v < inst.n:
        raise GraphError(f"vertex {v} out of range for n={inst.n}")
    return _popcount(inst.masks[v] & _to_mask(S, inst.n))


def deficiencies(inst: DominationInstance, S: Iterable[int]) -> tuple[int, ...]:
    smask = _to_mask(S, inst.n)
    r = inst.r
    return tuple(max(0, r - _popcount(m & smask)) for m in inst.masks)


def evaluate(inst: DominationInstance, S: Iterable[int]) -> DominationResult:
    S = tuple(sorted(set(S)))
    defi = deficiencies(inst, S)
    return DominationResult(S, not any(defi), defi)


def is_total_kr_dominating(inst: DominationInstance, S: Iterable[int]) -> tuple[bool, dict[int, int]]:
    """Validity of S plus the non-zero deficiencies ``{v: r - count}``."""
    defi = deficiencies(inst, S)
    bad = {v: d for v, d in enumerate(defi) if d}
    return not bad, bad


def is_valid_mask(masks: tuple[int, ...] | list[int], smask: int, r: int) -> bool:
    for m in masks:
        if _popcount(m & smask) < r:
            return False
    return True


def feasibility(inst: DominationInstance) -> tuple[bool, Optional[int]]:
    """Whether a total (k,r)-dominating set exists, and the first vertex that prevents it."""
    for v, m in enumerate(inst.masks):
        if _popcount(m) < inst.r:
            return False, v
    return True, None


def _require_feasible(inst: DominationInstance) -> None:
    ok, v = feasibility(inst)
    if not ok:
        raise InfeasibleError(v, _popcount(inst.masks[v]), inst.r)


def exact_gamma(inst: DominationInstance, size_cap: Optional[int] = None) -> DominationResult:
    """Minimum total (k,r)-dominating set, lexicographically least among minima.

    Iterative deepening over sizes r+1, r+2, ...; at each size the subsets
    are visited in lexicographic order, so the first hit is the answer.
    Raises :class:`InfeasibleError` or :class:`CapExceededError`.
    """
    _require_feasible(inst)
    n, r = inst.n, inst.r
    cap = n if size_cap is None else size_cap
    masks = inst.masks
    for size in range(r + 1, min(cap, n) + 1):
        found = _search_size(masks, n, r, size)
        if found is not None:
            return evaluate(inst, _from_mask(found))
    raise CapExceededError(f"no witness of size <= {cap}")


def _search_size(masks: tuple[int, ...], n: int, r: int, size: int) -> Optional[int]:
    # suffix[i]: bitmask of vertices i..n-1, the candidates still available
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << i)
    # coverage[u]: how many vertices u can dominate (N_k is symmetric)
    coverage = [_popcount(m) for m in masks]
    max_cov_from = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        max_cov_from[i] = max(coverage[i], max_cov_from[i + 1])

    def dfs(start: int, chosen: int, left: int) -> Optional[int]:
        avail = suffix[start]
        total_def = 0
        for m in masks:
            need = r - _popcount(m & chosen)
            if need <= 0:
                continue
            if need > left or _popcount(m & avail) < need:
                return None
            total_def += need
        if total_def == 0:
            return chosen
        if left * max_cov_from[start] < total_def:
            return None
        for u in range(start, n - left + 1):
            hit = dfs(u + 1, chosen | (1 << u), left - 1)
            if hit is not None:
                return hit
        return None

    return dfs(0, 0, size)


def enumerate_gamma(inst: DominationInstance) -> Optional[DominationResult]:
    """Brute force over all subsets by size then lexicographic order; None if infeasible."""
    n, r = inst.n, inst.r
    masks = inst.masks
    for size in range(0, n + 1):
        for combo in combinations(range(n), size):
            smask = _to_mask(combo, n)
            if is_valid_mask(masks, smask, r):
                return evaluate(inst, combo)
    return None


def greedy_heuristic(inst: DominationInstance) -> DominationResult:
    """Add the vertex covering the most residual deficiency (ties: smallest id) until valid."""
    _require_feasible(inst)
    n, r = inst.n, inst.r
    masks = inst.masks
    chosen = 0
    need = [r] * n
    while any(need):
        best, best_gain = -1, 0
        for u in range(n):
            if chosen >> u & 1:
                continue
            # u helps exactly the vertices in N_k(u) that still need dominators
            gain = sum(1 for v in _iter_bits(masks[u]) if need[v])
            if gain > best_gain:
                best, best_gain = u, gain
        chosen |= 1 << best
        for v in _iter_bits(masks[best]):
            if need[v]:
                need[v] -= 1
    return evaluate(inst, _from_mask(chosen))


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
