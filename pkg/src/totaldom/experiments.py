"""Monte Carlo harness for the G(n, p) threshold and the large-girth construction.

Every trial draws its own seed from ``derive_seed(master_seed, index)``, so
reports are identical whatever the worker count or trial order.  Runtime is
kept out of the serialized report unless asked for.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
from typing import Callable, Optional, Sequence

import numpy as np

from .bounds import bad_vertex_bound, failure_bound, log_comb
from .construction import construct, selection_probability, theorem3_bound
from .domination import (
    CapExceededError,
    DominationInstance,
    _popcount,
    exact_gamma,
    is_valid_mask,
)
from .graph import Graph, bfs_distances, girth, min_degree
from .random_graph import GnpSpec, sample_gnp, threshold_p
from .rng import derive_seed

SCHEMA = 1
DEFAULT_ENUM_CAP = 10**6
DEFAULT_EXACT_MAX_N = 40


@dataclass
class ExperimentReport:
    kind: str
    parameters: dict
    summary: dict
    trials: list[dict] = field(default_factory=list)
    runtime_seconds: float = 0.0

    @property
    def success_frequency(self) -> Optional[float]:
        return self.summary.get("success_frequency")

    @property
    def wilson_interval(self) -> Optional[tuple[float, float]]:
        lo_hi = self.summary.get("wilson_interval")
        return None if lo_hi is None else tuple(lo_hi)

    def as_dict(self, include_runtime: bool = False, include_trials: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "kind": self.kind,
            "parameters": self.parameters,
            "summary": self.summary,
        }
        if include_trials:
            out["trials"] = self.trials
        if include_runtime:
            out["runtime_seconds"] = self.runtime_seconds
        return out

    def to_json(self, include_runtime: bool = False, include_trials: bool = True) -> str:
        return json.dumps(self.as_dict(include_runtime, include_trials), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.trials:
            writer = csv.DictWriter(buf, fieldnames=list(self.trials[0]), lineterminator="\n")
            writer.writeheader()
            for row in self.trials:
                writer.writerow({k: "" if v is None else v for k, v in row.items()})
        return buf.getvalue()


def wilson_interval(successes: int, trials: int, alpha: float = 0.05) -> tuple[float, float]:
    from statsmodels.stats.proportion import proportion_confint

    lo, hi = proportion_confint(successes, trials, alpha=alpha, method="wilson")
    # at 0 or n successes the endpoint is exact in theory but off by an ulp in floats
    freq = successes / trials
    return min(float(lo), freq), max(float(hi), freq)


def _run_trials(fn: Callable[[int], dict], trials: int, workers: int) -> list[dict]:
    if workers <= 1 or trials <= 1:
        return [fn(i) for i in range(trials)]
    chunk = max(1, trials // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(trials), chunksize=chunk))


def reach_masks(g: Graph, k: int) -> list[int]:
    """N_k(v) bitmasks via boolean powers of (A + I); same result as BFS, faster on dense graphs."""
    n = g.n
    if n == 0:
        return []
    step = np.eye(n, dtype=np.float32)
    if g.m:
        e = np.asarray(g.edges)
        step[e[:, 0], e[:, 1]] = 1.0
        step[e[:, 1], e[:, 0]] = 1.0
    reach = step.copy()
    for _ in range(k - 1):
        reach = ((reach @ step) > 0).astype(np.float32)
    bits = reach.astype(bool)
    np.fill_diagonal(bits, False)
    packed = np.packbits(bits, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _dominators_of_fixed_set(g: Graph, k: int, D: Sequence[int]) -> list[int]:
    """Per-vertex count of members of D (other than itself) within distance k."""
    counts = [0] * g.n
    for d in D:
        dist = bfs_distances(g, d, max_depth=k)
        for v, dv in enumerate(dist):
            if dv is not None and v != d:
                counts[v] += 1
    return counts


def _exists_valid_subset(masks: list[int], n: int, size: int, r: int) -> bool:
    for combo in combinations(range(n), size):
        smask = 0
        for s in combo:
            smask |= 1 << s
        # members are the likeliest violators (they cannot count themselves)
        if any(_popcount(masks[s] & smask) < r for s in combo):
            continue
        if is_valid_mask(masks, smask, r):
            return True
    return False


def _threshold_trial(index: int, *, n, k, r, p, master_seed, certify) -> dict:
    seed = derive_seed(master_seed, index)
    g = sample_gnp(GnpSpec(n, p, seed))
    counts = _dominators_of_fixed_set(g, k, range(r + 1))
    bad = sum(1 for c in counts if c < r)
    valid = bad == 0
    no_smaller = None
    gamma = None
    if certify and valid:
        masks = reach_masks(g, k)
        no_smaller = not _exists_valid_subset(masks, n, r, r)
        if no_smaller:
            gamma = r + 1
    return {
        "trial_index": index,
        "derived_seed": seed,
        "n": g.n,
        "edges": g.m,
        "fixed_set_valid": valid,
        "no_smaller_set": no_smaller,
        "gamma_exact": gamma,
        "bad_vertex_count": bad,
    }


def experiment_p(n: int, k: int, p_multiplier: float, c2: float) -> tuple[float, float]:
    thr = threshold_p(n, k, c2)
    return thr.raw, min(1.0, max(0.0, p_multiplier * thr.raw))


def run_threshold_experiment(
    n: int,
    k: int,
    r: int,
    trials: int,
    master_seed: int,
    p_multiplier: float = 1.0,
    c2: float = 1.01,
    certify: bool = True,
    enum_cap: int = DEFAULT_ENUM_CAP,
    workers: int = 1,
) -> ExperimentReport:
    """Sample G(n, p) at ``p_multiplier`` times the threshold and test D = {0..r}.

    When C(n, r) <= ``enum_cap`` every successful trial is also certified by
    enumerating all r-subsets, which pins γ at exactly r+1.
    """
    if k < 2 or r < 1 or trials < 1 or n < r + 2:
        raise ValueError("need k >= 2, r >= 1, trials >= 1 and n >= r+2")
    start = time.perf_counter()
    threshold, p = experiment_p(n, k, p_multiplier, c2)
    enum_size = math.exp(log_comb(n, r))
    cap_exceeded = certify and enum_size > enum_cap
    do_cert = certify and not cap_exceeded
    fn = partial(_threshold_trial, n=n, k=k, r=r, p=p, master_seed=master_seed, certify=do_cert)
    rows = _run_trials(fn, trials, workers)

    successes = sum(row["fixed_set_valid"] for row in rows)
    certified = sum(1 for row in rows if row["gamma_exact"] == r + 1)
    fb = failure_bound(n, k, r)
    freq = successes / trials
    summary = {
        "threshold_p": threshold,
        "p": p,
        "successes": successes,
        "success_frequency": freq,
        "wilson_interval": list(wilson_interval(successes, trials)),
        "theoretical_failure_bound": fb.value,
        "failure_bound_conclusive": fb.conclusive,
        "theoretical_success_lower": max(0.0, 1.0 - fb.value),
        "bound_consistent": freq >= 1.0 - fb.value,
        "certificate": "exact" if do_cert else ("upper bound r+1 verified" if certify else "disabled"),
        "enumeration_size": round(enum_size),
        "cap_exceeded": cap_exceeded,
        "certified_trials": certified,
        "all_successes_certified": do_cert and certified == successes,
    }
    params = {
        "n": n, "k": k, "r": r, "trials": trials, "master_seed": master_seed,
        "p_multiplier": p_multiplier, "c2": c2 if k == 2 else None, "enum_cap": enum_cap,
    }
    return ExperimentReport("threshold", params, summary, rows, time.perf_counter() - start)


def _bad_vertex_trial(index: int, *, n, k, r, p, master_seed) -> dict:
    seed = derive_seed(master_seed, index)
    g = sample_gnp(GnpSpec(n, p, seed))
    dist = bfs_distances(g, 0, max_depth=k)
    dominators = sum(1 for d in range(1, r + 1) if dist[d] is not None)
    return {
        "trial_index": index,
        "derived_seed": seed,
        "n": g.n,
        "edges": g.m,
        "dominators_of_0": dominators,
        "bad": dominators < r,
    }


def run_bad_vertex_experiment(
    n: int,
    k: int,
    r: int,
    trials: int,
    master_seed: int,
    p_multiplier: float = 1.0,
    c2: float = 1.01,
    p: Optional[float] = None,
    workers: int = 1,
) -> ExperimentReport:
    """Estimate P[vertex 0 has fewer than r members of D = {0..r} within distance k].

    ``p`` overrides the threshold-based edge probability.
    """
    if k < 2 or r < 1 or trials < 1 or n < r + 1:
        raise ValueError("need k >= 2, r >= 1, trials >= 1 and n >= r+1")
    start = time.perf_counter()
    threshold, p_thr = experiment_p(n, k, p_multiplier, c2)
    if p is None:
        p = p_thr
    elif not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    fn = partial(_bad_vertex_trial, n=n, k=k, r=r, p=p, master_seed=master_seed)
    rows = _run_trials(fn, trials, workers)

    bad = sum(row["bad"] for row in rows)
    freq = bad / trials
    analytic = bad_vertex_bound(n, k, r)
    sigma = math.sqrt(min(analytic, 1.0) * max(0.0, 1.0 - analytic) / trials)
    summary = {
        "threshold_p": threshold,
        "p": p,
        "bad_trials": bad,
        "bad_frequency": freq,
        "success_frequency": 1.0 - freq,
        "wilson_interval": list(wilson_interval(bad, trials)),
        "analytic_bad_bound": analytic,
        "analytic_sigma": sigma,
        "within_bound": freq <= analytic + 4 * sigma,
        "theoretical_failure_bound": failure_bound(n, k, r).value,
    }
    params = {
        "n": n, "k": k, "r": r, "trials": trials, "master_seed": master_seed,
        "p_multiplier": p_multiplier, "c2": c2 if k == 2 else None,
    }
    return ExperimentReport("bad-vertex", params, summary, rows, time.perf_counter() - start)


def _construction_trial(index: int, *, g, k, r, d, master_seed, masks) -> dict:
    seed = derive_seed(master_seed, index)
    inst = DominationInstance(g, k, r, _masks=masks)
    row = {"trial_index": index, "derived_seed": seed}
    for mode in ("literal", "economical"):
        tr = construct(g, k, r, seed, mode=mode, d=d, inst=inst)
        smask = 0
        for v in tr.final:
            smask |= 1 << v
        row[f"{mode}_size"] = len(tr.final)
        row[f"{mode}_valid"] = is_valid_mask(masks, smask, r)
        if mode == "literal":
            row["S_size"] = len(tr.S)
            row["bad_vertex_count"] = len(tr.bad_vertices)
            row["vertex0_bad"] = 0 in tr.bad_vertices
    return row


def run_construction_sweep(
    g: Graph,
    k: int,
    r: int,
    seeds: int,
    master_seed: int,
    d: Optional[int] = None,
    exact: bool = True,
    exact_max_n: int = DEFAULT_EXACT_MAX_N,
    name: Optional[str] = None,
    workers: int = 1,
) -> ExperimentReport:
    """Run both construction modes over many seeds and compare with the bound and the exact optimum."""
    start = time.perf_counter()
    inst = DominationInstance(g, k, r)
    masks = inst.masks
    actual_d = min_degree(g)
    d_used = actual_d if d is None else d
    fn = partial(_construction_trial, g=g, k=k, r=r, d=d, master_seed=master_seed, masks=masks)
    rows = _run_trials(fn, seeds, workers)

    gamma = None
    exact_status = "skipped"
    if exact and g.n <= exact_max_n:
        try:
            gamma = exact_gamma(inst).size
            exact_status = "solved"
        except CapExceededError:
            exact_status = "cap-exceeded"

    g_girth = girth(g)
    summary = {
        "n": g.n,
        "min_degree": actual_d,
        "d_used": d_used,
        "girth": None if math.isinf(g_girth) else g_girth,
        "hypotheses_hold": g_girth >= 2 * k + 1 and d_used >= 2,
        "p_used": selection_probability(d_used, k, r)[0],
        "theorem3_bound": theorem3_bound(g.n, d_used, k, r),
        "gamma_exact": gamma,
        "exact_status": exact_status,
        "all_valid": all(row["literal_valid"] and row["economical_valid"] for row in rows),
        "economical_le_literal": all(row["economical_size"] <= row["literal_size"] for row in rows),
        "vertex0_bad_frequency": sum(row["vertex0_bad"] for row in rows) / seeds,
    }
    for mode in ("literal", "economical"):
        sizes = [row[f"{mode}_size"] for row in rows]
        summary[mode] = {"mean": sum(sizes) / seeds, "min": min(sizes), "max": max(sizes)}
    summary["success_frequency"] = sum(
        row["literal_valid"] and row["economical_valid"] for row in rows
    ) / seeds
    if gamma is not None:
        summary["exact_le_all_constructions"] = all(
            gamma <= min(row["literal_size"], row["economical_size"]) for row in rows
        )
    params = {"graph": name, "k": k, "r": r, "seeds": seeds, "master_seed": master_seed, "d": d}
    return ExperimentReport("construction", params, summary, rows, time.perf_counter() - start)
