"""Immutable undirected simple graphs with BFS distance queries.

Vertices are ``0..n-1``.  Distances to vertices in another component are
reported as :data:`UNREACHABLE` (``None``); girth of a forest and diameter of
a disconnected graph are ``math.inf``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

UNREACHABLE = None
INFINITE = math.inf


class GraphError(ValueError):
    """Invalid graph input (bad endpoint, self-loop, malformed file)."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    duplicates_dropped: int = 0

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adjacency[u]
        # adjacency lists are sorted
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Validate ``edge_list`` and build an immutable graph on ``n`` vertices.

    Duplicate pairs (in either orientation) are collapsed and counted in
    ``Graph.duplicates_dropped``.  Self-loops and out-of-range endpoints raise
    :class:`GraphError` naming the offending pair.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    seen: set[tuple[int, int]] = set()
    dups = 0
    for u, v in edge_list:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in edge ({u}, {v}) for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            dups += 1
        else:
            seen.add(key)
    edges = tuple(sorted(seen))
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return Graph(n, edges, tuple(tuple(sorted(a)) for a in adj), dups)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def bfs_distances(g: Graph, source: int, max_depth: Optional[int] = None) -> list[Optional[int]]:
    """Unweighted shortest-path distances from ``source``.

    With ``max_depth`` the search stops expanding at that depth and farther
    vertices are reported as UNREACHABLE.
    """
    _check_vertex(g, source)
    dist: list[Optional[int]] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u]
        if max_depth is not None and du >= max_depth:
            continue
        for w in adj[u]:
            if dist[w] is None:
                dist[w] = du + 1
                queue.append(w)
    return dist


def k_neighborhood(g: Graph, v: int, k: int) -> frozenset[int]:
    """Open distance-k neighbourhood ``{u != v : d(u, v) <= k}``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    dist = bfs_distances(g, v, max_depth=k)
    return frozenset(u for u, d in enumerate(dist) if d is not None and u != v)


def neighborhood_masks(g: Graph, k: int) -> list[int]:
    """N_k(v) for every vertex, as integer bitmasks (bit u set iff u in N_k(v))."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    masks = []
    for v in range(g.n):
        dist = bfs_distances(g, v, max_depth=k)
        mask = 0
        for u, d in enumerate(dist):
            if d is not None and u != v:
                mask |= 1 << u
        masks.append(mask)
    return masks


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or ``math.inf`` for a forest.

    BFS from every root; a non-tree edge (u, w) closes a walk of length
    dist[u] + dist[w] + 1 through the root, and the minimum over all roots is
    the girth.
    """
    best = INFINITE
    adj = g.adjacency
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            # nothing shorter can be found deeper in this tree
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("min_degree of the empty graph is undefined")
    return min(len(a) for a in g.adjacency)


def eccentricity(g: Graph, v: int) -> float:
    dist = bfs_distances(g, v)
    if any(d is None for d in dist):
        return INFINITE
    return max(dist)


def diameter(g: Graph) -> float:
    if g.n == 0:
        raise GraphError("diameter of the empty graph is undefined")
    return max(eccentricity(g, v) for v in range(g.n))


def lcf_graph(exponents: Sequence[int], repeats: int) -> Graph:
    """Cubic Hamiltonian graph from LCF notation ``[exponents]^repeats``."""
    if repeats < 1 or not exponents:
        raise GraphError("LCF notation needs a non-empty jump list and repeats >= 1")
    n = len(exponents) * repeats
    if n < 4 or n % 2:
        raise GraphError(f"LCF graph must have an even number (>= 4) of vertices, got {n}")
    cycle = {(i, (i + 1) % n) for i in range(n)}
    cycle = {(min(e), max(e)) for e in cycle}
    chords: set[tuple[int, int]] = set()
    for i in range(n):
        jump = exponents[i % len(exponents)]
        j = (i + jump) % n
        if j == i:
            raise GraphError(f"jump {jump} at position {i} is 0 mod {n}")
        e = (min(i, j), max(i, j))
        if e in cycle:
            raise GraphError(f"chord {e} from jump {jump} collides with a cycle edge")
        chords.add(e)
    g = build_graph(n, sorted(cycle | chords))
    if any(d != 3 for d in g.degrees()):
        raise GraphError("LCF jumps are inconsistent: result is not 3-regular")
    return g


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


def heawood_graph() -> Graph:
    return lcf_graph([5, -5], 7)


def mcgee_graph() -> Graph:
    return lcf_graph([12, 7, -7], 8)


def tutte_coxeter_graph() -> Graph:
    return lcf_graph([-13, -9, 7, -7, 9, 13], 5)


CAGES = {
    "petersen": petersen_graph,
    "heawood": heawood_graph,
    "mcgee": mcgee_graph,
    "tutte-coxeter": tutte_coxeter_graph,
}


def named_graph(name: str) -> Optional[Graph]:
    """Resolve a fixture name (``petersen``, ``k5``, ``c6``, ``p3``...) or return None."""
    key = name.lower()
    if key in CAGES:
        return CAGES[key]()
    if len(key) > 1 and key[0] in "kcp" and key[1:].isdigit():
        size = int(key[1:])
        return {"k": complete_graph, "c": cycle_graph, "p": path_graph}[key[0]](size)
    return None


# -- edge-list text format ---------------------------------------------------

def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, source: str = "<string>") -> Graph:
    header: Optional[tuple[int, int]] = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"{source}:{lineno}: expected two integers, got {raw.strip()!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphError(f"{source}:{lineno}: negative header values")
            header = (a, b)
            continue
        if len(pairs) >= header[1]:
            raise GraphError(f"{source}:{lineno}: more edge lines than the declared m={header[1]}")
        try:
            _ = build_graph(header[0], [(a, b)])
        except GraphError as exc:
            raise GraphError(f"{source}:{lineno}: {exc}") from None
        pairs.append((a, b))
    if header is None:
        raise GraphError(f"{source}: missing 'n m' header")
    if len(pairs) != header[1]:
        raise GraphError(f"{source}: declared m={header[1]} but found {len(pairs)} edge lines")
    return build_graph(header[0], pairs)


def read_edge_list(path: str | Path) -> Graph:
    path = Path(path)
    return parse_edge_list(path.read_text(), source=str(path))


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))


def load_graph(spec: str) -> Graph:
    """A named fixture if ``spec`` is one, otherwise an edge-list file path."""
    g = named_graph(spec)
    return g if g is not None else read_edge_list(spec)
