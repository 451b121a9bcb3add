"""Exhaustive statistics of locally reconstructible (LR) graphs.

Labeled graphs on ``N`` vertices are indexed by an edge bitmask whose bit
``e`` is the ``e``-th pair ``(i, j)``, ``i < j``, in lexicographic order.
The LR test is evaluated for a whole block of indices at once with numpy.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .graph_core import CanonicalForm, Graph, canonical, is_lr, local_complement

MAX_CENSUS_N = 7
DEFAULT_THREADS = 4


class CensusError(ValueError):
    pass


def edge_index(n: int) -> dict[tuple[int, int], int]:
    return {e: k for k, e in enumerate(combinations(range(n), 2))}


def graph_from_index(n: int, gid: int) -> Graph:
    return Graph.from_edges(n, [e for e, k in edge_index(n).items() if gid >> k & 1])


def _crossing_masks(n: int) -> list[list[int]]:
    """For each bipartition (vertex ``n-1`` in B), one edge mask per vertex."""
    idx = edge_index(n)
    out = []
    for mask in range(1, 1 << (n - 1)):
        per_vertex = []
        for v in range(n):
            m = 0
            for w in range(n):
                if w != v and (mask >> v & 1) != (mask >> w & 1):
                    m |= 1 << idx[min(v, w), max(v, w)]
            per_vertex.append(m)
        out.append(per_vertex)
    return out


def _count_block(n: int, lo: int, hi: int, masks: list[list[int]]) -> int:
    """LR graphs with ids in ``[lo, hi)``.

    A graph counts when every component with an edge is split by some
    bipartition giving each of its vertices at most one crossing edge.
    """
    idx = edge_index(n)
    ids = np.arange(lo, hi, dtype=np.int64)
    adj = []
    for v in range(n):
        a = np.zeros_like(ids)
        for w in range(n):
            if w != v:
                a |= ((ids >> idx[min(v, w), max(v, w)]) & 1) << w
        adj.append(a)
    comp = [a | (1 << v) for v, a in enumerate(adj)]
    # path doubling: after k rounds comp[v] holds everything within 2**k hops
    for _ in range(max(1, (n - 1).bit_length())):
        grown = []
        for v in range(n):
            c = comp[v].copy()
            for u in range(n):
                if u != v:
                    c |= comp[u] & -((comp[v] >> u) & 1)
            grown.append(c)
        comp = grown
    covered = [a == 0 for a in adj]
    full = (1 << n) - 1
    for mask, per_vertex in zip(range(1, 1 << (n - 1)), masks):
        bad = np.zeros_like(ids)
        for v, m in enumerate(per_vertex):
            x = ids & m
            bad |= ((x & (x - 1)) != 0).astype(np.int64) << v
        for v in range(n):
            c = comp[v]
            covered[v] |= ((c & bad) == 0) & ((c & mask) != 0) & ((c & (full ^ mask)) != 0)
    ok = covered[0]
    for v in range(1, n):
        ok &= covered[v]
    return int(ok.sum())


def lr_count_labeled(n: int, threads: int = DEFAULT_THREADS, shards: int | None = None) -> int:
    """Number of labeled graphs on ``n`` vertices with an LR bipartition."""
    if n < 2:
        raise CensusError("need at least two vertices")
    total = 1 << math.comb(n, 2)
    masks = _crossing_masks(n)
    shards = shards or max(1, threads) * 4
    shards = min(shards, total)
    bounds = [total * k // shards for k in range(shards + 1)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        parts = pool.map(lambda k: _count_block(n, bounds[k], bounds[k + 1], masks), range(shards))
        return sum(parts)


# ---------------------------------------------------------------------------
# estimates


def p_q(n: int, q: int) -> Fraction:
    """Probability that a fixed ``q``-vs-rest split of a random graph is LR."""
    if not 1 <= q <= n // 2:
        raise CensusError("need 1 <= q <= N/2")
    s = sum(math.comb(q, b) * math.comb(n - q, b) * math.factorial(b) for b in range(q + 1))
    return Fraction(s, 2 ** (q * (n - q)))


def P_q(n: int, q: int) -> float:
    """Chance that at least one of the ``C(N, q)`` size-``q`` splits is LR, treating them as independent."""
    return 1 - (1 - float(p_q(n, q))) ** math.comb(n, q)


def P_estimate(n: int) -> tuple[float, float]:
    """``1 - (1 - P)**(N/2)`` with the smallest and the largest ``P_q``."""
    vals = [P_q(n, q) for q in range(1, n // 2 + 1)]
    return 1 - (1 - min(vals)) ** (n / 2), 1 - (1 - max(vals)) ** (n / 2)


def ratio_bounds(n: int) -> tuple[Fraction, Fraction]:
    """``(N-1)/2**(N-1) <= |LR_N|/|G_N| <= N**3/2**N``; the upper value may exceed 1."""
    return Fraction(n - 1, 2 ** (n - 1)), Fraction(n**3, 2**n)


@dataclass
class CensusReport:
    n: int
    lr_count: int
    total: int
    p_q: dict[int, float]
    P_q: dict[int, float]
    P_estimate: tuple[float, float]
    ratio_bounds: tuple[float, float]
    wall_time: float
    threads: int

    @property
    def ratio(self) -> float:
        return self.lr_count / self.total

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "lr": self.lr_count,
            "total": self.total,
            "ratio": self.ratio,
            "p_q": {str(k): v for k, v in self.p_q.items()},
            "P_q": {str(k): v for k, v in self.P_q.items()},
            "P_estimate": list(self.P_estimate),
            "ratio_bounds": list(self.ratio_bounds),
            "wall_time_s": self.wall_time,
            "threads": self.threads,
        }


def count_lr(n: int, threads: int = DEFAULT_THREADS, allow_large: bool = False) -> CensusReport:
    if n < 2 or (n > MAX_CENSUS_N and not allow_large):
        raise CensusError(f"census supports 2 <= N <= {MAX_CENSUS_N}")
    t0 = time.perf_counter()
    count = lr_count_labeled(n, threads)
    wall = time.perf_counter() - t0
    qs = range(1, n // 2 + 1)
    lo, hi = ratio_bounds(n)
    return CensusReport(
        n,
        count,
        1 << math.comb(n, 2),
        {q: float(p_q(n, q)) for q in qs},
        {q: P_q(n, q) for q in qs},
        P_estimate(n),
        (float(lo), float(hi)),
        wall,
        threads,
    )


# ---------------------------------------------------------------------------
# isomorphism classes


def connected_classes(max_n: int, max_degree: int | None = None) -> dict[int, list[CanonicalForm]]:
    """Connected isomorphism classes for each ``n <= max_n``.

    Every connected graph has a vertex whose removal leaves it connected, so
    joining a new vertex to nonempty neighbor sets of each smaller class
    reaches all classes. A degree cap survives this removal too.
    """
    levels = {1: [canonical(Graph(1, (0,)))]}
    for n in range(1, max_n):
        seen: set[CanonicalForm] = set()
        for cf in levels[n]:
            g = cf.to_graph()
            free = [v for v in range(n) if max_degree is None or g.degree(v) < max_degree]
            limit = len(free) if max_degree is None else min(len(free), max_degree)
            for k in range(1, limit + 1):
                for nbrs in combinations(free, k):
                    edges = g.edges + [(v, n) for v in nbrs]
                    seen.add(canonical(Graph.from_edges(n + 1, edges)))
        levels[n + 1] = sorted(seen)
    return levels


@dataclass
class CoverageReport:
    max_n: int
    classes: int
    per_n: dict[int, int]
    violators: list[CanonicalForm] = field(default_factory=list)
    wall_time: float = 0.0


def _lc_components(forms: list[CanonicalForm]) -> dict[CanonicalForm, CanonicalForm]:
    parent = {f: f for f in forms}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in forms:
        g = f.to_graph()
        for v in range(g.n):
            h = canonical(local_complement(g, v))
            a, b = find(f), find(h)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {f: find(f) for f in forms}


def lc_lr_coverage(max_n: int = 7) -> CoverageReport:
    """Check that each connected class on 2..max_n vertices is LC-equivalent to an LR graph.

    The class set of a given size is closed under local complementation, so
    orbits are the connected components of the LC move graph.
    """
    t0 = time.perf_counter()
    levels = connected_classes(max_n)
    report = CoverageReport(max_n, 0, {})
    for n in range(2, max_n + 1):
        forms = levels[n]
        report.per_n[n] = len(forms)
        report.classes += len(forms)
        root = _lc_components(forms)
        good = {root[f] for f in forms if is_lr(f.to_graph())}
        report.violators += [f for f in forms if root[f] not in good]
    report.classes += len(levels[1])
    report.per_n[1] = len(levels[1])
    report.wall_time = time.perf_counter() - t0
    return report


def degree3_nonlr_catalog(max_n: int) -> list[CanonicalForm]:
    """Connected non-LR classes with maximum degree at most 3 and ``n <= max_n``."""
    levels = connected_classes(max_n, max_degree=3)
    return [f for n in range(2, max_n + 1) for f in levels[n] if not is_lr(f.to_graph())]
