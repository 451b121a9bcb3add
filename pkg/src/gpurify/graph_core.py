"""Labeled simple graphs on up to 32 vertices stored as neighbor bitsets.

Besides the container itself this module provides the combinatorial
operations used throughout the package: local-reconstructibility (LR)
witnesses, local complementation and its orbits, canonical forms for
isomorphism testing, Z-measurement vertex deletion and two-colorings.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 32
CANONICAL_MAX_VERTICES = 16


class GraphError(ValueError):
    """Invalid graph construction or vertex argument."""


class GraphSpecError(GraphError):
    """Malformed graph-spec string; ``position`` is the offending column."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.reason = message
        self.text = text
        self.position = position
        if text:
            message = f"{message} (at column {position + 1} of {text!r})"
        super().__init__(message)


class OrbitLimitError(RuntimeError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbor bitset of ``v``.

    ``label`` records the named constructor that produced the graph (e.g.
    ``"grid:3x3"``) and does not take part in equality.
    """

    n: int
    adj: tuple[int, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbor out of range")
            if nb >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in _bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], label: str | None = None) -> Graph:
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), label)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(popcount(a) for a in self.adj)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees) // 2

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def permute(self, perm: Sequence[int]) -> Graph:
        """Relabel vertex ``v`` as ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("not a permutation of the vertex set")
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")


@dataclass(frozen=True)
class Bipartition:
    """Party A as a vertex bitset; party B is the complement."""

    n: int
    mask: int

    def __post_init__(self):
        if not 0 < popcount(self.mask) < self.n or self.mask >> self.n:
            raise GraphError(f"mask {self.mask:#x} is not a nontrivial bipartition of {self.n} vertices")

    @property
    def side_a(self) -> list[int]:
        return list(_bits(self.mask))

    @property
    def side_b(self) -> list[int]:
        return list(_bits(~self.mask & ((1 << self.n) - 1)))

    def crossing_edges(self, g: Graph) -> list[tuple[int, int]]:
        return [(u, v) for u, v in g.edges if (self.mask >> u & 1) != (self.mask >> v & 1)]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    edges: tuple[tuple[int, int], ...]

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)


# ---------------------------------------------------------------------------
# named constructors


def _icosahedron() -> list[tuple[int, int]]:
    # 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom
    edges = []
    for i in range(5):
        up, up_next = 1 + i, 1 + (i + 1) % 5
        lo, lo_next = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, up_next), (lo, lo_next), (11, lo), (up, lo), (up_next, lo)]
    return edges


def parse_edge_file(path: str | Path) -> Graph:
    """Read ``N`` on the first data line, then one ``u v`` pair per line."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphError(f"cannot read graph file {path}: {exc}") from exc
    n = None
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"{path}:{lineno}: expected integers, got {raw!r}") from None
        if n is None:
            if len(nums) != 1:
                raise GraphError(f"{path}:{lineno}: first line must hold the vertex count")
            n = nums[0]
            continue
        if len(nums) != 2:
            raise GraphError(f"{path}:{lineno}: expected 'u v', got {raw!r}")
        key = (min(nums), max(nums))
        if key in seen:
            raise GraphError(f"{path}:{lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    if n is None:
        raise GraphError(f"{path}: empty graph file")
    return Graph.from_edges(n, edges, label=f"file:{path}")


def _int_param(text: str, spec: str, offset: int) -> int:
    try:
        value = int(text)
    except ValueError:
        raise GraphSpecError(f"expected an integer, got {text!r}", spec, offset) from None
    if not 1 <= value <= MAX_VERTICES:
        raise GraphSpecError(f"size {value} outside 1..{MAX_VERTICES}", spec, offset)
    return value


def make_named(spec: str) -> Graph:
    """Build a graph from ``name[:params]`` or ``file:PATH``.

    Recognised names: ``chain:N``, ``cycle:N``, ``star:N`` (vertex 0 is the
    hub), ``complete:N``, ``grid:AxB``, ``pentagon``, ``icosahedron`` and
    ``file:PATH``.
    """
    spec = spec.strip()
    name, sep, param = spec.partition(":")
    name = name.lower()
    offset = len(name) + len(sep)
    if name == "file":
        if not param:
            raise GraphSpecError("file: needs a path", spec, offset)
        return parse_edge_file(param)
    if name in ("pentagon", "icosahedron"):
        if sep:
            raise GraphSpecError(f"{name} takes no parameters", spec, offset)
        if name == "pentagon":
            return Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)], label=spec)
        return Graph.from_edges(12, _icosahedron(), label=spec)
    if name == "grid":
        dims = param.lower().split("x")
        if len(dims) != 2:
            raise GraphSpecError("grid needs AxB", spec, offset)
        a = _int_param(dims[0], spec, offset)
        b = _int_param(dims[1], spec, offset + len(dims[0]) + 1)
        if a * b > MAX_VERTICES:
            raise GraphSpecError(f"grid {a}x{b} exceeds {MAX_VERTICES} vertices", spec, offset)
        edges = []
        for r in range(a):
            for c in range(b):
                v = r * b + c
                if c + 1 < b:
                    edges.append((v, v + 1))
                if r + 1 < a:
                    edges.append((v, v + b))
        return Graph.from_edges(a * b, edges, label=spec)
    if name in ("chain", "cycle", "star", "complete"):
        if not sep:
            raise GraphSpecError(f"{name} needs a size, e.g. {name}:4", spec, len(name))
        n = _int_param(param, spec, offset)
        if name == "chain":
            edges = [(i, i + 1) for i in range(n - 1)]
        elif name == "cycle":
            if n < 3:
                raise GraphSpecError("cycle needs at least 3 vertices", spec, offset)
            edges = [(i, (i + 1) % n) for i in range(n)]
        elif name == "star":
            edges = [(0, i) for i in range(1, n)]
        else:
            edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
        return Graph.from_edges(n, edges, label=spec)
    raise GraphSpecError(f"unknown graph name {name!r}", spec, 0)


# ---------------------------------------------------------------------------
# LR classification


def components(g: Graph) -> list[int]:
    """Vertex bitsets of the connected components, ordered by lowest vertex."""
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp, frontier = 1 << v, 1 << v
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def _component_cut(adj: Sequence[int], comp: int) -> int | None:
    """A-side of a split of ``comp`` with at most one crossing edge per vertex."""
    verts = list(_bits(comp))
    # the last vertex of the component always stays on side B
    for sub in range(1, 1 << (len(verts) - 1)):
        mask = sum(1 << verts[k] for k in range(len(verts)) if sub >> k & 1)
        rest = comp ^ mask
        for v in verts:
            x = adj[v] & (rest if mask >> v & 1 else mask)
            if x & (x - 1):
                break
        else:
            return mask
    return None


def lr_witness(g: Graph) -> Bipartition | None:
    """Return a bipartition where every vertex has at most one crossing edge.

    Each component with an edge must be split on its own; isolated vertices
    carry no constraint. The edgeless graph gets the split ``{0} | rest``.
    Connectivity is not required.
    """
    n = g.n
    if n < 2:
        raise GraphError("LR classification needs at least two vertices")
    mask = 0
    for comp in components(g):
        if comp & (comp - 1) == 0:
            continue
        cut = _component_cut(g.adj, comp)
        if cut is None:
            return None
        mask |= cut
    return Bipartition(n, mask or 1)


def is_lr(g: Graph) -> bool:
    return lr_witness(g) is not None


def is_lr_bipartition(g: Graph, part: Bipartition) -> bool:
    full = (1 << g.n) - 1
    for v in range(g.n):
        other = (full ^ part.mask) if part.mask >> v & 1 else part.mask
        if popcount(g.adj[v] & other) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# local operations


def local_complement(g: Graph, v: int) -> Graph:
    """Toggle every edge between neighbors of ``v``."""
    g._check_vertex(v)
    nb = g.adj[v]
    adj = list(g.adj)
    for u in _bits(nb):
        adj[u] ^= nb & ~(1 << u)
    return Graph(g.n, tuple(adj))


def z_delete(g: Graph, v: int) -> Graph:
    """Remove ``v`` and its edges; later vertices shift down by one."""
    g._check_vertex(v)
    if g.n == 1:
        raise GraphError("cannot delete the only vertex")
    low = (1 << v) - 1
    adj = []
    for u in range(g.n):
        if u == v:
            continue
        nb = g.adj[u]
        adj.append((nb & low) | ((nb >> (v + 1)) << v))
    return Graph(g.n - 1, tuple(adj))


def two_coloring(g: Graph) -> tuple[list[int], list[int]] | None:
    """BFS 2-coloring with vertex 0 (and each component's smallest vertex) in A."""
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in _bits(g.adj[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return [v for v in range(g.n) if color[v] == 0], [v for v in range(g.n) if color[v] == 1]


# ---------------------------------------------------------------------------
# canonical labeling


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple(popcount(adj[v] & m) for m in masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) > 1:
                changed = True
                out.extend([v for v in cell if sig[v] == k] for k in keys)
            else:
                out.append(cell)
        cells = out
        if not changed:
            return cells


def _leaf_code(adj: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    return tuple(sum(1 << pos[u] for u in _bits(adj[v])) for v in order)


def canonical(g: Graph) -> CanonicalForm:
    """Isomorphism-invariant form via color refinement and backtracking.

    The search individualizes vertices of the first non-singleton cell,
    keeps the lexicographically smallest relabeled adjacency, and prunes
    children equivalent under automorphisms found at matching leaves.
    """
    if g.n > CANONICAL_MAX_VERTICES:
        raise GraphError(f"canonical form limited to {CANONICAL_MAX_VERTICES} vertices")
    adj = g.adj
    best: list = [None, None]
    leaves: dict[tuple[int, ...], list[int]] = {}
    autos: list[dict[int, int]] = []

    def search(cells: list[list[int]], prefix: list[int]) -> None:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _leaf_code(adj, order)
            first = leaves.get(code)
            if first is None:
                leaves[code] = order
            else:
                autos.append({a: b for a, b in zip(first, order)})
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[target]
        done: list[int] = []
        for v in sorted(cell):
            if any(v in _same_orbit(cell, autos, prefix, w) for w in done):
                continue
            done.append(v)
            rest = [w for w in cell if w != v]
            nxt = cells[:target] + [[v], rest] + cells[target + 1 :]
            search(_refine(adj, nxt), prefix + [v])

    search(_refine(adj, [list(range(g.n))]), [])
    code = best[0]
    edges = tuple((i, j) for i in range(g.n) for j in _bits(code[i]) if i < j)
    return CanonicalForm(g.n, edges)


def _same_orbit(cell, autos, fixed, w) -> set[int]:
    # orbit of w within cell under the automorphisms fixing the prefix pointwise
    reps: dict[int, set[int]] = {}
    parent = {v: v for v in cell}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in autos:
        if any(gamma[p] != p for p in fixed):
            continue
        for v in cell:
            u = gamma[v]
            if u in parent:
                parent[find(v)] = find(u)
    root = find(w)
    for v in cell:
        reps.setdefault(find(v), set()).add(v)
    return reps[root]


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges == h.num_edges and canonical(g) == canonical(h)


# ---------------------------------------------------------------------------
# local-complementation orbits


@dataclass
class LCOrbit:
    classes: frozenset[CanonicalForm]
    labeled_size: int | None

    @property
    def class_count(self) -> int:
        return len(self.classes)


def lc_orbit(g: Graph, up_to_iso: bool = True, cap: int = 10**6) -> LCOrbit:
    """Closure of ``g`` under local complementation at every vertex.

    The isomorphism-class orbit is always computed. With ``up_to_iso=False``
    the labeled orbit is also enumerated (bounded by ``cap``) and its size
    reported; otherwise ``labeled_size`` is ``None``.
    """
    if g.n > CANONICAL_MAX_VERTICES:
        raise GraphError(f"orbit computations limited to {CANONICAL_MAX_VERTICES} vertices")
    start = canonical(g)
    classes = {start}
    queue = deque([start.to_graph()])
    while queue:
        h = queue.popleft()
        for v in range(h.n):
            c = canonical(local_complement(h, v))
            if c not in classes:
                classes.add(c)
                if len(classes) > cap:
                    raise OrbitLimitError(f"LC orbit exceeds {cap} classes")
                queue.append(c.to_graph())
    labeled = None
    if not up_to_iso:
        labeled = labeled_lc_orbit_size(g, cap)
    return LCOrbit(frozenset(classes), labeled)


def labeled_lc_orbit_size(g: Graph, cap: int = 10**6) -> int:
    seen = {g.adj}
    queue = deque([g.adj])
    n = g.n
    while queue:
        adj = queue.popleft()
        for v in range(n):
            nb = adj[v]
            new = list(adj)
            for u in _bits(nb):
                new[u] ^= nb & ~(1 << u)
            key = tuple(new)
            if key not in seen:
                seen.add(key)
                if len(seen) > cap:
                    raise OrbitLimitError(f"labeled LC orbit exceeds {cap} graphs")
                queue.append(key)
    return len(seen)


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)
