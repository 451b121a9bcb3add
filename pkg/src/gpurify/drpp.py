"""Divide-and-rebuild purification: reduce to one Bell pair per edge.

Measuring every other qubit in the Z basis leaves each edge as a two-qubit
diagonal state whose weights are the syndrome marginal. Such a pair can be
purified iff its largest weight exceeds one half.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .diag_state import DiagonalState, NoiseSpec, from_noise, marginalize_to
from .graph_core import Graph

ROOT_XTOL = 1e-13


class DrppError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TwoQubitDiag:
    """Weights ``lam[a + 2*b]`` where ``a`` is the first qubit's syndrome bit."""

    lam: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=float)
        if lam.shape != (4,) or np.any(lam < -1e-12):
            raise DrppError("pair state needs four nonnegative weights")
        lam = np.clip(lam, 0, None)
        total = lam.sum()
        if not total > 0:
            raise DrppError("pair weights sum to zero")
        object.__setattr__(self, "lam", lam / total)

    @classmethod
    def from_entries(cls, l00: float, l01: float, l10: float, l11: float) -> TwoQubitDiag:
        """Build from ``lam_ab`` where ``a`` belongs to the first qubit."""
        return cls(np.array([l00, l10, l01, l11]))

    @property
    def entries(self) -> tuple[float, float, float, float]:
        """``(lam_00, lam_01, lam_10, lam_11)``."""
        l = self.lam
        return float(l[0]), float(l[2]), float(l[1]), float(l[3])

    @property
    def max_element(self) -> float:
        return float(self.lam.max())

    def as_state(self) -> DiagonalState:
        return DiagonalState(2, self.lam)


def reduce_to_edge(s: DiagonalState, edge: tuple[int, int]) -> TwoQubitDiag:
    u, v = edge
    if u == v or not (0 <= u < s.n and 0 <= v < s.n):
        raise DrppError(f"bad edge {edge} for {s.n} qubits")
    return TwoQubitDiag(marginalize_to(s, [u, v]).lam)


def pair_purifiable(p: TwoQubitDiag) -> bool:
    """True iff the largest weight is strictly above one half."""
    return p.max_element > 0.5


@dataclass(frozen=True)
class EdgeVerdict:
    edge: tuple[int, int]
    max_element: float
    purifiable: bool


@dataclass(frozen=True)
class DrppVerdict:
    overall: bool
    edges: tuple[EdgeVerdict, ...]

    @property
    def worst_edge(self) -> EdgeVerdict:
        return min(self.edges, key=lambda e: (e.max_element, e.edge))


def drpp_verdict(g: Graph, spec: NoiseSpec) -> DrppVerdict:
    return drpp_verdict_state(g, from_noise(g, spec))


def drpp_verdict_state(g: Graph, state: DiagonalState) -> DrppVerdict:
    if not g.is_connected():
        raise DrppError("the divide-and-rebuild analysis needs a connected graph")
    if not g.edges:
        raise DrppError("graph has no edges")
    out = []
    for e in g.edges:
        pair = reduce_to_edge(state, e)
        out.append(EdgeVerdict(e, pair.max_element, pair_purifiable(pair)))
    return DrppVerdict(all(e.purifiable for e in out), tuple(out))


# ---------------------------------------------------------------------------
# rate bounds


@dataclass(frozen=True)
class RateBound:
    """Bell-pair overhead ``n_geo``: ``R_2 >= R_psi >= R_2 / n_geo``."""

    n_geo: int
    source: str

    def rate_range(self, r2: float) -> tuple[float, float]:
        return r2 / self.n_geo, r2


_GRID = re.compile(r"grid:(\d+)x(\d+)$", re.IGNORECASE)


def n_geo_bound(g: Graph) -> RateBound:
    """Geometric factor bound; 2-D cluster states (``grid:AxB``) get ``3 d**2 = 12``."""
    if not g.edges:
        raise DrppError("graph has no edges")
    m = _GRID.match(g.label or "")
    if m and min(int(a) for a in m.groups()) > 1:
        d = 2
        return RateBound(3 * d * d, "cluster")
    dg = g.max_degree
    return RateBound(min(2 * (dg - 1) * dg + 1, math.comb(g.n, 2)), "degree")


# ---------------------------------------------------------------------------
# closed-form performance


def max_depol_drpp_bound(n: int) -> float:
    """Global-noise fidelity above which the chain's reduced pair is purifiable."""
    if n < 2:
        raise DrppError("need at least two qubits")
    return 1 / 3 + 1 / (3 * 2 ** (n - 1))


def fc_y_fidelity(n: int, p: float) -> float:
    """Fidelity of the complete graph under independent Y noise (even error count)."""
    return 0.5 * ((1 - 2 * p) ** n + 1)


def propagation_q(d: int, p: float) -> float:
    """Probability that the ``d-1`` outer neighbours of one pair qubit leave it clean."""
    return 0.5 * (1 + (1 - 4 * p / 3) ** (d - 1))


def propagation_q_sum(d: int, p: float) -> float:
    """Explicit double-sum form of :func:`propagation_q`."""
    k = d - 1
    total = 0.0
    for n in range(k // 2 + 1):
        inner = sum(
            math.comb(k - 2 * n, m) * (1 - p) ** (k - 2 * n - m) * (p / 3) ** m for m in range(k - 2 * n + 1)
        )
        total += math.comb(k, 2 * n) * (2 * p / 3) ** (2 * n) * inner
    return total


def pair_error_g(p: float) -> tuple[float, float, float]:
    """``(g0, g1, g2)``: probabilities of 0, 1 or 2 effective errors on the pair."""
    g0 = (1 - p) ** 2 + p * p / 3
    g2 = (1 - g0) / 3
    return g0, 2 * g2, g2


def no_error_probability(d: int, p: float) -> float:
    q = propagation_q(d, p)
    g0, g1, g2 = pair_error_g(p)
    return g0 * q * q + g1 * q * (1 - q) + g2 * (1 - q) ** 2


def depol_polynomial(d: int, x: float) -> float:
    return x ** (2 * d) + 2 * x ** (d + 1) - 1


def critical_depol(d: int) -> float:
    """Local depolarizing rate below which divide-and-rebuild purifies a degree-``d`` graph."""
    if d < 1:
        raise DrppError("degree must be at least 1")
    x = bisect(lambda t: depol_polynomial(d, t), 0.0, 1.0, xtol=ROOT_XTOL, maxiter=200)
    return 3 * (1 - x) / 4
