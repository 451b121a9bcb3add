"""Upper bounds on purification thresholds.

Every solver here follows one recipe: find a state that can be rebuilt by
local operations from separable pieces, then locate the noise level at
which those pieces become separable. Past that point no protocol can purify.
The ``witness`` field of each result names the piece that failed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import bisect

from .diag_state import (
    DiagonalState,
    Depol,
    NoiseSpec,
    Pattern,
    from_noise,
    global_weights,
    qubit_axis,
    relabel,
)
from .graph_core import Bipartition, Graph, is_lr_bipartition, make_named

ROOT_XTOL = 1e-13
PREDICATE_TOL = 1e-6
DEFAULT_BRACKET = (1e-9, 0.75)
SEPARABLE_SLACK = 1e-15


class ThresholdError(ValueError):
    pass


@dataclass(frozen=True)
class ThresholdResult:
    model: str
    parameter: str
    value: float
    witness: str
    tolerance: float
    fidelity: float | None = None


# ---------------------------------------------------------------------------
# local Z noise


def z_lr_threshold(n: int | None = None) -> ThresholdResult:
    """``p = 1 - 1/sqrt(2)``; with ``n`` also the fidelity ``(1-p)**n = 2**(-n/2)``."""
    p = 1 - 1 / math.sqrt(2)
    return ThresholdResult(
        "z-lr",
        "p",
        p,
        "a single crossing Bell pair with (1-p)^2 <= 1/2 is separable",
        0.0,
        None if n is None else 2.0 ** (-n / 2),
    )


def z_general_condition(d_min: int, p: float) -> float:
    """Positive while the reduced GHZ pair is still entangled."""
    return 2 * (1 - p) ** (d_min + 1) - (1 - p) ** d_min - p**d_min


def z_general_threshold(d_min: int) -> ThresholdResult:
    if d_min < 1:
        raise ThresholdError("minimum degree must be at least 1")
    p = bisect(lambda t: z_general_condition(d_min, t), 0.0, 0.5, xtol=ROOT_XTOL, maxiter=200)
    return ThresholdResult(
        "z-general",
        "p",
        p,
        f"GHZ pair cut from a degree-{d_min} vertex becomes separable",
        ROOT_XTOL,
    )


def critical_temperature(delta: float) -> float:
    """Temperature (``k_B = 1``) at which thermal flips reach ``1 - 1/sqrt(2)``."""
    if delta <= 0:
        raise ThresholdError("energy gap must be positive")
    return -delta / math.log(math.sqrt(2) - 1)


def ghz_reduction(d_min: int, p: float):
    """Full reduced state and its best two-qubit slice for a degree-``d_min`` cut.

    The full state lives on ``d_min + 1`` qubits: bit 0 is the GHZ center,
    bit 1 the cut-off qubit, higher bits the remaining leaves.
    Returns ``(DiagonalState, TwoQubitDiag)``.
    """
    from .drpp import TwoQubitDiag

    if d_min < 1 or not 0 <= p <= 1:
        raise ThresholdError("need d_min >= 1 and p in [0, 1]")
    n = d_min + 1
    q = 1 - p
    lam = np.zeros(1 << n)
    for j in range(1 << (d_min - 1)):
        w = bin(j).count("1")
        pre = q**w * p**w
        block = [q ** (d_min + 1 - 2 * w), p * q ** (d_min - 2 * w), p ** (d_min + 1 - 2 * w), q * p ** (d_min - 2 * w)]
        lam[4 * j : 4 * j + 4] = pre * np.array(block)
    pair = np.array([q ** (d_min + 1), p * q**d_min, p ** (d_min + 1), q * p**d_min])
    return DiagonalState(n, lam), TwoQubitDiag(pair / (q**d_min + p**d_min))


def ghz_reduction_noise(d_min: int, p: float) -> tuple[Graph, NoiseSpec]:
    """Star graph and Pauli pattern whose syndrome state is :func:`ghz_reduction`."""
    g = make_named(f"star:{d_min + 1}")
    rates = [(0.0, p, 0.0), (p, 0.0, 0.0)] + [(0.0, 0.0, p)] * (d_min - 1)
    return g, Pattern(tuple(rates))


# ---------------------------------------------------------------------------
# global depolarizing noise


def global_depol_threshold(n: int) -> Fraction:
    """Threshold fidelity ``3 / (2**n + 2)``, exact."""
    if n < 2:
        raise ThresholdError("need at least two qubits")
    return Fraction(3, 2**n + 2)


def check_inductive_mixing(n: int, x: float, atol: float = 1e-12) -> bool:
    """Rebuild the ``n``-qubit globally depolarized state from the ``n-1`` one.

    The new qubit is bit 0. The extended state is kept with probability
    ``p = (2**(n-1) + x) / (2**n + x)``; otherwise one of the ``2**(n-1)``
    relabelings that flip the new qubit is applied uniformly at random.
    """
    if n < 2:
        raise ThresholdError("need at least two qubits")
    half = 1 << (n - 1)
    ext = np.zeros(1 << n)
    ext[0::2] = global_weights(n - 1, x)
    ext_state = DiagonalState(n, ext)
    p = (half + x) / (2 * half + x)
    mixed = p * ext_state.lam
    for s in range(half):
        mixed = mixed + (1 - p) / half * relabel(ext_state, (s << 1) | 1).lam
    return bool(np.allclose(mixed, global_weights(n, x), rtol=0, atol=atol))


# ---------------------------------------------------------------------------
# local depolarizing noise via crossing pairs


NoiseFamily = Callable[[float], NoiseSpec]
_PPT_MAP = np.ones((4, 4)) - 2 * np.eye(4)


def crossing_pairs(g: Graph, part: Bipartition) -> list[tuple[int, int]]:
    if not is_lr_bipartition(g, part):
        raise ThresholdError("every vertex may have at most one edge crossing the partition")
    pairs = part.crossing_edges(g)
    if not pairs:
        raise ThresholdError("partition has no crossing edge")
    return pairs


def _pair_tensor(state: DiagonalState, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    # axis k (< len(pairs)) is pair k's 4-valued syndrome; last axis is the environment
    n = state.n
    src = []
    for u, v in pairs:
        src += [qubit_axis(n, u), qubit_axis(n, v)]
    k = len(pairs)
    t = np.moveaxis(state.tensor(), src, list(range(2 * k)))
    return t.reshape((4,) * k + (-1,))


def pairwise_separable(state: DiagonalState, pairs: Sequence[tuple[int, int]]) -> bool:
    """Each crossing pair, conditioned on every other qubit's syndrome, has max weight <= 1/2."""
    for pair in pairs:
        t = _pair_tensor(state, [pair])
        total = t.sum(axis=0)
        live = total > 0
        if np.any(t.max(axis=0)[live] > 0.5 * total[live] + SEPARABLE_SLACK):
            return False
    return True


def joint_ppt(state: DiagonalState, pairs: Sequence[tuple[int, int]]) -> bool:
    """Positive partial transpose of all crossing pairs together, per environment syndrome.

    For Bell-diagonal weights ``w`` the partial transpose of one pair has
    eigenvalues ``(J - 2I) w / 2`` with ``J`` the all-ones matrix, and the
    map acts independently on each pair.
    """
    t = _pair_tensor(state, pairs)
    for ax in range(len(pairs)):
        t = np.moveaxis(np.tensordot(_PPT_MAP, t, axes=([1], [ax])), 0, ax)
    return bool(t.min() >= -SEPARABLE_SLACK * max(1.0, float(np.abs(t).max())))


_METHODS = {"pairwise": pairwise_separable, "joint": joint_ppt}


def bisect_predicate(pred: Callable[[float], bool], lo: float, hi: float, tol: float) -> float:
    """Smallest ``p`` (to ``tol``) with ``pred(p)`` true, given ``pred(lo)`` false and ``pred(hi)`` true."""
    if pred(lo) or not pred(hi):
        raise ThresholdError(f"predicate does not change sign on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def partition_threshold(
    g: Graph,
    part: Bipartition,
    family: NoiseFamily = Depol,
    method: str = "pairwise",
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    tol: float = PREDICATE_TOL,
) -> ThresholdResult:
    """Noise level past which the state splits into separable crossing pairs.

    After local controlled-phase gates inside each side, the graph becomes the
    crossing edges plus isolated qubits whose syndromes can be read locally.
    ``method="pairwise"`` asks every crossing pair, conditioned on all other
    syndromes, to have max weight at most 1/2. ``method="joint"`` tests the
    partial transpose of all crossing pairs together. With one crossing edge
    the two agree.
    """
    if method not in _METHODS:
        raise ThresholdError(f"unknown method {method!r}")
    pairs = crossing_pairs(g, part)
    test = _METHODS[method]
    value = bisect_predicate(lambda p: test(from_noise(g, family(p)), pairs), *bracket, tol)
    return ThresholdResult(
        f"local-{method}",
        "p",
        value,
        f"cut {part.mask:#b} with crossing pairs {pairs} is separable from p={value:.6f}",
        tol,
    )


def lr_partitions(g: Graph) -> list[Bipartition]:
    """All splits with at least one crossing edge and at most one per vertex (vertex ``n-1`` in B)."""
    out = []
    for mask in range(1, 1 << (g.n - 1)):
        part = Bipartition(g.n, mask)
        if part.crossing_edges(g) and is_lr_bipartition(g, part):
            out.append(part)
    return out


def best_partition_threshold(
    g: Graph,
    family: NoiseFamily = Depol,
    method: str = "pairwise",
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    tol: float = PREDICATE_TOL,
) -> ThresholdResult:
    """Lowest :func:`partition_threshold` over every admissible cut."""
    best = None
    for part in lr_partitions(g):
        try:
            r = partition_threshold(g, part, family, method, bracket, tol)
        except ThresholdError:
            continue
        if best is None or r.value < best.value:
            best = r
    if best is None:
        raise ThresholdError("no admissible cut separates within the bracket")
    return best


def last_qubit_clean(n: int) -> NoiseFamily:
    """Depolarizing noise on qubits ``0..n-2`` of an ``n``-chain, none on the last."""

    def family(p: float) -> NoiseSpec:
        return Pattern(tuple([(p / 3,) * 3] * (n - 1) + [(0.0, 0.0, 0.0)]))

    return family


@dataclass(frozen=True)
class ChainRow:
    n: int
    noisy_threshold: float
    general_bound: float | None
    witness: str


def depol_chain_sweep(n_from: int = 3, n_to: int = 10, tol: float = PREDICATE_TOL) -> list[ChainRow]:
    """Local depolarizing bounds for chains of each length.

    ``noisy_threshold`` is the joint crossing-pair bound for the fully noisy
    chain. ``general_bound`` uses the chain whose last qubit is clean; since
    clean qubits and their noise can be appended locally, it bounds every
    longer chain too and is non-increasing in ``n``.
    """
    rows = []
    for n in range(n_from, n_to + 1):
        g = make_named(f"chain:{n}")
        noisy = best_partition_threshold(g, Depol, "joint", tol=tol)
        general = None
        if n >= 3:
            general = best_partition_threshold(g, last_qubit_clean(n), "joint", tol=tol).value
        rows.append(ChainRow(n, noisy.value, general, noisy.witness))
    return rows


def chain_general_bound(n: int, tol: float = PREDICATE_TOL) -> ThresholdResult:
    g = make_named(f"chain:{n}")
    r = best_partition_threshold(g, last_qubit_clean(n), "joint", tol=tol)
    return ThresholdResult("local-depol-chain", "p", r.value, "last qubit clean; " + r.witness, tol)


# ---------------------------------------------------------------------------
# closed forms for the three-qubit chain


def chain3_weights(p: float) -> tuple[float, float, float]:
    """Closed-form ``(a, b, c)`` for the depolarized three-qubit chain.

    ``a`` is the fidelity, ``c`` the weight of a Z on the middle qubit
    (index 2) and ``b`` the common weight of the other six syndromes.
    """
    a = (3 - 2 * p) * (16 * p * p - 21 * p + 9) / 27
    b = p * (3 - 2 * p) / 9
    c = p * (32 * p * p - 54 * p + 27) / 27
    return a, b, c


def chain3_cubic(p: float) -> float:
    return 27 - 126 * p + 156 * p**2 - 64 * p**3


def chain3_threshold() -> float:
    """Root of the cubic in ``(0, 1/2)``."""
    return bisect(chain3_cubic, 0.0, 0.5, xtol=ROOT_XTOL, maxiter=200)


def depol_pair_condition(p: float) -> float:
    """Two-qubit local depolarizing: positive while ``(1-p)**2 + p**2/3 > 1/2``."""
    return (1 - p) ** 2 + p * p / 3 - 0.5
