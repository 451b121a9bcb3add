"""Multipartite purification of two-colorable graph states.

The state is held as a matrix ``M[mu_A, mu_B]`` over the syndromes of the two
color classes. Sub-protocol P1 squares each row under XOR-convolution over
the B index; P2 does the same to each column over the A index. Both are
evaluated through Walsh-Hadamard transforms, so one step costs
``O(2**n * max(n_A, n_B))``.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import hadamard

from .diag_state import DiagonalState, qubit_axis
from .graph_core import Graph, two_coloring

SUCCESS_FIDELITY = 1 - 1e-9
ATTRACTOR_TOL = 1e-6
DEFAULT_MAX_STEPS = 300
DEFAULT_RESTARTS = 32
DEFAULT_BEAM_WIDTH = 16
DEFAULT_STRATEGIES = ("alt12", "alt21", "greedy", "random", "beam")


class GmppError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ColoredState:
    """Weights arranged as ``matrix[mu_A, mu_B]``.

    Bit ``k`` of ``mu_A`` is the syndrome of qubit ``side_a[k]``; likewise
    for B. The matrix is always normalized.
    """

    matrix: np.ndarray
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.side_a) + len(self.side_b)

    @property
    def fidelity(self) -> float:
        return float(self.matrix[0, 0])

    @property
    def max_element(self) -> float:
        return float(self.matrix.max())

    def to_state(self) -> DiagonalState:
        n = self.n
        t = self.matrix.reshape((2,) * n)
        # axes currently: A reversed, then B reversed
        qubits = list(reversed(self.side_a)) + list(reversed(self.side_b))
        order = [qubits.index(q) for q in range(n - 1, -1, -1)]
        return DiagonalState(n, t.transpose(order).reshape(-1))


def color_state(state: DiagonalState, side_a: Sequence[int], side_b: Sequence[int]) -> ColoredState:
    side_a, side_b = tuple(side_a), tuple(side_b)
    if sorted(side_a + side_b) != list(range(state.n)):
        raise GmppError("coloring must split the qubits into two disjoint sets")
    if not side_a:
        raise GmppError("side A must be nonempty")
    n = state.n
    axes = [qubit_axis(n, q) for q in reversed(side_a)] + [qubit_axis(n, q) for q in reversed(side_b)]
    m = state.tensor().transpose(axes).reshape(1 << len(side_a), 1 << len(side_b))
    return ColoredState(np.ascontiguousarray(m), side_a, side_b)


def color_graph_state(g: Graph, state: DiagonalState, coloring=None) -> ColoredState:
    """Split ``state`` by a two-coloring of ``g`` (BFS coloring by default)."""
    if state.n != g.n:
        raise GmppError("state and graph sizes differ")
    if coloring is None:
        coloring = two_coloring(g)
        if coloring is None:
            raise GmppError("graph is not two-colorable")
    a, b = coloring
    aset = set(a)
    for u, v in g.edges:
        if (u in aset) == (v in aset):
            raise GmppError(f"edge ({u}, {v}) does not cross the coloring")
    return color_state(state, a, b)


def _hadamard(size: int) -> np.ndarray:
    return hadamard(size).astype(float)


def _p1_matrix(m: np.ndarray) -> tuple[np.ndarray, float]:
    if m.shape[1] == 1:
        # no B qubits to measure, so the step leaves the state alone
        return m.copy(), 1.0
    h = _hadamard(m.shape[1])
    f = m @ h
    out = (f * f) @ h / m.shape[1]
    np.clip(out, 0.0, None, out=out)
    total = float(out.sum())
    if not total > 0:
        raise GmppError("state vanished after P1")
    return out / total, total


def _p2_matrix(m: np.ndarray) -> tuple[np.ndarray, float]:
    out, total = _p1_matrix(m.T)
    return np.ascontiguousarray(out.T), total


_STEP = {"P1": _p1_matrix, "P2": _p2_matrix}


def p1_step(cs: ColoredState) -> tuple[ColoredState, float]:
    """``lam[a, b] <- sum_c lam[a, c] * lam[a, b ^ c]`` then renormalize.

    Returns the new state and the success probability (the pre-normalization
    sum).
    """
    m, s = _p1_matrix(cs.matrix)
    return ColoredState(m, cs.side_a, cs.side_b), s


def p2_step(cs: ColoredState) -> tuple[ColoredState, float]:
    """``lam[a, b] <- sum_c lam[c, b] * lam[a ^ c, b]`` then renormalize."""
    m, s = _p2_matrix(cs.matrix)
    return ColoredState(m, cs.side_a, cs.side_b), s


@dataclass(frozen=True)
class StepRecord:
    step: int
    kind: str
    fidelity: float
    success_prob: float
    max_element: float


@dataclass
class GmppTrace:
    initial_fidelity: float
    records: list[StepRecord] = field(default_factory=list)
    final: ColoredState | None = None

    @property
    def final_fidelity(self) -> float:
        return self.records[-1].fidelity if self.records else self.initial_fidelity

    @property
    def sequence(self) -> list[str]:
        return [r.kind for r in self.records]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "kind", "fidelity", "success_prob"])
        for r in self.records:
            w.writerow([r.step, r.kind, repr(r.fidelity), repr(r.success_prob)])
        return buf.getvalue()


def parse_sequence(text: str) -> list[str]:
    """``"P1P2P1"`` or ``"P1,P2"`` or ``"12"`` to a list of step kinds."""
    compact = text.upper().replace(",", "").replace(" ", "").replace("P", "")
    if not compact or set(compact) - {"1", "2"}:
        raise GmppError(f"bad step sequence {text!r}")
    return ["P" + c for c in compact]


def run_sequence(cs: ColoredState, steps: Sequence[str]) -> GmppTrace:
    if not steps:
        raise GmppError("empty step sequence")
    trace = GmppTrace(cs.fidelity)
    m = cs.matrix
    for k, kind in enumerate(steps):
        if kind not in _STEP:
            raise GmppError(f"unknown step {kind!r}")
        m, s = _STEP[kind](m)
        trace.records.append(StepRecord(k + 1, kind, float(m[0, 0]), s, float(m.max())))
    trace.final = ColoredState(m, cs.side_a, cs.side_b)
    return trace


# ---------------------------------------------------------------------------
# regime search


@dataclass(frozen=True)
class StrategyResult:
    strategy: str
    final_fidelity: float
    sequence: tuple[str, ...]

    @property
    def purified(self) -> bool:
        return self.final_fidelity > SUCCESS_FIDELITY


@dataclass(frozen=True)
class RegimeVerdict:
    purifiable: bool
    best_fidelity: float
    attractor_estimate: float | None
    best_strategy: str
    best_sequence: tuple[str, ...]
    results: tuple[StrategyResult, ...]

    @property
    def steps_used(self) -> int:
        return len(self.best_sequence)


def _run_fixed(m: np.ndarray, pattern: str, max_steps: int) -> tuple[float, list[str]]:
    seq = []
    for k in range(max_steps):
        kind = "P" + pattern[k % len(pattern)]
        m, _ = _STEP[kind](m)
        seq.append(kind)
        if m[0, 0] > SUCCESS_FIDELITY:
            break
    return float(m[0, 0]), seq


def _lookahead(m: np.ndarray, depth: int) -> float:
    if depth == 0:
        return float(m[0, 0])
    return max(_lookahead(f(m)[0], depth - 1) for f in (_p1_matrix, _p2_matrix))


def _greedy(m: np.ndarray, max_steps: int, depth: int = 2) -> tuple[float, list[str]]:
    # choose the step whose best depth-(depth-1) continuation has the highest fidelity
    seq = []
    for _ in range(max_steps):
        options = [(kind, f(m)[0]) for kind, f in _STEP.items()]
        kind, m = max(options, key=lambda kv: _lookahead(kv[1], depth - 1))
        seq.append(kind)
        if m[0, 0] > SUCCESS_FIDELITY:
            break
    return float(m[0, 0]), seq


def _random(m: np.ndarray, max_steps: int, restarts: int, seed: int) -> tuple[float, list[str]]:
    rng = random.Random(seed)
    best = (-1.0, [])
    for _ in range(restarts):
        x, seq = m, []
        for _ in range(max_steps):
            kind = rng.choice(("P1", "P2"))
            x, _ = _STEP[kind](x)
            seq.append(kind)
            if x[0, 0] > SUCCESS_FIDELITY:
                break
        if x[0, 0] > best[0]:
            best = (float(x[0, 0]), seq)
    return best


def _beam(m: np.ndarray, max_steps: int, width: int) -> tuple[float, list[str]]:
    """Keep the ``width`` highest-fidelity distinct states after every step."""
    beam = [(m, [])]
    for _ in range(max_steps):
        children = [(f(x)[0], seq + [kind]) for x, seq in beam for kind, f in _STEP.items()]
        children.sort(key=lambda c: -c[0][0, 0])
        kept: list = []
        for c in children:
            if all(np.abs(c[0] - k[0]).max() > 1e-12 for k in kept):
                kept.append(c)
                if len(kept) >= width:
                    break
        beam = kept
        if beam[0][0][0, 0] > SUCCESS_FIDELITY:
            break
    x, seq = max(beam, key=lambda c: c[0][0, 0])
    return float(x[0, 0]), seq


def classify_attractor(fidelity: float, n: int, tol: float = ATTRACTOR_TOL) -> float | None:
    for k in range(n + 1):
        if abs(fidelity - 2.0**-k) <= tol:
            return 2.0**-k
    return None


def search_regime(
    cs: ColoredState,
    max_steps: int = DEFAULT_MAX_STEPS,
    strategies: Sequence[str] = DEFAULT_STRATEGIES,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    beam_width: int = DEFAULT_BEAM_WIDTH,
) -> RegimeVerdict:
    """Try several step-selection strategies and report the best outcome.

    A state counts as purifiable when some strategy pushes the fidelity past
    ``1 - 1e-9`` within ``max_steps``. Otherwise the best final fidelity is
    compared against the candidate attractors ``1/2**k``. A negative verdict
    is evidence, not proof.
    """
    runners: dict[str, Callable[[], tuple[float, list[str]]]] = {
        "alt12": lambda: _run_fixed(cs.matrix, "12", max_steps),
        "alt21": lambda: _run_fixed(cs.matrix, "21", max_steps),
        "greedy": lambda: _greedy(cs.matrix, max_steps),
        "random": lambda: _random(cs.matrix, max_steps, restarts, seed),
        "beam": lambda: _beam(cs.matrix, max_steps, beam_width),
    }
    results = []
    for name in strategies:
        if name not in runners:
            raise GmppError(f"unknown strategy {name!r}")
        f, seq = runners[name]()
        results.append(StrategyResult(name, f, tuple(seq)))
    best = min(results, key=lambda r: (-r.final_fidelity, r.strategy))
    purifiable = best.purified
    attractor = None if purifiable else classify_attractor(best.final_fidelity, cs.n)
    return RegimeVerdict(purifiable, best.final_fidelity, attractor, best.strategy, best.sequence, tuple(results))


def regime_edge(
    state_at: Callable[[float], ColoredState],
    lo: float,
    hi: float,
    tol: float = 1e-4,
    **search_kw,
) -> tuple[float, float]:
    """Bracket the noise level where :func:`search_regime` stops purifying.

    ``state_at(lo)`` must be purifiable and ``state_at(hi)`` not. Returns the
    final ``(lo, hi)`` bracket, narrower than ``tol``.
    """
    if not search_regime(state_at(lo), **search_kw).purifiable:
        raise GmppError(f"state at {lo} is not purifiable")
    if search_regime(state_at(hi), **search_kw).purifiable:
        raise GmppError(f"state at {hi} is purifiable")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if search_regime(state_at(mid), **search_kw).purifiable:
            lo = mid
        else:
            hi = mid
    return lo, hi
