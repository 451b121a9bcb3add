"""Graph-basis diagonal states and the noise models that produce them.

A state on ``n`` qubits is a length ``2**n`` weight vector over Z-syndromes.
Bit ``i`` of an index says whether qubit ``i`` carries a Z relative to the
pure graph state, with qubit 0 the least significant bit. Index 0 is the
error-free graph state, so its weight is the fidelity.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .graph_core import Graph

CONVENTION = "bit i of the index is qubit i; qubit 0 least significant"
MAX_QUBITS = 24
NORM_TOL = 1e-12


class StateError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DiagonalState:
    """Normalized nonnegative weights over the ``2**n`` Z-syndromes."""

    n: int
    lam: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise StateError(f"qubit count {self.n} outside 1..{MAX_QUBITS}")
        lam = np.asarray(self.lam, dtype=float)
        if lam.shape != (1 << self.n,):
            raise StateError(f"expected {1 << self.n} weights, got shape {lam.shape}")
        if np.any(lam < -NORM_TOL):
            raise StateError("negative weight")
        lam = np.clip(lam, 0.0, None)
        total = lam.sum()
        if not total > 0:
            raise StateError("weights sum to zero")
        lam = lam / total
        lam.setflags(write=False)
        object.__setattr__(self, "lam", lam)

    @classmethod
    def pure(cls, n: int) -> DiagonalState:
        lam = np.zeros(1 << n)
        lam[0] = 1.0
        return cls(n, lam)

    @property
    def fidelity(self) -> float:
        return float(self.lam[0])

    @property
    def max_element(self) -> float:
        return float(self.lam.max())

    def tensor(self) -> np.ndarray:
        """View as shape ``(2,)*n`` where axis ``k`` is qubit ``n-1-k``."""
        return self.lam.reshape((2,) * self.n)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "convention": CONVENTION, "lambda": self.lam.tolist()})

    @classmethod
    def from_json(cls, text: str) -> DiagonalState:
        data = json.loads(text)
        return cls(int(data["n"]), np.array(data["lambda"], dtype=float))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["syndrome", "bits_q0_first", "weight"])
        for j, x in enumerate(self.lam):
            bits = "".join(str(j >> i & 1) for i in range(self.n))
            w.writerow([j, bits, repr(float(x))])
        return buf.getvalue()

    def allclose(self, other: DiagonalState, atol: float = 1e-12) -> bool:
        return self.n == other.n and bool(np.allclose(self.lam, other.lam, rtol=0, atol=atol))


def qubit_axis(n: int, qubit: int) -> int:
    return n - 1 - qubit


# ---------------------------------------------------------------------------
# noise specifications


@dataclass(frozen=True)
class ZNoise:
    p: float


@dataclass(frozen=True)
class LocalPauli:
    px: float
    py: float
    pz: float


@dataclass(frozen=True)
class Depol:
    """Local depolarizing: X, Y and Z each with probability ``p/3``."""

    p: float


@dataclass(frozen=True)
class GlobalNoise:
    """Mixture ``(1 + x*delta_0) / (2**n + x)`` of white noise and the pure state."""

    x: float


@dataclass(frozen=True)
class Thermal:
    beta: float
    delta: float

    @property
    def p(self) -> float:
        return thermal_p(self.beta, self.delta)


@dataclass(frozen=True)
class Pattern:
    """Explicit per-qubit ``(p_x, p_y, p_z)`` triples."""

    rates: tuple[tuple[float, float, float], ...]


NoiseSpec = Union[ZNoise, LocalPauli, Depol, GlobalNoise, Thermal, Pattern]


def thermal_p(beta: float, delta: float) -> float:
    """Boltzmann flip probability ``e^{-beta delta} / (1 + e^{-beta delta})``."""
    if delta <= 0 or beta < 0:
        raise StateError("thermal noise needs delta > 0 and beta >= 0")
    if math.isinf(beta):
        return 0.0
    return 1.0 / (1.0 + math.exp(beta * delta))


def _check_prob(x: float, name: str) -> None:
    if not 0.0 <= x <= 1.0:
        raise StateError(f"{name}={x} is not a probability")


def per_qubit_rates(spec: NoiseSpec, n: int) -> list[tuple[float, float, float]]:
    """Local Pauli rates ``(p_x, p_y, p_z)`` for each qubit; global noise has none."""
    if isinstance(spec, ZNoise):
        _check_prob(spec.p, "p")
        return [(0.0, 0.0, spec.p)] * n
    if isinstance(spec, Thermal):
        return [(0.0, 0.0, spec.p)] * n
    if isinstance(spec, Depol):
        _check_prob(spec.p, "p")
        return [(spec.p / 3,) * 3] * n
    if isinstance(spec, LocalPauli):
        rates = (spec.px, spec.py, spec.pz)
        _valid_triple(rates)
        return [rates] * n
    if isinstance(spec, Pattern):
        if len(spec.rates) != n:
            raise StateError(f"pattern has {len(spec.rates)} entries for {n} qubits")
        for r in spec.rates:
            _valid_triple(r)
        return [tuple(map(float, r)) for r in spec.rates]
    raise StateError(f"no local rates for {type(spec).__name__}")


def _valid_triple(r: Sequence[float]) -> None:
    if len(r) != 3:
        raise StateError("Pauli rates need three entries")
    for x, name in zip(r, ("p_x", "p_y", "p_z")):
        _check_prob(x, name)
    if sum(r) > 1 + 1e-12:
        raise StateError(f"Pauli rates {tuple(r)} sum above 1")


# ---------------------------------------------------------------------------
# syndromes and construction


def pauli_to_syndrome(g: Graph, pattern: str | Sequence[str]) -> int:
    """Z-syndrome equivalent of a Pauli string acting on the graph state.

    ``pattern[i]`` is the letter on qubit ``i``. X on ``i`` equals Z on its
    neighbors, Y equals Z on ``i`` and its neighbors; phases are dropped.
    """
    if len(pattern) != g.n:
        raise StateError(f"pattern length {len(pattern)} does not match {g.n} qubits")
    s = 0
    for i, letter in enumerate(pattern):
        letter = letter.upper()
        if letter == "I":
            continue
        if letter == "X":
            s ^= g.adj[i]
        elif letter == "Y":
            s ^= g.adj[i] | 1 << i
        elif letter == "Z":
            s ^= 1 << i
        else:
            raise StateError(f"unknown Pauli letter {letter!r}")
    return s


def apply_local_pauli(g: Graph, lam: np.ndarray, rates: Iterable[tuple[float, float, float]]) -> np.ndarray:
    """XOR-convolve ``lam`` with independent per-qubit Pauli channels."""
    idx = np.arange(1 << g.n)
    lam = np.asarray(lam, dtype=float)
    for i, (px, py, pz) in enumerate(rates):
        if px == py == pz == 0:
            continue
        bit = 1 << i
        nb = g.adj[i]
        lam = (
            (1 - px - py - pz) * lam
            + px * lam[idx ^ nb]
            + py * lam[idx ^ (nb | bit)]
            + pz * lam[idx ^ bit]
        )
    return lam


def global_weights(n: int, x: float) -> np.ndarray:
    if x < 0:
        raise StateError("global noise needs x >= 0")
    lam = np.ones(1 << n)
    lam[0] += x
    return lam / (float(1 << n) + x)


def from_noise(g: Graph, spec: NoiseSpec) -> DiagonalState:
    """Apply a noise model to the pure graph state of ``g``."""
    if g.n > MAX_QUBITS:
        raise StateError(f"dense states limited to {MAX_QUBITS} qubits")
    if isinstance(spec, GlobalNoise):
        return DiagonalState(g.n, global_weights(g.n, spec.x))
    rates = per_qubit_rates(spec, g.n)
    if isinstance(spec, (ZNoise, Thermal)):
        # product measure; no graph dependence
        p = rates[0][2] if rates else 0.0
        w = np.array([1.0])
        for _ in range(g.n):
            w = np.concatenate([w * (1 - p), w * p])
        return DiagonalState(g.n, w)
    return DiagonalState(g.n, apply_local_pauli(g, DiagonalState.pure(g.n).lam, rates))


def xor_convolve(a: DiagonalState, b: DiagonalState) -> DiagonalState:
    """Distribution of ``s ^ t`` for independent ``s ~ a`` and ``t ~ b``."""
    if a.n != b.n:
        raise StateError("qubit counts differ")
    fa = walsh_hadamard(a.lam.reshape((2,) * a.n), range(a.n))
    fb = walsh_hadamard(b.lam.reshape((2,) * b.n), range(b.n))
    out = walsh_hadamard(fa * fb, range(a.n)) / (1 << a.n)
    return DiagonalState(a.n, np.clip(out.reshape(-1), 0, None))


def walsh_hadamard(t: np.ndarray, axes: Iterable[int]) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the given length-2 axes."""
    for ax in axes:
        a = np.take(t, 0, axis=ax)
        b = np.take(t, 1, axis=ax)
        t = np.stack([a + b, a - b], axis=ax)
    return t


# ---------------------------------------------------------------------------
# reductions and relabelings


def marginalize(s: DiagonalState, qubit: int) -> DiagonalState:
    """Sum out one qubit's syndrome bit; higher qubits shift down by one."""
    if s.n < 2:
        raise StateError("cannot marginalize a single-qubit state")
    if not 0 <= qubit < s.n:
        raise StateError(f"qubit {qubit} out of range for n={s.n}")
    return DiagonalState(s.n - 1, s.tensor().sum(axis=qubit_axis(s.n, qubit)).reshape(-1))


def marginalize_to(s: DiagonalState, keep: Sequence[int]) -> DiagonalState:
    """Keep the listed qubits (new qubit ``k`` is ``keep[k]``) and sum out the rest."""
    keep = list(keep)
    if len(set(keep)) != len(keep) or not keep or any(not 0 <= q < s.n for q in keep):
        raise StateError(f"bad qubit selection {keep}")
    t = s.tensor()
    drop = tuple(qubit_axis(s.n, q) for q in range(s.n) if q not in keep)
    t = t.sum(axis=drop) if drop else t
    # remaining axes are ordered by descending qubit index
    remaining = sorted(keep, reverse=True)
    order = [remaining.index(q) for q in reversed(keep)]
    return DiagonalState(len(keep), np.transpose(t, order).reshape(-1))


def relabel(s: DiagonalState, syndrome: int) -> DiagonalState:
    """XOR every index by ``syndrome``."""
    idx = np.arange(1 << s.n)
    return DiagonalState(s.n, s.lam[idx ^ syndrome])


def promote_max(s: DiagonalState) -> tuple[DiagonalState, int]:
    """Relabel so the largest weight sits at index 0 (ties: smallest index)."""
    j = int(np.argmax(s.lam))
    if j == 0:
        return s, 0
    return relabel(s, j), j


def fidelity(s: DiagonalState) -> float:
    return s.fidelity
