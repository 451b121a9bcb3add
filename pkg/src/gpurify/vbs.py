"""A three-qubit valence bond state built from two Bell pairs and one projector.

The projector ``P0 = sum alpha_{j,ik} |j><i|<k|`` maps qubits 2 and 3 onto
one qubit. It is stored as two ``2 x 2`` matrices ``alpha^k`` with
``alpha^k[j, i] = alpha_{j,ik}``. Amplitude tensors are indexed in qubit
order, so the initial state is ``psi[a, j, b] = alpha_{j,ab}``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

TOL = 1e-10
SINGULAR_COND = 1e12
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


class VbsError(ValueError):
    pass


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.shape != (2, 2):
        raise VbsError(f"expected a 2x2 matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True, eq=False)
class ValenceProjector:
    alpha0: np.ndarray
    alpha1: np.ndarray

    def __post_init__(self):
        a0, a1 = _as_matrix(self.alpha0), _as_matrix(self.alpha1)
        if not (np.any(a0) or np.any(a1)):
            raise VbsError("projector is zero")
        object.__setattr__(self, "alpha0", a0)
        object.__setattr__(self, "alpha1", a1)

    @classmethod
    def from_matrix(cls, p0) -> ValenceProjector:
        """From the ``2 x 4`` matrix with rows ``j`` and columns ``2*i + k``."""
        p = np.asarray(p0, dtype=complex)
        if p.shape != (2, 4):
            raise VbsError(f"expected a 2x4 matrix, got shape {p.shape}")
        return cls(p[:, 0::2], p[:, 1::2])

    def matrix(self) -> np.ndarray:
        out = np.empty((2, 4), dtype=complex)
        out[:, 0::2] = self.alpha0
        out[:, 1::2] = self.alpha1
        return out

    def alpha(self, k: int) -> np.ndarray:
        return (self.alpha0, self.alpha1)[k]

    def entry(self, j: int, i: int, k: int) -> complex:
        return complex(self.alpha(k)[j, i])

    @property
    def rank(self) -> int:
        return int(np.linalg.matrix_rank(self.matrix(), tol=TOL * np.abs(self.matrix()).max()))

    @property
    def rank_deficient(self) -> bool:
        return self.rank < 2

    def invertible(self, k: int) -> bool:
        return bool(np.linalg.cond(self.alpha(k)) < SINGULAR_COND)

    def scaled(self, c: complex) -> ValenceProjector:
        return ValenceProjector(c * self.alpha0, c * self.alpha1)

    def swapped(self) -> ValenceProjector:
        """Exchange the roles of the two input legs: ``alpha_{j,ik} -> alpha_{j,ki}``."""
        a = np.stack([self.alpha0, self.alpha1])  # a[k, j, i]
        b = a.transpose(2, 1, 0)  # b[k, j, i] = a[i, j, k]
        return ValenceProjector(b[0], b[1])


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitudes; the first qubit is the most significant index."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        n = a.size.bit_length() - 1
        if a.size < 2 or a.size != 1 << n:
            raise VbsError("amplitude count must be a power of two")
        norm = np.linalg.norm(a)
        if norm < TOL:
            raise VbsError("state has zero norm")
        object.__setattr__(self, "amplitudes", a / norm)

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    def fidelity(self, other: PureState) -> float:
        if other.amplitudes.size != self.amplitudes.size:
            raise VbsError("qubit counts differ")
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)

    def phase_aligned(self) -> np.ndarray:
        """Amplitudes divided by the phase of the first nonzero entry."""
        a = self.amplitudes
        k = int(np.argmax(np.abs(a) > TOL))
        return a * (abs(a[k]) / a[k])


def _initial_tensor(p: ValenceProjector) -> np.ndarray:
    # psi[a, j, b] = alpha^b[j, a]
    return np.stack([p.alpha0.T, p.alpha1.T], axis=-1)


def build_initial(p0: ValenceProjector) -> PureState:
    return PureState(_initial_tensor(p0))


@dataclass(frozen=True, eq=False)
class PairResult:
    state: PureState
    schmidt: tuple[float, float]

    @property
    def entangled(self) -> bool:
        return self.schmidt[0] < 1 - TOL


def z_measure_pair(p0: ValenceProjector) -> PairResult:
    """Project the last qubit onto ``|0>``; the pair left is ``psi2[a, j] = alpha^0[j, a]``."""
    m = p0.alpha0.T
    if np.linalg.norm(m) < TOL:
        raise VbsError("outcome 0 has zero probability")
    state = PureState(m)
    s = np.linalg.svd(state.amplitudes.reshape(2, 2), compute_uv=False)
    return PairResult(state, (float(s[0]), float(s[1])))


def cluster_state() -> PureState:
    """Three-qubit linear cluster state ``CZ_12 CZ_23 |+++>``."""
    a, j, b = np.indices((2, 2, 2))
    return PureState((-1.0) ** (j * (a + b)))


def beta_from_alpha(p: ValenceProjector) -> tuple[np.ndarray, np.ndarray]:
    """``beta^i = alpha^i (alpha^0)^-1``; needs an invertible ``alpha^0``."""
    if not p.invertible(0):
        raise VbsError("alpha^0 is singular")
    inv = np.linalg.inv(p.alpha0)
    return p.alpha0 @ inv, p.alpha1 @ inv


def solve_beta(p: ValenceProjector, tol: float = TOL) -> tuple[np.ndarray, np.ndarray] | None:
    """Find ``beta^b`` with ``beta^b alpha^0 = alpha^b`` and ``beta^b Z alpha^0 = Z alpha^b``.

    Works for singular ``alpha^0`` as well. Returns ``None`` when no solution
    exists, which is exactly when the reconstruction fails.
    """
    x = np.hstack([p.alpha0, PAULI_Z @ p.alpha0])
    scale = max(np.linalg.norm(p.alpha0), np.linalg.norm(p.alpha1))
    out = []
    for k in (0, 1):
        y = np.hstack([p.alpha(k), PAULI_Z @ p.alpha(k)])
        beta_t, *_ = np.linalg.lstsq(x.T, y.T, rcond=None)
        beta = beta_t.T
        if np.linalg.norm(beta @ x - y) > tol * scale:
            return None
        out.append(beta)
    return out[0], out[1]


@dataclass(frozen=True)
class OptimalityReport:
    satisfied: bool
    method: str
    commutator_norm: float
    diagonal_check: bool | None


def optimality_report(p: ValenceProjector, tol: float = TOL) -> OptimalityReport:
    """Evaluate ``[beta^i, Z] alpha^0 = 0``, relative to the size of ``alpha^0``.

    With both ``alpha`` invertible the diagonality of ``alpha^0 (alpha^1)^-1``
    is reported as well; the two tests agree on generic input.
    """
    if not p.invertible(0):
        ok = solve_beta(p, tol) is not None
        return OptimalityReport(ok, "linear-system", float("nan"), None)
    betas = beta_from_alpha(p)
    ref = np.linalg.norm(p.alpha0)
    norm = max(np.linalg.norm((b @ PAULI_Z - PAULI_Z @ b) @ p.alpha0) for b in betas) / ref
    ok = bool(norm < tol)
    diag = None
    if p.invertible(1):
        r = p.alpha0 @ np.linalg.inv(p.alpha1)
        diag = bool(max(abs(r[0, 1]), abs(r[1, 0])) < tol * np.linalg.norm(r))
    return OptimalityReport(ok, "commutator", float(norm), diag)


def optimality_condition(p: ValenceProjector, tol: float = TOL) -> bool:
    return optimality_report(p, tol).satisfied


def optimal_on_both_edges(p: ValenceProjector, tol: float = TOL) -> bool:
    return optimality_condition(p, tol) and optimality_condition(p.swapped(), tol)


def symmetric_p0(
    a0_01: complex, a0_10: complex, a0_11: complex, a1_01: complex, a1_10: complex, a1_11: complex
) -> ValenceProjector:
    """Projector whose rows factor as ``alpha_{j,ik} = u_j(i) v_j(k)``.

    The ``ik = 00`` column is fixed by ``alpha_{j,00} = alpha_{j,01} alpha_{j,10} / alpha_{j,11}``.
    """
    if a0_11 == 0 or a1_11 == 0:
        raise VbsError("alpha_{0,11} and alpha_{1,11} must be nonzero")
    rows = [
        [a0_01 * a0_10 / a0_11, a0_01, a0_10, a0_11],
        [a1_01 * a1_10 / a1_11, a1_01, a1_10, a1_11],
    ]
    return ValenceProjector.from_matrix(rows)


def weighted_graph_projector(theta1: float, theta2: float) -> ValenceProjector:
    """Controlled phases ``theta2`` on the left bond and ``theta1`` on the right."""
    e = cmath.exp
    return symmetric_p0(1, 1, 1, e(1j * theta1), e(1j * theta2), e(1j * (theta1 + theta2)))


def derive_p1(p0: ValenceProjector, tol: float = TOL) -> ValenceProjector:
    """The rebuild projector ``P1`` with ``beta`` matrices solving both conditions."""
    betas = solve_beta(p0, tol)
    if betas is None:
        raise VbsError("no rebuild projector exists for this P0")
    return ValenceProjector(*betas)


def reconstruction_check(p0: ValenceProjector, p1: ValenceProjector, tol: float = TOL) -> bool:
    """Check that ``P1`` rebuilds the initial state and carries a Z error through.

    ``(1 x P1 x 1)|psi2>|phi>`` must equal ``c |psi_initial>`` and the same
    with a Z on the pair's second qubit must equal ``c Z_2 |psi_initial>``
    for one common scalar ``c``.
    """
    target = _initial_tensor(p0)
    sign = np.array([1.0, -1.0])[None, :, None]
    built = np.stack([(p1.alpha(b) @ p0.alpha0).T for b in (0, 1)], axis=-1)
    built_z = np.stack([(p1.alpha(b) @ PAULI_Z @ p0.alpha0).T for b in (0, 1)], axis=-1)
    ref = np.linalg.norm(built)
    if ref < TOL:
        return False
    c = np.vdot(target, built) / np.vdot(target, target)
    return bool(
        np.linalg.norm(built - c * target) <= tol * ref and np.linalg.norm(built_z - c * sign * target) <= tol * ref
    )
