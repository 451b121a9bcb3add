"""Bipartite recurrence purification and its closed-form fixed point.

The state is a ``D x D`` matrix ``lam[k, j]``: ``k`` is the error on one side
of the split and ``j`` the error on the other. One round squares the
``Z_D`` Fourier transform of every column; ``n`` rounds therefore raise it
to the power ``2**n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

RESIDUE_FAIL = 1e-8
NORM_TOL = 1e-12


class FixedPointError(ValueError):
    pass


def _check_dimension(d: int) -> None:
    if d < 2 or d & (d - 1):
        raise FixedPointError(f"D={d} must be a power of two, at least 2")


@dataclass(frozen=True, eq=False)
class BipartiteDiag:
    """Normalized nonnegative ``D x D`` weights with ``D = 2**(N/2)``."""

    d: int
    lam: np.ndarray

    def __post_init__(self):
        _check_dimension(self.d)
        lam = np.asarray(self.lam, dtype=float)
        if lam.shape != (self.d, self.d):
            raise FixedPointError(f"expected a {self.d}x{self.d} matrix, got {lam.shape}")
        if np.any(lam < -NORM_TOL):
            raise FixedPointError("negative weight")
        lam = np.clip(lam, 0.0, None)
        total = lam.sum()
        if not total > 0:
            raise FixedPointError("weights sum to zero")
        lam = lam / total
        lam.setflags(write=False)
        object.__setattr__(self, "lam", lam)

    @property
    def n_qubits(self) -> int:
        """Qubit count ``N`` with ``N/2`` qubits on each side."""
        return 2 * (self.d.bit_length() - 1)

    @property
    def lambda00(self) -> float:
        return float(self.lam[0, 0])


def global_matrix(d: int, x: float) -> BipartiteDiag:
    """``(1 + x * delta_k0 * delta_j0) / (D**2 + x)``."""
    _check_dimension(d)
    if x < 0:
        raise FixedPointError("x must be nonnegative")
    lam = np.ones((d, d))
    lam[0, 0] += x
    return BipartiteDiag(d, lam / (d * d + x))


def iterate_map(m: BipartiteDiag, n_rounds: int) -> BipartiteDiag:
    """Apply ``n_rounds`` rounds and renormalize.

    The spectrum is divided by its largest modulus before powering so that
    large ``2**n`` exponents underflow instead of overflowing. The inverse
    transform is used on the way back, which makes zero rounds the identity.
    """
    if n_rounds < 0:
        raise FixedPointError("n_rounds must be nonnegative")
    if n_rounds == 0:
        return m
    f = np.fft.fft(m.lam, axis=0)
    f = f / np.abs(f).max()
    for _ in range(n_rounds):
        f = f * f
    out = np.fft.ifft(f, axis=0)
    scale = np.abs(out.real).max()
    if not scale > 0:
        raise FixedPointError("iterated weights vanished")
    residue = np.abs(out.imag).max() / scale
    if residue > RESIDUE_FAIL:
        raise FixedPointError(f"imaginary residue {residue:.3g} after inverse transform")
    return BipartiteDiag(m.d, np.clip(out.real, 0.0, None))


def closed_form_lambda00(d: int, x: float, n: int) -> float:
    """Normalized ``lam_00`` after ``n`` rounds on the global-noise matrix.

    ``((x+D)**(2**n) + (D-1) x**(2**n)) / (D [(x+D)**(2**n) + (D-1) D**(2**n)])``,
    divided through by ``(x+D)**(2**n)`` so both remaining powers lie in ``[0, 1]``.
    """
    _check_dimension(d)
    if x < 0:
        raise FixedPointError("x must be nonnegative")
    if n < 0:
        raise FixedPointError("n must be nonnegative")
    e = float(2**n)
    r_x = math.exp(e * math.log(x / (x + d))) if x > 0 else 0.0
    r_d = math.exp(e * math.log(d / (x + d)))
    return (1 + (d - 1) * r_x) / (d * (1 + (d - 1) * r_d))


def fixed_point_x(d: int) -> float:
    """The global-noise parameter whose ``lam_00`` never moves: ``x = D``."""
    _check_dimension(d)
    return float(d)


def limit_lambda00(d: int, x: float) -> float:
    """Large-``n`` limit of :func:`closed_form_lambda00`.

    ``x + D`` exceeds both ``x`` and ``D`` whenever ``x > 0``, so the leading
    terms win and the limit is ``1/D``; at ``x = 0`` the state stays maximally
    mixed at ``1/D**2``.
    """
    _check_dimension(d)
    if x < 0:
        raise FixedPointError("x must be nonnegative")
    return 1.0 / (d * d) if x == 0 else 1.0 / d


@dataclass(frozen=True)
class FixedPointRow:
    n: int
    iterated: float
    closed_form: float


@dataclass(frozen=True)
class FixedPointReport:
    d: int
    x: float
    rows: tuple[FixedPointRow, ...]
    limit: float
    max_abs_diff: float

    @property
    def trend(self) -> str:
        first, last = self.rows[0].closed_form, self.rows[-1].closed_form
        if abs(last - first) <= 1e-12:
            return "constant"
        return "increasing" if last > first else "decreasing"


def fixed_point_report(d: int, x: float, rounds: int) -> FixedPointReport:
    """Iterated and closed-form ``lam_00`` for ``n = 0..rounds``."""
    if rounds < 0:
        raise FixedPointError("rounds must be nonnegative")
    m = global_matrix(d, x)
    rows = []
    cur = m
    for n in range(rounds + 1):
        if n:
            cur = iterate_map(cur, 1)
        rows.append(FixedPointRow(n, cur.lambda00, closed_form_lambda00(d, x, n)))
    diff = max(abs(r.iterated - r.closed_form) for r in rows)
    return FixedPointReport(d, float(x), tuple(rows), limit_lambda00(d, x), diff)
