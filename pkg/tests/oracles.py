"""Slow, direct reference implementations used only by the tests.

Nothing here imports the package; each routine recomputes its quantity from
first principles (state vectors, explicit sums, permutations).
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np


# --- graph states as state vectors; bit i of a basis index is qubit i ---


def graph_state_vector(n, edges):
    x = np.arange(1 << n)
    phase = np.zeros(1 << n, dtype=int)
    for u, v in edges:
        phase += ((x >> u) & 1) * ((x >> v) & 1)
    return (-1.0) ** phase / math.sqrt(1 << n)


def apply_pauli(vec, n, letters):
    x = np.arange(1 << n)
    out = vec.astype(complex)
    for i, letter in enumerate(letters):
        bit = (x >> i) & 1
        if letter in "ZY":
            out = out * (-1.0) ** bit
        if letter in "XY":
            out = out[x ^ (1 << i)]
        if letter == "Y":
            out = out * 1j
    return out


def syndrome_of(vec, n, edges):
    """The ``s`` with ``vec`` proportional to ``Z^s |G>``."""
    base = graph_state_vector(n, edges)
    ratio = vec / base
    s = 0
    for i in range(n):
        r = ratio[1 << i] / ratio[0]
        assert abs(abs(r) - 1) < 1e-9
        if r.real < 0:
            s |= 1 << i
    assert np.allclose(vec, ratio[0] * base * (-1.0) ** np.array([bin(s & k).count("1") for k in range(1 << n)]))
    return s


def brute_noise(n, edges, rates):
    """Syndrome weights from all ``4**n`` Pauli strings acting on the state vector."""
    lam = np.zeros(1 << n)
    base = graph_state_vector(n, edges)
    for letters in itertools.product("IXYZ", repeat=n):
        prob = 1.0
        for i, letter in enumerate(letters):
            px, py, pz = rates[i]
            prob *= {"I": 1 - px - py - pz, "X": px, "Y": py, "Z": pz}[letter]
        if prob == 0:
            continue
        lam[syndrome_of(apply_pauli(base, n, letters), n, edges)] += prob
    return lam


def brute_marginal(lam, n, keep):
    out = np.zeros(1 << len(keep))
    for j, w in enumerate(lam):
        k = sum(((j >> q) & 1) << pos for pos, q in enumerate(keep))
        out[k] += w
    return out


# --- combinatorics ---


def crossing_counts_ok(n, edges, mask):
    count = [0] * n
    for u, v in edges:
        if (mask >> u & 1) != (mask >> v & 1):
            count[u] += 1
            count[v] += 1
    return max(count) <= 1


def brute_lr_connected(n, edges):
    return any(crossing_counts_ok(n, edges, m) for m in range(1, (1 << n) - 1))


def brute_components(n, edges):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for u, v in edges:
        parent[find(u)] = find(v)
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def brute_lr_any(n, edges):
    """Every component with an edge has its own cut with at most one crossing edge per vertex."""
    for comp in brute_components(n, edges):
        if len(comp) < 2:
            continue
        idx = {v: k for k, v in enumerate(comp)}
        sub = [(idx[u], idx[v]) for u, v in edges if u in idx]
        if not brute_lr_connected(len(comp), sub):
            return False
    return True


def brute_lr_count(n):
    pairs = list(itertools.combinations(range(n), 2))
    total = 0
    for gid in range(1 << len(pairs)):
        edges = [e for k, e in enumerate(pairs) if gid >> k & 1]
        total += brute_lr_any(n, edges)
    return total


def brute_canonical(n, edges):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def brute_local_complement(n, edges, v):
    es = {tuple(sorted(e)) for e in edges}
    nb = [w for w in range(n) if tuple(sorted((v, w))) in es]
    for a, b in itertools.combinations(nb, 2):
        es ^= {(a, b)}
    return sorted(es)


# --- bipartite recurrence with explicit roots of unity ---


def brute_iterate(lam, rounds):
    d = len(lam)
    w = cmath.exp(2j * math.pi / d)
    out = [[0j] * d for _ in range(d)]
    for j in range(d):
        spec = [sum(w ** (-kk * k2) * lam[k2][j] for k2 in range(d)) ** (2**rounds) for kk in range(d)]
        for k in range(d):
            out[k][j] = sum(w ** (k * kk) * spec[kk] for kk in range(d)) / d
    tot = sum(sum(r) for r in out)
    return [[(v / tot).real for v in row] for row in out]


# --- valence bond example with explicit Kronecker products ---


def _ket(bits):
    v = np.zeros(1 << len(bits), dtype=complex)
    v[int("".join(map(str, bits)), 2)] = 1
    return v


def projector_operator(alpha):
    """``P = sum alpha[j][i][k] |j><i|<k|`` as a ``2 x 4`` matrix (first input most significant)."""
    p = np.zeros((2, 4), dtype=complex)
    for j, i, k in itertools.product(range(2), repeat=3):
        p += alpha[j][i][k] * np.outer(_ket([j]), _ket([i, k]))
    return p


def initial_state(alpha):
    phi = _ket([0, 0]) + _ket([1, 1])
    four = np.kron(phi, phi)
    op = np.kron(np.kron(np.eye(2), projector_operator(alpha)), np.eye(2))
    out = op @ four
    return out / np.linalg.norm(out)


def cluster3():
    v = np.ones(8, dtype=complex)
    for idx in range(8):
        a, j, b = idx >> 2 & 1, idx >> 1 & 1, idx & 1
        if a and j:
            v[idx] *= -1
        if j and b:
            v[idx] *= -1
    return v / np.linalg.norm(v)


# --- partial transpose on explicit density matrices ---


def graph_density(n, edges, lam):
    """``sum_s lam[s] Z^s|G><G|Z^s`` as a dense matrix."""
    base = graph_state_vector(n, edges)
    x = np.arange(1 << n)
    rho = np.zeros((1 << n, 1 << n))
    for s, w in enumerate(lam):
        if w == 0:
            continue
        sign = np.array([(-1.0) ** bin(s & k).count("1") for k in x])
        v = sign * base
        rho += w * np.outer(v, v)
    return rho


def partial_transpose(rho, n, side_a):
    """Transpose the qubits in ``side_a`` (bit ``i`` of an index is qubit ``i``)."""
    dim = 1 << n
    out = np.empty_like(rho)
    mask = sum(1 << q for q in side_a)
    for r in range(dim):
        for c in range(dim):
            # swap the A bits between row and column
            r2 = (r & ~mask) | (c & mask)
            c2 = (c & ~mask) | (r & mask)
            out[r2, c2] = rho[r, c]
    return out
