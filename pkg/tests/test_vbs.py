import cmath
import math

import numpy as np
import pytest

from gpurify.vbs import (
    PAULI_Z,
    PureState,
    ValenceProjector,
    VbsError,
    beta_from_alpha,
    build_initial,
    cluster_state,
    derive_p1,
    optimal_on_both_edges,
    optimality_condition,
    optimality_report,
    reconstruction_check,
    solve_beta,
    symmetric_p0,
    weighted_graph_projector,
    z_measure_pair,
)

from oracles import cluster3, initial_state


def random_projector(rng):
    z = rng.normal(size=(2, 2, 2)) + 1j * rng.normal(size=(2, 2, 2))
    return ValenceProjector(z[0], z[1])


def random_symmetric(rng):
    vals = rng.normal(size=6) + 1j * rng.normal(size=6)
    return symmetric_p0(*vals)


def alpha_nested(p):
    # alpha[j][i][k]
    return [[[p.entry(j, i, k) for k in range(2)] for i in range(2)] for j in range(2)]


def test_initial_state_matches_kronecker_products():
    rng = np.random.default_rng(0)
    for _ in range(10):
        p = random_projector(rng)
        ref = PureState(initial_state(alpha_nested(p)))
        assert build_initial(p).fidelity(ref) > 1 - 1e-12


def test_matrix_roundtrip():
    rng = np.random.default_rng(1)
    p = random_projector(rng)
    q = ValenceProjector.from_matrix(p.matrix())
    assert np.array_equal(q.alpha0, p.alpha0) and np.array_equal(q.alpha1, p.alpha1)
    assert p.entry(1, 0, 1) == p.alpha1[1, 0]


def test_cluster_from_weighted_graph():
    state = build_initial(weighted_graph_projector(math.pi, math.pi))
    assert state.fidelity(PureState(cluster3())) > 1 - 1e-12
    assert cluster_state().fidelity(PureState(cluster3())) > 1 - 1e-12


def test_optimality_over_theta_grid():
    for t1 in np.linspace(0, 2 * math.pi, 13):
        for t2 in np.linspace(0, 2 * math.pi, 13):
            p = weighted_graph_projector(t1, t2)
            assert optimality_condition(p)
            assert optimal_on_both_edges(p)


def test_symmetric_family_is_optimal_and_rebuilds():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        p = random_symmetric(rng)
        assert optimality_condition(p)
        assert reconstruction_check(p, derive_p1(p))


def test_perturbation_breaks_reconstruction():
    rng = np.random.default_rng(8)
    for _ in range(50):
        p = random_symmetric(rng)
        p1 = derive_p1(p)
        bumped = ValenceProjector(p1.alpha0, p1.alpha1 + 1e-3 * np.array([[0, 1], [0, 0]]))
        assert not reconstruction_check(p, bumped)


def test_generic_projector_fails_condition():
    rng = np.random.default_rng(3)
    fails = sum(not optimality_condition(random_projector(rng)) for _ in range(50))
    assert fails == 50
    with pytest.raises(VbsError):
        derive_p1(random_projector(np.random.default_rng(4)))


def test_commutator_and_diagonal_tests_agree():
    rng = np.random.default_rng(5)
    for make in (random_projector, random_symmetric):
        for _ in range(30):
            r = optimality_report(make(rng))
            assert r.method == "commutator"
            assert r.diagonal_check is None or r.diagonal_check == r.satisfied


def test_beta_conditions():
    p = random_symmetric(np.random.default_rng(9))
    b0, b1 = beta_from_alpha(p)
    assert np.allclose(b0, np.eye(2))
    assert np.allclose(b1 @ p.alpha0, p.alpha1)
    s0, s1 = solve_beta(p)
    assert np.allclose(s1 @ PAULI_Z @ p.alpha0, PAULI_Z @ p.alpha1)


def test_singular_alpha0_uses_linear_system():
    # alpha^0 of rank one: the measured pair is a product state
    p = ValenceProjector(np.array([[1, 1], [0, 0]]), np.array([[1, -1], [0, 0]]))
    r = optimality_report(p)
    assert r.method == "linear-system" and math.isnan(r.commutator_norm)
    pair = z_measure_pair(p)
    assert not pair.entangled
    with pytest.raises(VbsError):
        beta_from_alpha(p)


def test_measured_pair_of_cluster_is_maximally_entangled():
    pair = z_measure_pair(weighted_graph_projector(math.pi, math.pi))
    assert pair.schmidt == pytest.approx((1 / math.sqrt(2), 1 / math.sqrt(2)), abs=1e-12)
    assert pair.entangled


def test_swapped_exchanges_inputs():
    rng = np.random.default_rng(6)
    p = random_projector(rng)
    q = p.swapped()
    for j in range(2):
        for i in range(2):
            for k in range(2):
                assert q.entry(j, i, k) == p.entry(j, k, i)
    assert np.array_equal(q.swapped().matrix(), p.matrix())


def test_validation():
    with pytest.raises(VbsError):
        ValenceProjector(np.zeros((2, 2)), np.zeros((2, 2)))
    with pytest.raises(VbsError):
        ValenceProjector(np.eye(3), np.eye(2))
    with pytest.raises(VbsError):
        symmetric_p0(1, 1, 0, 1, 1, 1)
    with pytest.raises(VbsError):
        PureState(np.ones(3))
    with pytest.raises(VbsError):
        z_measure_pair(ValenceProjector(np.zeros((2, 2)), np.eye(2)))


def test_phase_alignment_and_scaling():
    p = weighted_graph_projector(0.3, 1.1)
    a = build_initial(p)
    b = build_initial(p.scaled(cmath.exp(0.7j) * 3))
    assert np.allclose(a.phase_aligned(), b.phase_aligned(), atol=1e-14)
    assert optimality_condition(p.scaled(2j))
