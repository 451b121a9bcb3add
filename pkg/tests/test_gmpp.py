import numpy as np
import pytest

from gpurify.diag_state import Depol, DiagonalState, GlobalNoise, from_noise
from gpurify.gmpp import (
    ColoredState,
    GmppError,
    classify_attractor,
    color_graph_state,
    color_state,
    p1_step,
    p2_step,
    parse_sequence,
    regime_edge,
    run_sequence,
    search_regime,
)
from gpurify.graph_core import Graph, make_named


def brute_p1(m):
    na, nb = m.shape
    out = np.zeros_like(m)
    for a in range(na):
        for b in range(nb):
            out[a, b] = sum(m[a, c] * m[a, b ^ c] for c in range(nb))
    return out


def colored(matrix, na, nb):
    return ColoredState(np.asarray(matrix, dtype=float), tuple(range(na)), tuple(range(na, na + nb)))


def test_p1_hand_example():
    cs = colored([[0.6, 0.2], [0.1, 0.1]], 1, 1)
    out, s = p1_step(cs)
    assert s == pytest.approx(0.68, abs=1e-15)
    assert np.allclose(out.matrix * s, [[0.40, 0.24], [0.02, 0.02]], atol=1e-15)
    assert out.fidelity == pytest.approx(0.40 / 0.68, abs=1e-15)


def test_p2_mirrors_p1():
    m = np.array([[0.6, 0.2], [0.1, 0.1]])
    a, sa = p1_step(colored(m, 1, 1))
    b, sb = p2_step(colored(m.T, 1, 1))
    assert sa == pytest.approx(sb, abs=1e-15)
    assert np.allclose(a.matrix, b.matrix.T, atol=1e-15)


def test_steps_match_brute_force():
    rng = np.random.default_rng(3)
    for na, nb in [(1, 2), (2, 2), (3, 1), (2, 3)]:
        m = rng.random((1 << na, 1 << nb))
        m /= m.sum()
        ref = brute_p1(m)
        out, s = p1_step(colored(m, na, nb))
        assert s == pytest.approx(ref.sum(), abs=1e-14)
        assert np.allclose(out.matrix, ref / ref.sum(), atol=1e-14)
        ref2 = brute_p1(m.T).T
        out2, s2 = p2_step(colored(m, na, nb))
        assert np.allclose(out2.matrix, ref2 / ref2.sum(), atol=1e-14)


def test_p2_on_b_only_errors():
    # with errors confined to B the A index is always 0, so P2 squares that row
    m = np.zeros((2, 4))
    m[0] = [0.7, 0.1, 0.15, 0.05]
    out, s = p2_step(colored(m, 1, 2))
    assert s == pytest.approx((m[0] ** 2).sum(), abs=1e-15)
    assert np.allclose(out.matrix[0], m[0] ** 2 / s, atol=1e-15)
    assert np.all(out.matrix[1] == 0)


def test_pure_and_uniform_fixed_points():
    pure = color_state(DiagonalState.pure(3), [0, 2], [1])
    for step in (p1_step, p2_step):
        out, s = step(pure)
        assert s == 1.0 and out.fidelity == 1.0
        uni = colored(np.full((4, 2), 1 / 8), 2, 1)
        assert np.allclose(step(uni)[0].matrix, 1 / 8, atol=1e-15)


def test_p1_with_empty_b_is_identity():
    m = np.array([[0.3], [0.2], [0.4], [0.1]])
    out, s = p1_step(colored(m, 2, 0))
    assert np.allclose(out.matrix, m, atol=1e-15)


def test_geometry_independence_bitwise():
    lam = from_noise(make_named("chain:4"), Depol(0.2))
    # same colour sizes and the same weight vector on a different graph
    g1 = make_named("chain:4")
    g2 = Graph.from_edges(4, [(0, 1), (0, 3), (2, 1), (2, 3)])
    a = color_graph_state(g1, lam)
    b = color_graph_state(g2, lam)
    assert a.side_a == b.side_a and a.side_b == b.side_b
    for steps in (["P1"], ["P2", "P1", "P1"]):
        ta = run_sequence(a, steps)
        tb = run_sequence(b, steps)
        assert np.array_equal(ta.final.matrix, tb.final.matrix)


def test_relabel_equivariance():
    rng = np.random.default_rng(5)
    m = rng.random((4, 4))
    m /= m.sum()
    perm = np.arange(4) ^ 0b10
    a, _ = p1_step(colored(m[perm], 2, 2))
    b, _ = p1_step(colored(m, 2, 2))
    assert np.allclose(a.matrix, b.matrix[perm], atol=1e-15)


def test_normalization_after_many_steps():
    cs = color_graph_state(make_named("chain:5"), from_noise(make_named("chain:5"), Depol(0.15)))
    tr = run_sequence(cs, ["P1", "P2"] * 20)
    assert abs(tr.final.matrix.sum() - 1) < 1e-12
    assert all(0 < r.success_prob <= 1 + 1e-12 for r in tr.records)


def werner(f):
    return DiagonalState(2, np.array([f, (1 - f) / 3, (1 - f) / 3, (1 - f) / 3]))


def test_werner_alternation():
    tr = run_sequence(color_state(werner(0.75), [0], [1]), ["P1", "P2"] * 6)
    fids = [tr.initial_fidelity] + [r.fidelity for r in tr.records]
    rounds = fids[::2]
    assert all(b > a for a, b in zip(rounds, rounds[1:]))
    low = run_sequence(color_state(werner(0.5), [0], [1]), ["P1", "P2"] * 20)
    assert max(r.fidelity for r in low.records) <= 0.5 + 1e-12


def test_trace_csv():
    tr = run_sequence(color_state(werner(0.7), [0], [1]), parse_sequence("P1P2"))
    lines = tr.to_csv().splitlines()
    assert lines[0] == "step,kind,fidelity,success_prob"
    assert lines[1].startswith("1,P1,")
    assert len(lines) == 3


def test_parse_sequence():
    assert parse_sequence("P1,P2 p1") == ["P1", "P2", "P1"]
    assert parse_sequence("212") == ["P2", "P1", "P2"]
    with pytest.raises(GmppError):
        parse_sequence("P3")
    with pytest.raises(GmppError):
        run_sequence(color_state(werner(0.7), [0], [1]), [])


def test_coloring_errors():
    g = make_named("complete:3")
    with pytest.raises(GmppError):
        color_graph_state(g, DiagonalState.pure(3))
    with pytest.raises(GmppError):
        color_graph_state(make_named("chain:3"), DiagonalState.pure(3), ([0, 1], [2]))


def test_to_state_roundtrip():
    s = from_noise(make_named("chain:5"), Depol(0.1))
    cs = color_state(s, [4, 1, 2], [0, 3])
    assert cs.to_state().allclose(s, atol=0)


def test_two_qubit_depol_purifies_below_bound():
    g = make_named("chain:2")
    v = search_regime(color_graph_state(g, from_noise(g, Depol(0.31))))
    assert v.purifiable


def test_ghz5_global_noise():
    g = make_named("star:5")
    cs = color_graph_state(g, from_noise(g, GlobalNoise(2.024)))
    assert cs.side_a == (0,)
    v = search_regime(cs)
    assert v.purifiable and v.best_fidelity > 1 - 1e-9


def test_chain3_depol_0331():
    g = make_named("chain:3")
    v = search_regime(color_graph_state(g, from_noise(g, Depol(0.331))))
    assert v.purifiable
    assert v.steps_used <= 300


def test_chain4_attractor():
    g = make_named("chain:4")
    v = search_regime(color_graph_state(g, from_noise(g, Depol(0.32))))
    assert not v.purifiable
    assert v.attractor_estimate == 0.25


def test_regime_edge_chain4():
    g = make_named("chain:4")
    lo, hi = regime_edge(lambda p: color_graph_state(g, from_noise(g, Depol(p))), 0.28, 0.30, tol=1e-3)
    # frozen from a bisection run at 1e-8 resolution: 0.29370
    assert lo <= 0.293696 <= hi


def test_classify_attractor():
    assert classify_attractor(0.25 + 5e-7, 4) == 0.25
    assert classify_attractor(0.3, 4) is None
    assert classify_attractor(1 / 32, 4) is None


def test_search_is_deterministic():
    g = make_named("chain:3")
    cs = color_graph_state(g, from_noise(g, Depol(0.25)))
    assert search_regime(cs, max_steps=40) == search_regime(cs, max_steps=40)


def test_unknown_strategy():
    with pytest.raises(GmppError):
        search_regime(color_state(werner(0.7), [0], [1]), strategies=("magic",))
