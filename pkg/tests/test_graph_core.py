import itertools
import random

import pytest

from gpurify.graph_core import (
    Bipartition,
    Graph,
    GraphError,
    GraphSpecError,
    OrbitLimitError,
    canonical,
    components,
    is_isomorphic,
    is_lr,
    is_lr_bipartition,
    labeled_lc_orbit_size,
    lc_orbit,
    local_complement,
    lr_witness,
    make_named,
    parse_edge_file,
    two_coloring,
    z_delete,
)

from oracles import brute_canonical, brute_local_complement, brute_lr_any, brute_lr_connected


def random_graph(n, density, rng):
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < density])


def test_named_chain_and_complete():
    assert make_named("chain:3").edges == [(0, 1), (1, 2)]
    assert make_named("complete:3").num_edges == 3
    assert make_named("star:4").edges == [(0, 1), (0, 2), (0, 3)]
    assert make_named("cycle:5").degrees == (2,) * 5


def test_icosahedron_is_five_regular():
    g = make_named("icosahedron")
    assert g.n == 12
    assert g.num_edges == 30
    assert set(g.degrees) == {5}
    assert g.is_connected()


def test_grid_shape():
    g = make_named("grid:2x3")
    assert g.n == 6 and g.num_edges == 7
    assert g.max_degree == 3


@pytest.mark.parametrize("spec", ["chain", "chain:0", "chain:33", "blob:3", "grid:3", "pentagon:2", "chain:x"])
def test_bad_specs(spec):
    with pytest.raises(GraphSpecError):
        make_named(spec)


def test_spec_error_reports_position():
    with pytest.raises(GraphSpecError) as info:
        make_named("grid:3xq")
    assert info.value.position == 7


def test_edge_file(tmp_path):
    f = tmp_path / "g.edges"
    f.write_text("# triangle\n3\n0 1\n1 2  # inline\n0 2\n")
    assert parse_edge_file(f).num_edges == 3
    f.write_text("3\n0 1\n1 0\n")
    with pytest.raises(GraphError):
        parse_edge_file(f)
    f.write_text("3\n0 1 2\n")
    with pytest.raises(GraphError):
        parse_edge_file(f)


def test_graph_rejects_self_loop():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])


def test_lr_examples():
    w = lr_witness(make_named("chain:5"))
    assert w is not None and is_lr_bipartition(make_named("chain:5"), w)
    assert w.side_a == [0]
    assert not is_lr(make_named("complete:3"))
    assert not is_lr(make_named("icosahedron"))
    assert is_lr(make_named("pentagon"))


def test_lr_matches_exhaustive_scan_connected():
    rng = random.Random(7)
    checked = 0
    for n in range(2, 11):
        for _ in range(25 if n <= 8 else 6):
            g = random_graph(n, rng.choice([0.25, 0.4, 0.6]), rng)
            if not g.is_connected():
                continue
            checked += 1
            w = lr_witness(g)
            assert (w is not None) == brute_lr_connected(n, g.edges)
            if w is not None:
                assert is_lr_bipartition(g, w)
    assert checked > 60


def test_lr_disconnected_uses_components():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(2, 7)
        g = random_graph(n, 0.3, rng)
        assert is_lr(g) == brute_lr_any(n, g.edges)
    # triangle plus an isolated vertex: the triangle itself cannot be cut
    assert not is_lr(Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)]))
    assert is_lr(Graph(3, (0, 0, 0)))


def test_components():
    g = Graph.from_edges(5, [(0, 3), (1, 4)])
    assert components(g) == [0b01001, 0b10010, 0b00100]


def test_local_complement_rules():
    assert local_complement(make_named("chain:3"), 1).num_edges == 3
    assert is_isomorphic(local_complement(make_named("star:4"), 0), make_named("complete:4"))
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(2, 8)
        g = random_graph(n, 0.5, rng)
        v = rng.randrange(n)
        h = local_complement(g, v)
        assert h.edges == brute_local_complement(n, g.edges, v)
        assert local_complement(h, v) == g
        assert h.is_connected() == g.is_connected()
    with pytest.raises(GraphError):
        local_complement(make_named("chain:3"), 3)


def test_z_delete():
    assert z_delete(make_named("chain:3"), 1).num_edges == 0
    assert z_delete(make_named("chain:3"), 0).edges == [(0, 1)]
    assert is_isomorphic(z_delete(make_named("complete:4"), 2), make_named("complete:3"))


def test_z_delete_commutes_with_relabeling():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(3, 8)
        g = random_graph(n, 0.5, rng)
        perm = list(range(n))
        rng.shuffle(perm)
        v = rng.randrange(n)
        assert is_isomorphic(z_delete(g.permute(perm), perm[v]), z_delete(g, v))


def test_two_coloring():
    assert two_coloring(make_named("chain:4")) == ([0, 2], [1, 3])
    assert two_coloring(make_named("complete:3")) is None
    assert two_coloring(make_named("pentagon")) is None
    a, b = two_coloring(make_named("grid:3x3"))
    assert 0 in a and len(a) == 5


def test_canonical_simple():
    g = make_named("chain:3")
    assert canonical(g) == canonical(g.permute([2, 1, 0]))
    assert canonical(g) != canonical(make_named("complete:3"))
    assert canonical(canonical(g).to_graph()) == canonical(g)


def test_canonical_all_relabelings_n7():
    rng = random.Random(2)
    g = random_graph(7, 0.45, rng)
    forms = {canonical(g.permute(p)) for p in itertools.permutations(range(7))}
    assert len(forms) == 1


def test_canonical_agrees_with_brute_force_classes():
    rng = random.Random(9)
    graphs = [random_graph(6, rng.choice([0.3, 0.5, 0.7]), rng) for _ in range(80)]
    for g, h in itertools.combinations(graphs[:40], 2):
        same = brute_canonical(6, g.edges) == brute_canonical(6, h.edges)
        assert (canonical(g) == canonical(h)) == same


def test_canonical_regular_graphs():
    # vertex-transitive inputs stress the backtracking
    for spec in ("cycle:8", "icosahedron", "grid:3x3"):
        g = make_named(spec)
        rng = random.Random(0)
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert canonical(g.permute(perm)) == canonical(g)
    assert canonical(make_named("cycle:8")) != canonical(
        Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])
    )


def test_lc_orbit_small():
    assert lc_orbit(make_named("chain:2"), up_to_iso=False).labeled_size == 1
    orb = lc_orbit(make_named("chain:3"))
    assert orb.class_count == 2
    assert canonical(make_named("complete:3")) in orb.classes


def test_lc_orbit_closed():
    orb = lc_orbit(make_named("cycle:5"))
    for c in orb.classes:
        g = c.to_graph()
        for v in range(g.n):
            assert canonical(local_complement(g, v)) in orb.classes


def test_icosahedron_orbit():
    orb = lc_orbit(make_named("icosahedron"))
    assert orb.class_count == 54
    assert not any(is_lr(c.to_graph()) for c in orb.classes)


def test_orbit_cap():
    with pytest.raises(OrbitLimitError):
        lc_orbit(make_named("cycle:6"), cap=2)
    with pytest.raises(OrbitLimitError):
        labeled_lc_orbit_size(make_named("cycle:6"), cap=2)


def test_bipartition_validation():
    with pytest.raises(GraphError):
        Bipartition(3, 0)
    with pytest.raises(GraphError):
        Bipartition(3, 0b111)
    part = Bipartition(4, 0b0011)
    assert part.side_a == [0, 1] and part.side_b == [2, 3]
    assert part.crossing_edges(make_named("chain:4")) == [(1, 2)]
