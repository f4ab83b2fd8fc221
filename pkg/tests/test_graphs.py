import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcg_lab.graphs import (
    Graph,
    complement,
    disjoint_union,
    double_complement_prime,
    edge_key,
    from_graph6,
    graph_from_json,
    graph_to_json,
    standard_graph,
    to_graph6,
)


def random_graph(n, rng, p=0.5):
    verts = tuple(f"v{i}" for i in range(n))
    edges = frozenset(
        edge_key(u, v)
        for u, v in itertools.combinations(verts, 2)
        if rng.random() < p
    )
    return Graph(verts, edges)


def test_no_self_loops():
    with pytest.raises(ValueError):
        Graph(("a", "b"), frozenset({("a", "a")}))


def test_edge_endpoints_must_exist():
    with pytest.raises(ValueError):
        Graph(("a", "b"), frozenset({("a", "c")}))


def test_edges_stored_canonically():
    g = Graph(("b", "a"), frozenset({("b", "a")}))
    assert g.edges == frozenset({("a", "b")})
    assert g.has_edge("a", "b") and g.has_edge("b", "a")


def test_equality_ignores_vertex_order():
    g1 = Graph(("a", "b", "c"), frozenset({("a", "b")}))
    g2 = Graph(("c", "b", "a"), frozenset({("a", "b")}))
    assert g1 == g2 and hash(g1) == hash(g2)


def test_standard_graphs():
    assert len(standard_graph("complete", 3).edges) == 3
    k22 = standard_graph("complete_bipartite", 2, 2)
    assert k22.n == 4 and len(k22.edges) == 4
    assert all(d == 2 for d in (k22.degree(v) for v in k22.vertices))
    c5 = standard_graph("cycle", 5)
    assert c5.n == 5 and len(c5.edges) == 5
    assert all(c5.degree(v) == 2 for v in c5.vertices)
    assert len(standard_graph("empty", 4).edges) == 0
    with pytest.raises(ValueError):
        standard_graph("cycle", 2)
    with pytest.raises(ValueError):
        standard_graph("complete", 0)


def test_complement_of_complete_is_empty():
    assert complement(standard_graph("complete", 4)) == standard_graph("empty", 4)


def test_complement_of_c4_is_two_disjoint_edges():
    c4 = standard_graph("cycle", 4)
    assert complement(c4).edges == frozenset({("v0", "v2"), ("v1", "v3")})


def test_complement_involution_on_random_graphs():
    rng = random.Random(1)
    for _ in range(50):
        g = random_graph(8, rng)
        assert complement(complement(g)) == g


def test_disjoint_union_basic():
    k2 = standard_graph("complete", 2)
    u = disjoint_union([k2, k2], relabel=True)
    assert u.n == 4 and len(u.edges) == 2
    assert set(u.vertices) == {"c0.v0", "c0.v1", "c1.v0", "c1.v1"}


def test_disjoint_union_k22_pair():
    k22 = standard_graph("complete_bipartite", 2, 2)
    u = disjoint_union([k22, k22], relabel=True)
    assert u.n == 8 and len(u.edges) == 8
    assert len(complement(u).edges) == 28 - 8


def test_disjoint_union_rejects_label_clash():
    k2 = standard_graph("complete", 2)
    with pytest.raises(ValueError):
        disjoint_union([k2, k2])


def test_double_complement_prime_of_k1():
    g = double_complement_prime(standard_graph("complete", 1))
    assert g.n == 2 and len(g.edges) == 1


def test_double_complement_prime_of_c4():
    g = double_complement_prime(standard_graph("cycle", 4))
    assert g.n == 8 and len(g.edges) == 20


def test_double_complement_prime_of_empty2_is_k4():
    # brute-force pair classification: within-copy pairs become edges
    # (complement of the empty graph), all four cross pairs are edges
    g = double_complement_prime(standard_graph("empty", 2))
    assert g.n == 4
    assert len(g.edges) == 6
    for u, v in itertools.combinations(g.vertices, 2):
        assert g.has_edge(u, v)


def test_double_complement_prime_matches_two_step_construction():
    rng = random.Random(2)
    for _ in range(20):
        g = random_graph(rng.randint(1, 6), rng)
        expected = complement(disjoint_union([g, g], relabel=True))
        assert double_complement_prime(g) == expected


@settings(max_examples=60)
@given(st.integers(1, 7), st.randoms(use_true_random=False))
def test_double_complement_prime_edge_count_identity(n, rng):
    g = random_graph(n, rng)
    e = len(g.edges)
    expected = 2 * (n * (n - 1) // 2 - e) + n * n
    assert len(double_complement_prime(g).edges) == expected


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def test_graph6_known_strings():
    assert to_graph6(standard_graph("complete", 4)) == "C~"
    assert to_graph6(standard_graph("cycle", 4)) == "Cl"
    p5 = Graph(tuple(f"v{i}" for i in range(5)),
               frozenset(edge_key(f"v{i}", f"v{i+1}") for i in range(4)))
    assert to_graph6(p5) == "DhC"


def test_graph6_round_trip_random():
    rng = random.Random(3)
    for _ in range(30):
        g = random_graph(rng.randint(1, 12), rng)
        back = from_graph6(to_graph6(g))
        assert back.n == g.n
        assert back.edges == g.edges  # labels are v0.. in both


def test_graph6_matches_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(1, 10)
        g = random_graph(n, rng)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(
            (int(u[1:]), int(v[1:])) for u, v in g.edges
        )
        want = nx.to_graph6_bytes(h, header=False).strip().decode()
        assert to_graph6(g) == want


def test_graph6_header_and_errors():
    g = from_graph6(">>graph6<<C~")
    assert len(g.edges) == 6
    with pytest.raises(ValueError):
        from_graph6("C")  # truncated body
    with pytest.raises(ValueError):
        from_graph6("")


def test_graph6_rejects_large_graphs():
    big = standard_graph("empty", 63)
    with pytest.raises(ValueError):
        to_graph6(big)


def test_json_round_trip():
    g = standard_graph("cycle", 5)
    data = json.loads(json.dumps(graph_to_json(g)))
    assert graph_from_json(data) == g


def test_connected_components():
    k2 = standard_graph("complete", 2)
    u = disjoint_union([k2, k2, standard_graph("empty", 1)], relabel=True)
    comps = u.connected_components()
    assert sorted(len(c) for c in comps) == [1, 2, 2]
