"""Explicit graph families and their witness representations.

Every constructor returns the graph together with a representation that
is verified on the spot (construction fails loudly if a witness ever
stops matching its graph).  Fixture edge lists are stored as golden
data and double-checked against evaluation of the witness trees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graphs import (
    Graph,
    complement,
    disjoint_union,
    edge_key,
    standard_graph,
)
from .predicates import (
    IntervalSet,
    PcgRep,
    ThresholdRep,
    eval_pcg,
    eval_threshold,
    evaluate,
    verify_representation,
)
from .recognizer import recognize_pcg
from .trees import WeightedTree, from_newick


@dataclass(frozen=True, eq=False)
class WitnessedGraph:
    """A graph bundled with a verified representation (when one is in scope)."""

    graph: Graph
    witness: object  # PcgRep | ThresholdRep | None
    provenance: str

    def __post_init__(self):
        if self.witness is not None:
            report = verify_representation(self.witness, self.graph)
            if not report.valid:
                raise ValueError(
                    f"witness for {self.provenance!r} does not match its graph: "
                    f"{report.mismatches()}"
                )


# ---------------------------------------------------------------------------
# padding predicates: complete and empty graphs are trivially representable
# ---------------------------------------------------------------------------

def star_tree(labels: Sequence[str], weight=1) -> WeightedTree:
    """Star with one leaf per label; a single label gives the one-node tree."""
    labels = tuple(labels)
    if not labels:
        raise ValueError("need at least one label")
    if len(labels) == 1:
        return WeightedTree(("lf0",), (), (("lf0", labels[0]),), "lf0")
    nodes = ("hub",) + tuple(f"lf{i}" for i in range(len(labels)))
    edges = tuple(("hub", f"lf{i}", Fraction(weight)) for i in range(len(labels)))
    leaf_labels = tuple((f"lf{i}", lab) for i, lab in enumerate(labels))
    return WeightedTree(nodes, edges, leaf_labels, "hub")


def complete_witness(labels: Sequence[str]) -> PcgRep:
    """Unit star with interval [2,2]: every leaf pair is at distance 2."""
    labels = tuple(labels)
    return PcgRep(star_tree(labels),
                  tuple((lab, lab) for lab in labels),
                  IntervalSet.closed(2, 2))


def empty_witness(labels: Sequence[str]) -> PcgRep:
    """Unit star with the empty interval set: accepts no pair at all."""
    labels = tuple(labels)
    return PcgRep(star_tree(labels),
                  tuple((lab, lab) for lab in labels),
                  IntervalSet.empty())


# ---------------------------------------------------------------------------
# padding a union/intersection decomposition up to any threshold
# ---------------------------------------------------------------------------

def pad_or_to_threshold(target: Graph, decomposition: Sequence[PcgRep],
                        t: int) -> ThresholdRep:
    """Turn a q-predicate union decomposition into an (n,t) threshold rep.

    Valid for 1 <= t <= n-q+1: on top of the q inputs, t-1 complete
    predicates push every true edge to t votes while non-edges stay at
    t-1; empty predicates fill the count up to n.
    """
    preds = tuple(decomposition)
    if not preds:
        raise ValueError("need at least one predicate in the decomposition")
    q = len(preds)
    n = target.n
    if set(preds[0].vertices) != set(target.vertices):
        raise ValueError("decomposition vertices differ from the target's")
    union_edges = set()
    for p in preds:
        union_edges |= eval_pcg(p).edges
    if union_edges != target.edges:
        raise ValueError("union of the decomposition is not the target graph")
    if not 1 <= t <= n - q + 1:
        raise ValueError(f"t={t} outside 1..{n - q + 1} for n={n}, q={q}")
    labels = tuple(sorted(target.vertices))
    preds = preds + tuple(complete_witness(labels) for _ in range(t - 1))
    preds = preds + tuple(empty_witness(labels)
                          for _ in range(n - q - (t - 1)))
    assert len(preds) == n
    return ThresholdRep(preds, t)


def pad_and_to_threshold(target: Graph, decomposition: Sequence[PcgRep],
                         t: int) -> ThresholdRep:
    """Turn a q-predicate intersection decomposition into an (n,t) rep.

    Valid for q <= t <= n: true edges collect q + (t-q) = t votes, and a
    non-edge misses at least one input so it tops out at t-1.
    """
    preds = tuple(decomposition)
    if not preds:
        raise ValueError("need at least one predicate in the decomposition")
    q = len(preds)
    n = target.n
    if set(preds[0].vertices) != set(target.vertices):
        raise ValueError("decomposition vertices differ from the target's")
    inter_edges = None
    for p in preds:
        e = eval_pcg(p).edges
        inter_edges = e if inter_edges is None else inter_edges & e
    if inter_edges != target.edges:
        raise ValueError("intersection of the decomposition is not the target")
    if not q <= t <= n:
        raise ValueError(f"t={t} outside {q}..{n} for n={n}, q={q}")
    labels = tuple(sorted(target.vertices))
    preds = preds + tuple(complete_witness(labels) for _ in range(t - q))
    preds = preds + tuple(empty_witness(labels) for _ in range(n - t))
    assert len(preds) == n
    return ThresholdRep(preds, t)


def universality_witness(g: Graph, t: int,
                         or_decomposition: Sequence[PcgRep] | None = None,
                         and_decomposition: Sequence[PcgRep] | None = None,
                         ) -> ThresholdRep:
    """(n,t)-threshold representation of g for any threshold 1 <= t <= n.

    Up to 7 vertices the exact recognizer supplies a single-predicate
    decomposition, and union padding alone covers every t.  Beyond 7
    vertices a caller-supplied union or intersection decomposition is
    required; the known general-purpose decompositions are external
    results and are deliberately not reproduced here.
    """
    n = g.n
    if not 1 <= t <= n:
        raise ValueError(f"t={t} outside 1..{n}")
    if or_decomposition is not None and t <= n - len(or_decomposition) + 1:
        return pad_or_to_threshold(g, or_decomposition, t)
    if and_decomposition is not None and t >= len(and_decomposition):
        return pad_and_to_threshold(g, and_decomposition, t)
    if or_decomposition is not None or and_decomposition is not None:
        raise ValueError(f"t={t} outside both padding ranges of the "
                         "supplied decompositions")
    if n > 7:
        raise ValueError(
            "graphs beyond 7 vertices need a caller-supplied decomposition"
        )
    result = recognize_pcg(g, max_n=7)
    if result.status != "witness":
        raise RuntimeError("exhaustive search failed on a small graph; "
                           "this contradicts the small-order universality")
    return pad_or_to_threshold(g, [result.witness], t)


# ---------------------------------------------------------------------------
# the strict-hierarchy family: Q_t, F_k and G_k
# ---------------------------------------------------------------------------

def _hierarchy_vertices(k: int) -> tuple[str, ...]:
    """Vertex labels of G_k: k+1 relabeled copies of a 2k+2k bipartition."""
    return disjoint_union(
        [standard_graph("complete_bipartite", 2 * k, 2 * k)] * (k + 1),
        relabel=True,
    ).vertices


def build_qt_witness(k: int, t: int) -> WitnessedGraph:
    """The complete graph minus one bipartite block, with its tree witness.

    The tree hangs the two deleted sides on hubs at distance 20 from
    each other (via 10+10 spokes) and everything else on a near hub, so
    leaf distances take only the values 2, 13 and 22; the interval
    [2,13] then cuts exactly the deleted block.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if not 1 <= t <= k + 1:
        raise ValueError(f"t={t} outside 1..{k + 1}")
    verts = _hierarchy_vertices(k)
    side_a = tuple(v for v in verts if v.startswith(f"c{t - 1}.a"))
    side_b = tuple(v for v in verts if v.startswith(f"c{t - 1}.b"))
    removed = {edge_key(u, v) for u in side_a for v in side_b}
    edges = frozenset(
        edge_key(u, v)
        for u, v in itertools.combinations(verts, 2)
        if edge_key(u, v) not in removed
    )
    graph = Graph(verts, edges)

    hub = {v: "xt" for v in side_a}
    hub.update({v: "yt" for v in side_b})
    nodes = ["rt", "xt", "yt", "zt"]
    tree_edges = [
        ("rt", "xt", Fraction(10)),
        ("rt", "yt", Fraction(10)),
        ("rt", "zt", Fraction(1)),
    ]
    leaf_labels = []
    for i, v in enumerate(verts):
        node = f"lf{i}"
        nodes.append(node)
        tree_edges.append((hub.get(v, "zt"), node, Fraction(1)))
        leaf_labels.append((node, v))
    tree = WeightedTree(tuple(nodes), tuple(tree_edges),
                        tuple(leaf_labels), "rt")
    witness = PcgRep(tree, tuple((v, v) for v in verts),
                     IntervalSet.closed(2, 13))
    return WitnessedGraph(graph, witness,
                          f"hierarchy/Q(k={k},t={t})")


def build_fk_family(k: int) -> Graph:
    """Disjoint union of k+1 copies of the complete bipartite 2k+2k graph."""
    if k < 1:
        raise ValueError("need k >= 1")
    return disjoint_union(
        [standard_graph("complete_bipartite", 2 * k, 2 * k)] * (k + 1),
        relabel=True,
    )


def build_gk_family(k: int) -> WitnessedGraph:
    """Complement of the bipartite-union family, with its (k+1)-fold
    intersection witness assembled from the Q_t trees."""
    graph = complement(build_fk_family(k))
    preds = tuple(
        build_qt_witness(k, t).witness for t in range(1, k + 2)
    )
    witness = ThresholdRep(preds, k + 1)
    return WitnessedGraph(graph, witness, f"hierarchy/G(k={k})")


# ---------------------------------------------------------------------------
# set-system incidence graphs
# ---------------------------------------------------------------------------

def incidence_graph(ground: Sequence[str], family: Sequence[Iterable[str]]) -> Graph:
    """Bipartite graph whose right-side neighborhoods are exactly the sets.

    Duplicate sets yield distinct twin vertices.  Right-side labels are
    "b<i>:<members>" with i the position in the family.
    """
    ground = tuple(ground)
    if len(set(ground)) != len(ground):
        raise ValueError("ground labels must be distinct")
    order = {a: i for i, a in enumerate(ground)}
    verts = list(ground)
    edges = set()
    for i, subset in enumerate(family):
        members = sorted(set(subset), key=lambda a: order.get(a, -1))
        for a in members:
            if a not in order:
                raise ValueError(f"set member {a!r} is outside the ground set")
        label = f"b{i}:" + ",".join(members)
        if label in order:
            raise ValueError(f"ground label {label!r} clashes with a set label")
        verts.append(label)
        for a in members:
            edges.add(edge_key(a, label))
    return Graph(tuple(verts), frozenset(edges))


def uniform_incidence_graph(p: int, q: int) -> Graph:
    """Incidence graph of all q-subsets of a p-element ground set."""
    if not 0 <= q <= p:
        raise ValueError("need 0 <= q <= p")
    ground = tuple(f"a{i}" for i in range(p))
    family = [list(c) for c in itertools.combinations(ground, q)]
    return incidence_graph(ground, family)


def family_Hy(y: int) -> Graph:
    """The hard incidence family: all (2y-1)-subsets of a (4y-3)-set."""
    if y < 1:
        raise ValueError("need y >= 1")
    return uniform_incidence_graph(4 * y - 3, 2 * y - 1)


def family_Fr(r: int, cap: int = 8) -> Graph:
    """Recursive complement-of-two-copies family starting from the 4-cycle."""
    if r < 1:
        raise ValueError("need r >= 1")
    if r > cap:
        raise ValueError(f"r={r} exceeds the configured cap {cap} "
                         f"(2^{r + 1} vertices)")
    g = standard_graph("cycle", 4)
    for _ in range(r - 1):
        g = complement(disjoint_union([g, g], relabel=True))
    return g


# ---------------------------------------------------------------------------
# figure fixtures (golden edge lists re-derived from the witness trees)
# ---------------------------------------------------------------------------

_FIG1_NEWICK = "((a:1,c:2,e:3,g:4)L:10,(f:4,h:3,b:2,d:1)R:10)r;"

_FIG1_PANEL_B = [
    "ae", "ag", "ce", "cg", "eg",
    "fh", "bf", "df", "bh", "dh",
    "ad", "ab", "cd",
]

_FIG1_PANEL_C = [
    "ac", "ae", "ag", "ce", "cg", "eg",
    "bd", "bf", "bh", "df", "dh", "fh",
    "af", "ch", "be", "dg",
]

_FIG2_T1_NEWICK = (
    "((((((g:0,d:12)s5:1,f:9)s4:3,h:6)s3:6,c:8)s2:1,a:5)s1:1,b:0,e:12)r;"
)

_FIG2_T2_NEWICK = (
    "((((d:1,c:3)s3:1,a:6)s2:4,(g:7,f:1)t1:3)s1:4,b:10,e:0,h:8)r;"
)

_FIG2_COMMON = [
    "ac", "ae", "af", "ag", "bd", "be", "bf", "bh",
    "ce", "cg", "ch", "df", "dg", "dh", "eg", "fh",
]
_FIG2_H1_ONLY = ["ah", "bg"]
_FIG2_H2_ONLY = ["cf", "de"]


def _edge_set(pairs: Iterable[str]) -> frozenset:
    return frozenset(edge_key(p[0], p[1]) for p in pairs)


def _letters_graph(pairs: Iterable[str]) -> Graph:
    return Graph(tuple("abcdefgh"), _edge_set(pairs))


def _identity_rep(tree: WeightedTree, intervals: IntervalSet) -> PcgRep:
    labels = sorted(lab for _, lab in tree.leaf_labels)
    return PcgRep(tree, tuple((lab, lab) for lab in labels), intervals)


def fixture(name: str, n: int | None = None) -> list[WitnessedGraph]:
    """Named worked examples: figure1 | figure2 | figure3 | complete | empty."""
    if name == "figure1":
        tree = from_newick(_FIG1_NEWICK)
        rep_b = _identity_rep(tree, IntervalSet.closed(4, 23))
        rep_c = _identity_rep(
            tree, IntervalSet.closed(3, 7).union(IntervalSet.point(25))
        )
        return [
            WitnessedGraph(_letters_graph(_FIG1_PANEL_B), rep_b,
                           "figure1/panel-b interval [4,23]"),
            WitnessedGraph(_letters_graph(_FIG1_PANEL_C), rep_c,
                           "figure1/panel-c intervals [3,7] u [25,25]"),
        ]
    if name == "figure2":
        t1 = from_newick(_FIG2_T1_NEWICK)
        t2 = from_newick(_FIG2_T2_NEWICK)
        h1_rep = _identity_rep(t1, IntervalSet.closed(12, 24))
        h2_rep = _identity_rep(t2, IntervalSet.closed(10, 20))
        h1 = _letters_graph(_FIG2_COMMON + _FIG2_H1_ONLY)
        h2 = _letters_graph(_FIG2_COMMON + _FIG2_H2_ONLY)
        union = _letters_graph(_FIG2_COMMON + _FIG2_H1_ONLY + _FIG2_H2_ONLY)
        inter = _letters_graph(_FIG2_COMMON)
        return [
            WitnessedGraph(h1, h1_rep, "figure2/H1 interval [12,24]"),
            WitnessedGraph(h2, h2_rep, "figure2/H2 interval [10,20]"),
            WitnessedGraph(union, ThresholdRep((h1_rep, h2_rep), 1),
                           "figure2/A union as (2,1)-threshold"),
            WitnessedGraph(inter, ThresholdRep((h1_rep, h2_rep), 2),
                           "figure2/B intersection as (2,2)-threshold"),
        ]
    if name == "figure3":
        ground = tuple("abcde")
        family = [list(c) for c in itertools.combinations(ground, 3)]
        return [
            WitnessedGraph(incidence_graph(ground, family), None,
                           "figure3/incidence of all 3-subsets of 5"),
        ]
    if name == "complete":
        if n is None or n < 1:
            raise ValueError("fixture 'complete' needs n >= 1")
        g = standard_graph("complete", n)
        return [WitnessedGraph(g, complete_witness(g.vertices),
                               f"padding/complete({n}) unit star [2,2]")]
    if name == "empty":
        if n is None or n < 1:
            raise ValueError("fixture 'empty' needs n >= 1")
        g = standard_graph("empty", n)
        return [WitnessedGraph(g, empty_witness(g.vertices),
                               f"padding/empty({n}) unit star, empty intervals")]
    raise ValueError(f"unknown fixture {name!r}")
