"""Edge-weighted trees with labeled leaves and exact rational metrics.

Weights are nonnegative Fractions (weight 0 is legal and used by some
witness trees).  A node is a leaf exactly when it carries a label; the
single-node tree is the one permitted degenerate case.  Every tree has
a designated root node: it is only an anchor for serialization and for
the bridge join, never a semantic feature of the metric.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .rational import as_fraction, format_fraction


@dataclass(frozen=True, eq=False)
class WeightedTree:
    """Immutable tree with rational edge weights and labeled leaves."""

    nodes: tuple[str, ...]
    edges: tuple  # of (node, node, Fraction)
    leaf_labels: tuple  # of (node, label)
    root: str = ""

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate node ids")
        node_set = set(nodes)
        edges = []
        for u, v, w in self.edges:
            if u not in node_set or v not in node_set or u == v:
                raise ValueError(f"bad tree edge ({u!r},{v!r})")
            w = as_fraction(w)
            if w < 0:
                raise ValueError(f"negative weight on edge ({u!r},{v!r})")
            edges.append((u, v, w))
        labels = tuple((n, lab) for n, lab in self.leaf_labels)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "leaf_labels", labels)
        root = self.root or (nodes[0] if nodes else "")
        if root not in node_set:
            raise ValueError(f"root {root!r} is not a node")
        object.__setattr__(self, "root", root)
        self._validate()

    def _validate(self):
        if len(self.edges) != len(self.nodes) - 1:
            raise ValueError("edge count must be node count - 1")
        if self.nodes and len(self.component_of(self.nodes[0])) != len(self.nodes):
            raise ValueError("tree is not connected")
        label_map = dict(self.leaf_labels)
        if len(label_map) != len(self.leaf_labels):
            raise ValueError("node labeled twice")
        if len({lab for _, lab in self.leaf_labels}) != len(self.leaf_labels):
            raise ValueError("duplicate leaf labels")
        deg = self.degrees()
        if len(self.nodes) == 1:
            if self.nodes[0] not in label_map:
                raise ValueError("a single-node tree must have its node labeled")
            return
        for n in self.nodes:
            if n in label_map and deg[n] != 1:
                raise ValueError(f"labeled node {n!r} has degree {deg[n]}, needs 1")
            if deg[n] == 1 and n not in label_map:
                raise ValueError(f"degree-1 node {n!r} is unlabeled")

    def adjacency(self) -> dict:
        adj: dict = {n: [] for n in self.nodes}
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def degrees(self) -> dict:
        deg = {n: 0 for n in self.nodes}
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def component_of(self, start: str) -> set:
        adj = self.adjacency()
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    @property
    def label_of(self) -> dict:
        return dict(self.leaf_labels)

    @property
    def node_of_label(self) -> dict:
        return {lab: n for n, lab in self.leaf_labels}

    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(lab for _, lab in self.leaf_labels))

    def is_reduced(self) -> bool:
        return all(d != 2 for d in self.degrees().values())

    def distances_from(self, start: str) -> dict:
        """Exact distance from `start` to every node."""
        adj = self.adjacency()
        dist = {start: Fraction(0)}
        stack = [start]
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + w
                    stack.append(v)
        return dist


@dataclass(frozen=True, eq=False)
class LeafMetric:
    """Symmetric leaf-to-leaf distance table with exact rational entries."""

    labels: tuple[str, ...]
    dist: dict  # (a, b) with a < b -> Fraction

    def d(self, u: str, v: str) -> Fraction:
        if u == v:
            return Fraction(0)
        return self.dist[(u, v) if u < v else (v, u)]

    def pairs(self):
        return itertools.combinations(self.labels, 2)

    def four_point_ok(self, u: str, v: str, x: str, y: str) -> bool:
        """Tree-metric check: the two largest pairings must coincide."""
        sums = sorted([
            self.d(u, v) + self.d(x, y),
            self.d(u, x) + self.d(v, y),
            self.d(u, y) + self.d(v, x),
        ])
        return sums[1] == sums[2]


def leaf_distances(t: WeightedTree) -> LeafMetric:
    """Exact distance matrix over all labeled leaves (needs >= 2 leaves)."""
    leaves = sorted(t.leaf_labels, key=lambda p: p[1])
    if len(leaves) < 2:
        raise ValueError("leaf_distances needs at least 2 leaves")
    dist = {}
    for node, lab in leaves:
        from_here = t.distances_from(node)
        for node2, lab2 in leaves:
            if lab < lab2:
                dist[(lab, lab2)] = from_here[node2]
    return LeafMetric(tuple(lab for _, lab in leaves), dist)


def reduce_tree(t: WeightedTree) -> WeightedTree:
    """Suppress degree-2 internal nodes; the leaf metric is unchanged.

    Each maximal suppressed path becomes one edge carrying the weight
    sum.  If the root gets suppressed it moves to the nearest surviving
    node (ties broken lexicographically).
    """
    deg = t.degrees()
    keep = [n for n in t.nodes if deg[n] != 2]
    if len(keep) == len(t.nodes):
        return t
    adj = t.adjacency()
    keep_set = set(keep)

    new_edges = []
    seen_pairs = set()
    for start in keep:
        for nxt, w in adj[start]:
            # walk through suppressed nodes until the next kept node
            prev, cur, total = start, nxt, w
            while cur not in keep_set:
                (a, wa), (b, wb) = adj[cur]
                if a == prev:
                    prev, cur, total = cur, b, total + wb
                else:
                    prev, cur, total = cur, a, total + wa
            # each suppressed path is discovered from both endpoints; keep one copy
            key = (min(start, cur), max(start, cur), total)
            if key in seen_pairs:
                seen_pairs.remove(key)
                continue
            seen_pairs.add(key)
            new_edges.append((start, cur, total))

    root = t.root
    if root not in keep_set:
        # nearest kept node by hop count, then lexicographic
        order = []
        frontier = [(0, root)]
        visited = {root}
        while frontier:
            hops, u = frontier.pop(0)
            if u in keep_set:
                order.append((hops, u))
                continue
            for v, _ in adj[u]:
                if v not in visited:
                    visited.add(v)
                    frontier.append((hops + 1, v))
        root = min(order)[1]

    labels = tuple((n, lab) for n, lab in t.leaf_labels if n in keep_set)
    return WeightedTree(tuple(keep), tuple(new_edges), labels, root)


def bridge_join(t1: WeightedTree, t2: WeightedTree, w,
                relabel: bool = False) -> WeightedTree:
    """Join two trees by an edge of weight w anchored at their root nodes.

    Node ids are namespaced "j0."/"j1." so the inputs never clash; leaf
    labels must be disjoint unless relabel=True, which prefixes them
    "c0."/"c1." like the graph-side disjoint union.  When a root is
    itself a labeled leaf, the bridge attaches to a fresh zero-weight
    anchor spliced in at the root's position, so the root stays a leaf
    and no distance changes.  Cross-tree leaf distances equal
    (distance to root in t1) + w + (distance to root in t2); within-tree
    distances are untouched.  The joined root is t1's root.
    """
    w = as_fraction(w)
    if w < 0:
        raise ValueError("bridge weight must be nonnegative")
    labs1 = {lab for _, lab in t1.leaf_labels}
    labs2 = {lab for _, lab in t2.leaf_labels}
    if not relabel and labs1 & labs2:
        clash = sorted(labs1 & labs2)[0]
        raise ValueError(f"leaf label collision on {clash!r}; pass relabel=True")

    def shifted(t: WeightedTree, i: int):
        np = f"j{i}."
        lp = f"c{i}." if relabel else ""
        nodes = [np + n for n in t.nodes]
        edges = [(np + u, np + v, wt) for u, v, wt in t.edges]
        labels = [(np + n, lp + lab) for n, lab in t.leaf_labels]
        root = np + t.root
        anchor = root
        if t.root in t.label_of:
            # splice a zero-weight anchor so the labeled root stays a leaf
            anchor = np + "anchor"
            edges = [
                (anchor if u == root else u, anchor if v == root else v, wt)
                for u, v, wt in edges
            ]
            edges.append((root, anchor, Fraction(0)))
            nodes.append(anchor)
        return nodes, edges, labels, root, anchor

    n1, e1, l1, r1, a1 = shifted(t1, 0)
    n2, e2, l2, _, a2 = shifted(t2, 1)
    return WeightedTree(tuple(n1 + n2), tuple(e1 + e2 + [(a1, a2, w)]),
                        tuple(l1 + l2), r1)


# ---------------------------------------------------------------------------
# Weighted Newick form, "(a:1,c:2,e:3,g:4)L:10" style with exact weights
# ---------------------------------------------------------------------------

_NEWICK_TOKEN = re.compile(r"\(|\)|,|;|:|[^():,;\s]+")


def to_newick(t: WeightedTree) -> str:
    """Serialize rooted at t.root; leaf names are labels, inner names node ids."""
    label_of = t.label_of
    adj = t.adjacency()

    def name_of(node: str) -> str:
        name = label_of.get(node, node)
        if re.search(r"[():,;\s]", name):
            raise ValueError(f"name {name!r} not representable in Newick")
        return name

    def render(node: str, parent: str | None) -> str:
        children = [(v, wt) for v, wt in adj[node] if v != parent]
        if not children:
            return name_of(node)
        inner = ",".join(
            render(v, node) + ":" + format_fraction(wt) for v, wt in children
        )
        return f"({inner}){name_of(node)}"

    return render(t.root, None) + ";"


def from_newick(text: str) -> WeightedTree:
    """Parse a weighted Newick string into a tree rooted at the outer node.

    Leaf node ids coincide with their labels; unnamed inner nodes get
    generated ids "n0", "n1", ...
    """
    tokens = _NEWICK_TOKEN.findall(text.strip())
    if tokens and tokens[-1] == ";":
        tokens.pop()
    if not tokens:
        raise ValueError("empty Newick string")

    pos = 0
    counter = itertools.count()
    nodes: list[str] = []
    edges: list[tuple[str, str, Fraction]] = []
    children_of: dict = {}

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def parse_node() -> str:
        nonlocal pos
        kids = []
        if peek() == "(":
            pos += 1
            while True:
                child = parse_node()
                weight = Fraction(0)
                if peek() == ":":
                    pos += 1
                    tok = tokens[pos]
                    pos += 1
                    weight = as_fraction(tok)
                kids.append((child, weight))
                if peek() == ",":
                    pos += 1
                    continue
                if peek() == ")":
                    pos += 1
                    break
                raise ValueError("expected ',' or ')' in Newick input")
        name = None
        if peek() not in ("(", ")", ",", ":", ";", None):
            name = tokens[pos]
            pos += 1
        node = name if name is not None else f"n{next(counter)}"
        if node in children_of:
            raise ValueError(f"duplicate node name {node!r}")
        nodes.append(node)
        children_of[node] = kids
        for child, weight in kids:
            edges.append((node, child, weight))
        return node

    root = parse_node()
    if pos != len(tokens):
        raise ValueError("trailing Newick input")
    leaf_nodes = [n for n in nodes if not children_of[n]]
    if len(children_of[root]) == 1 and len(nodes) > 1:
        leaf_nodes.append(root)  # a one-child root is itself a leaf
    labels = tuple((n, n) for n in leaf_nodes)
    return WeightedTree(tuple(nodes), tuple(edges), labels, root)


# ---------------------------------------------------------------------------
# JSON form mirroring the graph schema plus weights
# ---------------------------------------------------------------------------

def tree_to_json(t: WeightedTree) -> dict:
    return {
        "nodes": list(t.nodes),
        "edges": [[u, v, format_fraction(w)] for u, v, w in t.edges],
        "leaf_labels": {n: lab for n, lab in t.leaf_labels},
        "root": t.root,
    }


def tree_from_json(data: dict) -> WeightedTree:
    return WeightedTree(
        tuple(data["nodes"]),
        tuple((u, v, as_fraction(w)) for u, v, w in data["edges"]),
        tuple(sorted(data["leaf_labels"].items())),
        data.get("root", ""),
    )
