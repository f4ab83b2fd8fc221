"""Labeled simple undirected graphs and the operations the constructions need.

Vertices are string labels kept in a deterministic order; edges are
unordered pairs stored canonically (lexicographically smaller label
first).  Equality is exact labeled-graph equality -- no isomorphism
testing happens here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence


def edge_key(u: str, v: str) -> tuple[str, str]:
    """Canonical storage form of the undirected pair {u, v}."""
    if u == v:
        raise ValueError(f"self-loop on {u!r}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable labeled simple graph."""

    vertices: tuple[str, ...]
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex labels")
        object.__setattr__(self, "vertices", verts)
        canonical = frozenset(edge_key(u, v) for u, v in self.edges)
        vset = set(verts)
        for u, v in canonical:
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u!r},{v!r}) has endpoint outside vertex set")
        object.__setattr__(self, "edges", canonical)

    # equality ignores vertex order: labels and edges determine the graph
    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.edges))

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    @property
    def n(self) -> int:
        return len(self.vertices)

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edges

    def neighbors(self, u: str) -> set:
        return {w for e in self.edges if u in e for w in e if w != u}

    def degree(self, u: str) -> int:
        return sum(1 for e in self.edges if u in e)

    def non_edges(self) -> list[tuple[str, str]]:
        """All unordered vertex pairs that are not edges, sorted."""
        return sorted(
            edge_key(u, v)
            for u, v in itertools.combinations(self.vertices, 2)
            if edge_key(u, v) not in self.edges
        )

    def connected_components(self) -> list[list[str]]:
        """Components as sorted vertex lists, ordered by smallest member."""
        seen: set = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.neighbors(u):
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(sorted(comp))
        return sorted(comps, key=lambda c: c[0])


def complement(g: Graph) -> Graph:
    """Same vertices; a pair is an edge iff it was a non-edge of g."""
    all_pairs = {
        edge_key(u, v) for u, v in itertools.combinations(g.vertices, 2)
    }
    return Graph(g.vertices, frozenset(all_pairs - g.edges))


def disjoint_union(gs: Sequence[Graph], relabel: bool = False) -> Graph:
    """Disjoint union; with relabel=True labels get copy prefixes "c0.", "c1.", ...

    Without relabeling the vertex label sets must be pairwise disjoint.
    """
    vertices: list[str] = []
    edges: set = set()
    seen: set = set()
    for i, g in enumerate(gs):
        prefix = f"c{i}." if relabel else ""
        for v in g.vertices:
            label = prefix + v
            if label in seen:
                raise ValueError(
                    f"overlapping vertex label {label!r}; pass relabel=True"
                )
            seen.add(label)
            vertices.append(label)
        for u, v in g.edges:
            edges.add(edge_key(prefix + u, prefix + v))
    return Graph(tuple(vertices), frozenset(edges))


def standard_graph(kind: str, *params: int) -> Graph:
    """Named graphs: complete n | complete_bipartite a b | cycle n | empty n.

    Labels are "v0..v(n-1)"; bipartite sides are "a0.." and "b0..".
    """
    if kind == "complete":
        (n,) = params
        _require_positive(n)
        verts = tuple(f"v{i}" for i in range(n))
        return Graph(verts, frozenset(
            edge_key(u, v) for u, v in itertools.combinations(verts, 2)
        ))
    if kind == "empty":
        (n,) = params
        _require_positive(n)
        return Graph(tuple(f"v{i}" for i in range(n)))
    if kind == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        verts = tuple(f"v{i}" for i in range(n))
        return Graph(verts, frozenset(
            edge_key(verts[i], verts[(i + 1) % n]) for i in range(n)
        ))
    if kind == "complete_bipartite":
        a, b = params
        _require_positive(a)
        _require_positive(b)
        side_a = tuple(f"a{i}" for i in range(a))
        side_b = tuple(f"b{i}" for i in range(b))
        return Graph(side_a + side_b, frozenset(
            edge_key(u, v) for u in side_a for v in side_b
        ))
    raise ValueError(f"unknown graph kind {kind!r}")


def _require_positive(n: int):
    if n < 1:
        raise ValueError("need n >= 1")


def double_complement_prime(g: Graph) -> Graph:
    """Complement of two disjoint copies of g.

    The result has 2|V| vertices: inside each copy the complement of g,
    and every cross-copy pair is an edge.  Exactly equal (labels and all)
    to complement(disjoint_union([g, g], relabel=True)).
    """
    return complement(disjoint_union([g, g], relabel=True))


# ---------------------------------------------------------------------------
# graph6 interchange (for graphs with at most 62 vertices)
# ---------------------------------------------------------------------------

def to_graph6(g: Graph) -> str:
    """Encode in graph6 using the graph's stored vertex order (labels drop)."""
    n = g.n
    if n > 62:
        raise ValueError("graph6 export supports at most 62 vertices")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(g.vertices[i], g.vertices[j]) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(63 + val))
    return "".join(chars)


def from_graph6(text: str) -> Graph:
    """Decode a graph6 string; vertices are labeled "v0..v(n-1)"."""
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise ValueError("empty graph6 string")
    n = ord(text[0]) - 63
    if not 0 <= n <= 62:
        raise ValueError("only short-form graph6 (n <= 62) is supported")
    need = (n * (n - 1) // 2 + 5) // 6
    body = text[1:]
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)}, expected {need}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise ValueError(f"invalid graph6 character {ch!r}")
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    verts = tuple(f"v{i}" for i in range(n))
    edges = set()
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.add(edge_key(verts[i], verts[j]))
            pos += 1
    return Graph(verts, frozenset(edges))


# ---------------------------------------------------------------------------
# JSON form: {"vertices": [...], "edges": [["u","v"], ...]}
# ---------------------------------------------------------------------------

def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in sorted(g.edges)],
    }


def graph_from_json(data: dict) -> Graph:
    return Graph(tuple(data["vertices"]),
                 frozenset(edge_key(u, v) for u, v in data["edges"]))
