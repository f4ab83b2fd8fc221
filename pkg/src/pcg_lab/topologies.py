"""Enumeration of leaf-labeled reduced binary tree topologies.

Leaves are 0..n-1; internal nodes are n..2n-3 (every internal node has
degree exactly 3).  Topologies are generated by inserting leaf j into
each edge of every topology on j leaves, which yields each of the
(2n-5)!! distinct shapes exactly once, in a fixed deterministic order.
"""

from __future__ import annotations


def double_factorial_odd(n: int) -> int:
    """(2n-5)!! -- the number of topologies on n >= 2 labeled leaves."""
    if n < 2:
        raise ValueError("need n >= 2")
    count = 1
    for k in range(3, 2 * n - 4, 2):
        count *= k
    return count


def binary_topologies(n: int):
    """Yield edge lists of all reduced binary topologies on leaves 0..n-1."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n == 2:
        yield [(0, 1)]
        return

    def insert(edges: list, next_leaf: int):
        if next_leaf == n:
            yield edges
            return
        hub = n + next_leaf - 2  # new internal node id
        for i in range(len(edges)):
            u, v = edges[i]
            grown = edges[:i] + edges[i + 1:] + [
                (u, hub), (hub, v), (hub, next_leaf),
            ]
            yield from insert(grown, next_leaf + 1)

    yield from insert([(0, 1)], 2)


def pair_path_masks(n: int, edges: list) -> dict:
    """Bitmasks over edge indices of the leaf-to-leaf paths of a topology."""
    adj: dict = {}
    for idx, (u, v) in enumerate(edges):
        adj.setdefault(u, []).append((v, idx))
        adj.setdefault(v, []).append((u, idx))
    masks = {}
    for a in range(n):
        # DFS from leaf a recording the edge set of each path
        path_to = {a: 0}
        stack = [a]
        while stack:
            u = stack.pop()
            for v, idx in adj[u]:
                if v not in path_to:
                    path_to[v] = path_to[u] | (1 << idx)
                    stack.append(v)
        for b in range(a + 1, n):
            masks[(a, b)] = path_to[b]
    return masks
