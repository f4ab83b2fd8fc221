"""Exact small-instance decision procedures.

Does a graph admit a single-tree single-interval representation?  The
search space is the set of leaf-labeled reduced binary topologies: a
witness on any reduced tree can be turned into one on a binary tree by
zero-weight refinement, so binary topologies are exhaustive.  For each
topology the question becomes a disjunction of exact linear feasibility
problems over the edge weights and the two interval endpoints, explored
by depth-first side assignment with pruning.

Strict non-edge inequalities are replaced by gap-1 inequalities
(distance <= lo-1 or distance >= hi+1): any solution of the strict
system can be scaled by a positive rational until every strict gap is
at least 1, and gap-1 solutions trivially satisfy the strict system, so
nothing is lost and solutions stay rational.
"""

from __future__ import annotations

import itertools
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .feasibility import solve_geq_system
from .graphs import Graph, complement, edge_key, to_graph6
from .predicates import IntervalSet, PcgRep, verify_representation
from .topologies import binary_topologies, pair_path_masks
from .trees import WeightedTree

STATUS_WITNESS = "witness"
STATUS_REFUTED = "refuted-exhaustive"
STATUS_CERTIFICATE = "certificate-non-pcg"
STATUS_INCONCLUSIVE = "inconclusive"


@dataclass
class SearchStats:
    topologies_tried: int = 0
    feasibility_calls: int = 0
    elapsed: float = 0.0


@dataclass
class RecognitionResult:
    status: str
    witness: PcgRep | None = None
    certificate: tuple | None = None
    stats: SearchStats = field(default_factory=SearchStats)


# ---------------------------------------------------------------------------
# single-topology feasibility search
# ---------------------------------------------------------------------------

def _path_row(mask: int, m: int, num_vars: int, sign: int,
              extra: dict) -> list[int]:
    """Coefficient vector: sign * (path weight sum) plus endpoint terms."""
    row = [0] * num_vars
    for e in range(m):
        if mask >> e & 1:
            row[e] = sign
    for col, coeff in extra.items():
        row[col] = coeff
    return row


def _search_one_topology(n, topo_edges, edge_pairs, nonedge_pairs, leaf_power):
    """Try one topology; return (solution, calls) or (None, calls).

    The solution is (weights, d_min, d_max) in exact rationals.
    """
    m = len(topo_edges)
    masks = pair_path_masks(n, topo_edges)
    if leaf_power:
        num_vars = m + 1
        dmin_col = None
        dmax_col = m
    else:
        num_vars = m + 2
        dmin_col = m
        dmax_col = m + 1

    base_rows = []
    if dmin_col is not None:
        row = [0] * num_vars
        row[dmax_col], row[dmin_col] = 1, -1
        base_rows.append((row, 0))  # d_max - d_min >= 0
    for pair in edge_pairs:
        mask = masks[pair]
        if dmin_col is not None:
            base_rows.append(
                (_path_row(mask, m, num_vars, 1, {dmin_col: -1}), 0)
            )  # D - d_min >= 0
        base_rows.append(
            (_path_row(mask, m, num_vars, -1, {dmax_col: 1}), 0)
        )  # d_max - D >= 0

    calls = 0

    def solve(rows):
        nonlocal calls
        calls += 1
        return solve_geq_system(num_vars, rows)

    if leaf_power:
        rows = list(base_rows)
        for pair in nonedge_pairs:
            rows.append(
                (_path_row(masks[pair], m, num_vars, 1, {dmax_col: -1}), 1)
            )  # D - d_max >= 1
        sol = solve(rows)
        return (_unpack(sol, m, dmin_col, dmax_col), calls)

    # order non-edges by overlap with already-constrained (edge) paths
    edge_union = 0
    for pair in edge_pairs:
        edge_union |= masks[pair]
    order = sorted(
        nonedge_pairs,
        key=lambda p: (-bin(masks[p] & edge_union).count("1"), p),
    )

    def descend(idx, rows):
        """Assign a side to non-edge idx; every prefix is feasibility-checked."""
        mask = masks[order[idx]]
        upper = _path_row(mask, m, num_vars, 1, {dmax_col: -1})
        lower = _path_row(mask, m, num_vars, -1, {dmin_col: 1})
        for side_row in ((upper, 1), (lower, 1)):
            rows.append(side_row)
            sol = solve(rows)
            if sol is not None:
                if idx + 1 < len(order):
                    sol = descend(idx + 1, rows)
                if sol is not None:
                    rows.pop()
                    return sol
            rows.pop()
        return None

    if order:
        sol = descend(0, list(base_rows))
    else:
        sol = solve(list(base_rows))
    return (_unpack(sol, m, dmin_col, dmax_col), calls)


def _unpack(sol, m, dmin_col, dmax_col):
    if sol is None:
        return None
    weights = sol[:m]
    d_min = Fraction(0) if dmin_col is None else sol[dmin_col]
    d_max = sol[dmax_col]
    return weights, d_min, d_max


def _witness_from_solution(g: Graph, topo_edges, solution) -> PcgRep:
    weights, d_min, d_max = solution
    verts = sorted(g.vertices)
    n = len(verts)

    def node_id(k: int) -> str:
        return f"lf{k}" if k < n else f"in{k - n}"

    node_ids = sorted({node_id(u) for e in topo_edges for u in e})
    edges = tuple(
        (node_id(u), node_id(v), w) for (u, v), w in zip(topo_edges, weights)
    )
    labels = tuple((f"lf{i}", verts[i]) for i in range(n))
    root = "in0" if any(i.startswith("in") for i in node_ids) else node_ids[0]
    tree = WeightedTree(tuple(node_ids), edges, labels, root)
    rep = PcgRep(tree, tuple((v, v) for v in verts),
                 IntervalSet.closed(d_min, d_max))
    report = verify_representation(rep, g)
    if not report.valid:
        raise RuntimeError(
            "internal error: feasible point does not reproduce the graph"
        )
    return rep


def _trivial_rep(vertex: str) -> PcgRep:
    tree = WeightedTree(("lf0",), (), (("lf0", vertex),), "lf0")
    return PcgRep(tree, ((vertex, vertex),), IntervalSet.closed(2, 2))


def _topology_job(args):
    """Worker payload: run the side-assignment search on one topology."""
    n, topo, edge_pairs, nonedge_pairs, leaf_power = args
    return _search_one_topology(n, topo, edge_pairs, nonedge_pairs, leaf_power)


def _recognize(g: Graph, max_n: int, leaf_power: bool,
               workers: int) -> RecognitionResult:
    started = time.perf_counter()
    n = g.n
    if n > max_n:
        raise ValueError(f"graph has {n} vertices, configured bound is {max_n}")
    stats = SearchStats()
    if n <= 1:
        stats.elapsed = time.perf_counter() - started
        witness = _trivial_rep(g.vertices[0]) if n == 1 else None
        if witness is None:
            raise ValueError("cannot recognize the empty-vertex graph")
        return RecognitionResult(STATUS_WITNESS, witness, None, stats)

    verts = sorted(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    edge_pairs = sorted(
        (min(index[u], index[v]), max(index[u], index[v])) for u, v in g.edges
    )
    nonedge_pairs = [
        (i, j) for i, j in itertools.combinations(range(n), 2)
        if (i, j) not in set(edge_pairs)
    ]

    def finish(solution, topo):
        stats.elapsed = time.perf_counter() - started
        if solution is None:
            return RecognitionResult(STATUS_REFUTED, None, None, stats)
        witness = _witness_from_solution(g, topo, solution)
        return RecognitionResult(STATUS_WITNESS, witness, None, stats)

    if workers <= 1:
        for topo in binary_topologies(n):
            stats.topologies_tried += 1
            solution, calls = _search_one_topology(
                n, topo, edge_pairs, nonedge_pairs, leaf_power
            )
            stats.feasibility_calls += calls
            if solution is not None:
                return finish(solution, topo)
        return finish(None, None)

    # parallel scan in deterministic batches: the reported witness is the
    # one on the smallest topology index that succeeds, as in serial mode
    topo_iter = binary_topologies(n)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        while True:
            batch = list(itertools.islice(topo_iter, workers))
            if not batch:
                return finish(None, None)
            stats.topologies_tried += len(batch)
            jobs = [(n, t, edge_pairs, nonedge_pairs, leaf_power)
                    for t in batch]
            for k, (solution, calls) in enumerate(
                    pool.map(_topology_job, jobs)):
                stats.feasibility_calls += calls
                if solution is not None:
                    return finish(solution, batch[k])


def recognize_pcg(g: Graph, max_n: int = 6, workers: int = 1) -> RecognitionResult:
    """Exact decision: witness on some binary topology, or exhaustive refutation."""
    return _recognize(g, max_n, leaf_power=False, workers=workers)


def recognize_leaf_power(g: Graph, max_n: int = 8,
                         workers: int = 1) -> RecognitionResult:
    """Same engine with the lower endpoint pinned to 0.

    Non-edges then have a single admissible side (distance >= hi + 1),
    so each topology needs exactly one feasibility call.
    """
    return _recognize(g, max_n, leaf_power=True, workers=workers)


# ---------------------------------------------------------------------------
# zero-weight binary refinement (completeness of the binary restriction)
# ---------------------------------------------------------------------------

def binary_refinement(t: WeightedTree) -> WeightedTree:
    """Split internal nodes of degree > 3 with zero-weight edges.

    The leaf metric is unchanged, and the result has no internal node of
    degree above 3 (so reduced trees become reduced binary trees).
    """
    nodes = list(t.nodes)
    edges = [list(e) for e in t.edges]
    counter = itertools.count()

    def fresh() -> str:
        while True:
            cand = f"bin{next(counter)}"
            if cand not in nodes:
                return cand

    changed = True
    while changed:
        changed = False
        deg: dict = {n: [] for n in nodes}
        for i, (u, v, _) in enumerate(edges):
            deg[u].append(i)
            deg[v].append(i)
        for node in nodes:
            if len(deg[node]) > 3:
                # keep two incidences, move the rest to a zero-weight twin
                twin = fresh()
                nodes.append(twin)
                for i in deg[node][2:]:
                    if edges[i][0] == node:
                        edges[i][0] = twin
                    else:
                        edges[i][1] = twin
                edges.append([node, twin, Fraction(0)])
                changed = True
                break
    return WeightedTree(
        tuple(nodes),
        tuple((u, v, w) for u, v, w in edges),
        t.leaf_labels,
        t.root,
    )


# ---------------------------------------------------------------------------
# sufficient non-representability certificate
# ---------------------------------------------------------------------------

def _shortest_cycle(g: Graph, vertices: list) -> list | None:
    """A minimum-length (hence chordless) cycle among `vertices`, or None."""
    vset = set(vertices)
    adj = {v: sorted(g.neighbors(v) & vset) for v in vertices}
    best: list | None = None
    for s in sorted(vertices):
        dist = {s: 0}
        parent = {s: None}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif parent[u] != v:
                        # non-tree edge: closes a cycle through the walk
                        pu, pv = [], []
                        a, b = u, v
                        while a is not None:
                            pu.append(a)
                            a = parent[a]
                        while b is not None:
                            pv.append(b)
                            b = parent[b]
                        # trim to the part after the last common ancestor
                        while len(pu) > 1 and len(pv) > 1 and pu[-2] == pv[-2]:
                            pu.pop()
                            pv.pop()
                        cycle = pu[:-1] + pv[::-1]
                        if len(cycle) >= 3 and len(set(cycle)) == len(cycle):
                            if best is None or len(cycle) < len(best):
                                best = cycle
            frontier = nxt
    return best


def _is_chordless(g: Graph, cycle: list) -> bool:
    k = len(cycle)
    ring = {edge_key(cycle[i], cycle[(i + 1) % k]) for i in range(k)}
    for u, v in itertools.combinations(cycle, 2):
        e = edge_key(u, v)
        if e in g.edges and e not in ring:
            return False
    return True


def non_pcg_certificate(g: Graph) -> RecognitionResult:
    """Look for two disjoint chordless cycles of the complement with no
    edges between them, one in each of two complement components.

    Finding them proves the graph has no single-tree single-interval
    representation; not finding them proves nothing (inconclusive).
    """
    started = time.perf_counter()
    comp = complement(g)
    cycles = []
    for component in comp.connected_components():
        cycle = _shortest_cycle(comp, component)
        if cycle is not None:
            cycles.append(cycle)
        if len(cycles) == 2:
            break
    stats = SearchStats(elapsed=time.perf_counter() - started)
    if len(cycles) < 2:
        return RecognitionResult(STATUS_INCONCLUSIVE, None, None, stats)
    c1, c2 = cycles
    assert _is_chordless(comp, c1) and _is_chordless(comp, c2)
    assert not (set(c1) & set(c2))
    assert not any(comp.has_edge(u, v) for u in c1 for v in c2)
    return RecognitionResult(
        STATUS_CERTIFICATE, None, (tuple(c1), tuple(c2)), stats
    )


# ---------------------------------------------------------------------------
# census of small graphs
# ---------------------------------------------------------------------------

@dataclass
class CensusEntry:
    graph6: str
    status: str
    edges: int
    labeled_count: int  # orbit size under vertex relabeling


@dataclass
class CensusReport:
    n: int
    mode: str
    total_graphs: int
    pcg_count: int
    refuted_count: int
    labeled_pcg_count: int  # P_n
    entries: list
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "total_graphs": self.total_graphs,
            "pcg_count": self.pcg_count,
            "refuted_count": self.refuted_count,
            "labeled_pcg_count": self.labeled_pcg_count,
            "entries": [
                {
                    "graph6": e.graph6,
                    "status": e.status,
                    "edges": e.edges,
                    "labeled_count": e.labeled_count,
                }
                for e in self.entries
            ],
        }


def _mask_to_graph(n: int, mask: int, pairs: list) -> Graph:
    verts = tuple(f"v{i}" for i in range(n))
    edges = frozenset(
        edge_key(verts[i], verts[j])
        for k, (i, j) in enumerate(pairs) if mask >> k & 1
    )
    return Graph(verts, edges)


def _census_classes(n: int):
    """Canonical representatives of unlabeled graphs with orbit sizes."""
    pairs = list(itertools.combinations(range(n), 2))
    pair_index = {p: k for k, p in enumerate(pairs)}
    perm_maps = []
    for perm in itertools.permutations(range(n)):
        table = []
        for i, j in pairs:
            a, b = perm[i], perm[j]
            table.append(pair_index[(min(a, b), max(a, b))])
        perm_maps.append(table)

    seen: set = set()
    classes = []
    for mask in range(1 << len(pairs)):
        if mask in seen:
            continue
        orbit = set()
        for table in perm_maps:
            mapped = 0
            rest = mask
            while rest:
                low = rest & -rest
                mapped |= 1 << table[low.bit_length() - 1]
                rest ^= low
            orbit.add(mapped)
        seen |= orbit
        classes.append((min(orbit), len(orbit)))
    classes.sort()
    return pairs, classes


def _census_worker(args):
    n, mask, pairs = args
    g = _mask_to_graph(n, mask, pairs)
    return recognize_pcg(g, max_n=n).status


def census(n: int, mode: str = "unlabeled", workers: int = 1) -> CensusReport:
    """Classify every graph on n vertices via the exact recognizer."""
    if mode not in ("labeled", "unlabeled"):
        raise ValueError(f"unknown census mode {mode!r}")
    if not 1 <= n <= 6:
        raise ValueError("census supports 1 <= n <= 6")
    if n == 6:
        warnings.warn("census at n=6 scans 105 topologies per class; this "
                      "can take many minutes", stacklevel=2)
    started = time.perf_counter()
    pairs, classes = _census_classes(n)

    if workers <= 1:
        statuses = [
            recognize_pcg(_mask_to_graph(n, mask, pairs), max_n=n).status
            for mask, _ in classes
        ]
    else:
        jobs = [(n, mask, pairs) for mask, _ in classes]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            statuses = list(pool.map(_census_worker, jobs))

    entries = []
    pcg = refuted = labeled_pcg = 0
    for (mask, orbit), status in zip(classes, statuses):
        g = _mask_to_graph(n, mask, pairs)
        entries.append(CensusEntry(to_graph6(g), status,
                                   len(g.edges), orbit))
        weight = orbit if mode == "labeled" else 1
        if status == STATUS_WITNESS:
            pcg += weight
            labeled_pcg += orbit
        else:
            refuted += weight
    total = 2 ** len(pairs) if mode == "labeled" else len(classes)
    return CensusReport(
        n=n, mode=mode, total_graphs=total,
        pcg_count=pcg, refuted_count=refuted,
        labeled_pcg_count=labeled_pcg, entries=entries,
        elapsed=time.perf_counter() - started,
    )
