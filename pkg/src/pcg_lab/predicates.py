"""Representation predicates and their evaluation into graphs.

A single predicate is a weighted tree plus a leaf bijection plus a set
of admissible distance intervals; a threshold bundle is an ordered list
of such predicates with a vote count.  Everything here is exact: all
endpoints and distances are rationals and the produced graphs are
byte-stable functions of their inputs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, edge_key
from .rational import as_fraction, format_fraction
from .trees import (
    WeightedTree,
    leaf_distances,
    tree_from_json,
    tree_to_json,
)


# ---------------------------------------------------------------------------
# interval sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalSet:
    """Disjoint sorted union of intervals with per-endpoint open/closed flags.

    Endpoints are nonnegative rationals; degenerate [c,c] points are
    allowed and the empty set is a valid value (it accepts nothing).
    Overlapping or touching inputs are merged on construction.
    """

    intervals: tuple = ()

    def __post_init__(self):
        cleaned = []
        for lo, lo_closed, hi, hi_closed in self.intervals:
            lo, hi = as_fraction(lo), as_fraction(hi)
            if lo < 0:
                raise ValueError("interval endpoints must be nonnegative")
            if lo > hi:
                raise ValueError(f"empty-ordered interval [{lo},{hi}]")
            if lo == hi and not (lo_closed and hi_closed):
                continue  # half-open point is empty
            cleaned.append((lo, bool(lo_closed), hi, bool(hi_closed)))
        cleaned.sort(key=lambda iv: (iv[0], not iv[1], iv[2], not iv[3]))
        merged: list = []
        for iv in cleaned:
            if not merged:
                merged.append(list(iv))
                continue
            cur = merged[-1]
            lo, lo_c, hi, hi_c = iv
            touches = lo < cur[2] or (lo == cur[2] and (cur[3] or lo_c))
            if touches:
                if (hi, hi_c) > (cur[2], cur[3]):
                    cur[2], cur[3] = hi, hi_c
            else:
                merged.append(list(iv))
        object.__setattr__(self, "intervals", tuple(tuple(iv) for iv in merged))

    @staticmethod
    def closed(lo, hi) -> "IntervalSet":
        return IntervalSet(((as_fraction(lo), True, as_fraction(hi), True),))

    @staticmethod
    def point(value) -> "IntervalSet":
        return IntervalSet.closed(value, value)

    @staticmethod
    def empty() -> "IntervalSet":
        return IntervalSet(())

    def is_empty(self) -> bool:
        return not self.intervals

    def __len__(self) -> int:
        return len(self.intervals)

    def contains(self, x) -> bool:
        x = as_fraction(x)
        for lo, lo_c, hi, hi_c in self.intervals:
            if (lo < x or (lo == x and lo_c)) and (x < hi or (x == hi and hi_c)):
                return True
        return False

    def max_upper(self) -> Fraction | None:
        if not self.intervals:
            return None
        return self.intervals[-1][2]

    def endpoints(self) -> list[Fraction]:
        out = []
        for lo, _, hi, _ in self.intervals:
            out.extend((lo, hi))
        return out

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.intervals + other.intervals)

    def scaled(self, factor) -> "IntervalSet":
        factor = as_fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return IntervalSet(tuple(
            (lo * factor, lo_c, hi * factor, hi_c)
            for lo, lo_c, hi, hi_c in self.intervals
        ))

    def __str__(self) -> str:
        return format_interval_set(self)


def format_interval_set(iset: IntervalSet) -> str:
    if iset.is_empty():
        return "empty"
    parts = []
    for lo, lo_c, hi, hi_c in iset.intervals:
        parts.append(
            ("[" if lo_c else "(")
            + format_fraction(lo) + "," + format_fraction(hi)
            + ("]" if hi_c else ")")
        )
    return " u ".join(parts)


_INTERVAL_RE = re.compile(
    r"^\s*([\[(])\s*([^,\s]+)\s*,\s*([^\])\s]+)\s*([\])])\s*$"
)


def parse_interval_set(text: str) -> IntervalSet:
    """Parse "[4,23] u [25,25]"-style strings; "empty" is the empty set."""
    body = text.strip()
    if body in ("", "empty", "{}"):
        return IntervalSet.empty()
    intervals = []
    for part in re.split(r"\s*(?:u|U|∪)\s*", body):
        m = _INTERVAL_RE.match(part)
        if not m:
            raise ValueError(f"cannot parse interval {part!r}")
        open_b, lo, hi, close_b = m.groups()
        intervals.append(
            (as_fraction(lo), open_b == "[", as_fraction(hi), close_b == "]")
        )
    return IntervalSet(tuple(intervals))


# ---------------------------------------------------------------------------
# representation predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PcgRep:
    """One predicate: tree + leaf bijection + admissible interval set."""

    tree: WeightedTree
    leaf_map: tuple  # of (vertex label, leaf label), kept sorted by vertex
    intervals: IntervalSet

    def __post_init__(self):
        pairs = tuple(sorted((v, leaf) for v, leaf in dict(self.leaf_map).items()))
        if len(pairs) != len(tuple(self.leaf_map)):
            raise ValueError("leaf_map maps a vertex twice")
        leaves = {lab for _, lab in self.tree.leaf_labels}
        mapped = [leaf for _, leaf in pairs]
        if len(set(mapped)) != len(mapped) or set(mapped) != leaves:
            raise ValueError("leaf_map must be a bijection onto all tree leaves")
        object.__setattr__(self, "leaf_map", pairs)

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.leaf_map)

    def leaf_of(self, vertex: str) -> str:
        return dict(self.leaf_map)[vertex]


@dataclass(frozen=True, eq=False)
class ThresholdRep:
    """Ordered predicates on one vertex set plus an acceptance threshold."""

    predicates: tuple
    threshold: int

    def __post_init__(self):
        preds = tuple(self.predicates)
        if not preds:
            raise ValueError("need at least one predicate")
        if not 1 <= self.threshold <= len(preds):
            raise ValueError(
                f"threshold {self.threshold} outside 1..{len(preds)}"
            )
        base = set(preds[0].vertices)
        for p in preds[1:]:
            if set(p.vertices) != base:
                raise ValueError("predicates must share one vertex set")
        object.__setattr__(self, "predicates", preds)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.predicates[0].vertices


def eval_pcg(rep: PcgRep) -> Graph:
    """Graph on the rep's vertices; u~v iff their leaf distance is admissible."""
    verts = rep.vertices
    if len(verts) < 2:
        return Graph(verts)
    metric = leaf_distances(rep.tree)
    leaf = dict(rep.leaf_map)
    edges = frozenset(
        edge_key(u, v)
        for u, v in itertools.combinations(verts, 2)
        if rep.intervals.contains(metric.d(leaf[u], leaf[v]))
    )
    return Graph(verts, edges)


def eval_threshold(trep: ThresholdRep) -> Graph:
    """u~v iff at least `threshold` of the predicates accept the pair."""
    verts = trep.vertices
    votes: dict = {}
    for pred in trep.predicates:
        for u, v in eval_pcg(pred).edges:
            votes[(u, v)] = votes.get((u, v), 0) + 1
    edges = frozenset(e for e, c in votes.items() if c >= trep.threshold)
    return Graph(verts, edges)


def evaluate(rep) -> Graph:
    """Evaluate either kind of representation."""
    if isinstance(rep, PcgRep):
        return eval_pcg(rep)
    if isinstance(rep, ThresholdRep):
        return eval_threshold(rep)
    raise TypeError(f"not a representation: {rep!r}")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking a representation against a target graph."""

    valid: bool
    missing_edges: tuple  # in the target but not produced
    extra_edges: tuple    # produced but not in the target

    def mismatches(self) -> list[tuple[str, str, str]]:
        out = [(u, v, "missing") for u, v in self.missing_edges]
        out += [(u, v, "extra") for u, v in self.extra_edges]
        return sorted(out)


def verify_representation(rep, target: Graph) -> VerificationReport:
    """Evaluate rep and diff against target (vertex sets must agree)."""
    verts = rep.vertices
    if set(verts) != set(target.vertices):
        raise ValueError("representation and target have different vertex sets")
    produced = evaluate(rep)
    missing = tuple(sorted(target.edges - produced.edges))
    extra = tuple(sorted(produced.edges - target.edges))
    return VerificationReport(not missing and not extra, missing, extra)


def scale_rep(rep: PcgRep, factor) -> PcgRep:
    """Scale all weights and all endpoints by one positive rational.

    The evaluated graph is invariant under this operation.
    """
    factor = as_fraction(factor)
    if factor <= 0:
        raise ValueError("scale factor must be positive")
    t = rep.tree
    scaled_tree = WeightedTree(
        t.nodes,
        tuple((u, v, w * factor) for u, v, w in t.edges),
        t.leaf_labels,
        t.root,
    )
    return PcgRep(scaled_tree, rep.leaf_map, rep.intervals.scaled(factor))


# ---------------------------------------------------------------------------
# generalized-leaf-power threshold lists -> interval sets
# ---------------------------------------------------------------------------

def glp_thresholds_to_intervals(thresholds) -> IntervalSet:
    """Distances at or below an odd number of the thresholds, as intervals.

    For ascending thresholds t_1 < ... < t_q the admissible set is a
    union of ceil(q/2) intervals: the region (t_i, t_{i+1}] is admissible
    exactly when q - i is odd, and [0, t_1] is admissible when q is odd.
    All intervals except a possible leading [0, t_1] are half-open.
    """
    ts = [as_fraction(t) for t in thresholds]
    if not ts:
        raise ValueError("need at least one threshold")
    if any(t < 0 for t in ts):
        raise ValueError("thresholds must be nonnegative")
    if any(a >= b for a, b in zip(ts, ts[1:])):
        raise ValueError("thresholds must be strictly ascending")
    q = len(ts)
    intervals = []
    if q % 2 == 1:
        intervals.append((Fraction(0), True, ts[0], True))
    for i in range(1, q):
        if (q - i) % 2 == 1:
            intervals.append((ts[i - 1], False, ts[i], True))
    return IntervalSet(tuple(intervals))


# ---------------------------------------------------------------------------
# JSON bundles for both representation kinds
# ---------------------------------------------------------------------------

def intervals_to_json(iset: IntervalSet) -> list:
    return [
        {
            "lo": format_fraction(lo), "lo_closed": lo_c,
            "hi": format_fraction(hi), "hi_closed": hi_c,
        }
        for lo, lo_c, hi, hi_c in iset.intervals
    ]


def intervals_from_json(data: list) -> IntervalSet:
    return IntervalSet(tuple(
        (as_fraction(d["lo"]), bool(d["lo_closed"]),
         as_fraction(d["hi"]), bool(d["hi_closed"]))
        for d in data
    ))


def rep_to_json(rep) -> dict:
    if isinstance(rep, PcgRep):
        return {
            "kind": "pcg",
            "tree": tree_to_json(rep.tree),
            "leaf_map": {v: leaf for v, leaf in rep.leaf_map},
            "intervals": intervals_to_json(rep.intervals),
        }
    if isinstance(rep, ThresholdRep):
        return {
            "kind": "threshold",
            "threshold": rep.threshold,
            "predicates": [rep_to_json(p) for p in rep.predicates],
        }
    raise TypeError(f"not a representation: {rep!r}")


def rep_from_json(data: dict):
    kind = data.get("kind", "threshold" if "predicates" in data else "pcg")
    if kind == "pcg":
        return PcgRep(
            tree_from_json(data["tree"]),
            tuple(sorted(data["leaf_map"].items())),
            intervals_from_json(data["intervals"]),
        )
    if kind == "threshold":
        return ThresholdRep(
            tuple(rep_from_json(p) for p in data["predicates"]),
            int(data["threshold"]),
        )
    raise ValueError(f"unknown representation kind {kind!r}")
