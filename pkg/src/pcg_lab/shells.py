"""Exact enumeration of the leaf subsets cut out by shifted distance balls.

For a point x on the geometric tree and a shift value, the shell is the
set of leaves whose distance from x, plus the shift, lands in the
admissible interval set.  Restricted to one edge, each leaf's distance
is affine in x with slope +1 or -1, so the (x, shift) plane is cut by
finitely many boundary lines; the family of shells is exactly the set
of membership patterns over the faces of that arrangement.  Everything
runs on an integer grid fine enough to represent all crossings and
midpoints exactly, so open/closed endpoints are honored bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .predicates import IntervalSet
from .trees import WeightedTree, reduce_tree


@dataclass(frozen=True, eq=False)
class ShellFamily:
    """Ground labels plus the achieved subsets, encoded as bitmasks."""

    ground: tuple[str, ...]
    shells: frozenset  # of int bitmasks (bit i = ground[i])

    def __post_init__(self):
        full = (1 << len(self.ground)) - 1
        if any(mask & ~full for mask in self.shells):
            raise ValueError("shell bitmask outside the ground set")
        if 0 not in self.shells:
            raise ValueError("the empty shell is always achievable")

    def __len__(self) -> int:
        return len(self.shells)

    def members(self, mask: int) -> tuple[str, ...]:
        return tuple(
            lab for i, lab in enumerate(self.ground) if mask >> i & 1
        )

    def has_subset(self, labels) -> bool:
        want = 0
        pos = {lab: i for i, lab in enumerate(self.ground)}
        for lab in labels:
            want |= 1 << pos[lab]
        return want in self.shells

    def bitstrings(self) -> list[str]:
        """Sorted fixed-width strings, ground[0] leftmost."""
        width = len(self.ground)
        out = [
            "".join("1" if mask >> i & 1 else "0" for i in range(width))
            for mask in self.shells
        ]
        return sorted(out)

    def to_json(self) -> dict:
        return {"ground": list(self.ground), "shells": self.bitstrings()}


def shell_family_from_json(data: dict) -> ShellFamily:
    ground = tuple(data["ground"])
    shells = set()
    for bits in data["shells"]:
        mask = 0
        for i, ch in enumerate(bits):
            if ch == "1":
                mask |= 1 << i
        shells.add(mask)
    return ShellFamily(ground, frozenset(shells))


# ---------------------------------------------------------------------------
# shared per-edge geometry
# ---------------------------------------------------------------------------

def _prepare(t: WeightedTree, intervals: IntervalSet):
    """Reduced tree, ordered ground labels and per-edge leaf lines.

    For each edge (u, v, length) and each leaf, the distance from the
    point at offset x (measured from u) is sigma*x + c with sigma = +1
    when the leaf hangs off the u side and -1 otherwise.
    """
    if len(t.leaf_labels) < 2:
        raise ValueError("shell enumeration needs at least 2 leaves")
    if not t.is_reduced():
        t = reduce_tree(t)
    ground = t.labels()
    index = {lab: i for i, lab in enumerate(ground)}

    per_edge = []
    for u, v, w in t.edges:
        du = t.distances_from(u)
        dv = t.distances_from(v)
        lines = []  # (leaf index, sigma, c)
        for node, lab in t.leaf_labels:
            if dv[node] == du[node] + w:  # leaf on the u side
                lines.append((index[lab], 1, du[node]))
            else:
                lines.append((index[lab], -1, w + dv[node]))
        per_edge.append(((u, v, w), lines))
    return t, ground, per_edge


def _edge_scale(length: Fraction, lines, endpoints) -> int:
    """Grid unit: 8 * lcm of all denominators on this edge.

    Crossing abscissas are then multiples of 4 and midpoints of sorted
    candidates are still integers, so no exactness is ever lost.
    """
    denom = length.denominator
    for _, _, c in lines:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    for e in endpoints:
        denom = denom * e.denominator // math.gcd(denom, e.denominator)
    return 8 * denom


def _with_midpoints(values: list[int]) -> list[int]:
    """Sorted unique values interleaved with the midpoint of each gap."""
    values = sorted(set(values))
    out = []
    for a, b in zip(values, values[1:]):
        out.append(a)
        out.append((a + b) // 2)
    if values:
        out.append(values[-1])
    return sorted(set(out))


# ---------------------------------------------------------------------------
# main enumeration: arrangement columns + event-toggle sweep per column
# ---------------------------------------------------------------------------

def _edge_shells(length: Fraction, lines, intervals: IntervalSet) -> set:
    """All shells achieved while the point stays on one edge."""
    endpoints = intervals.endpoints()
    scale = _edge_scale(length, lines, endpoints)
    span = int(length * scale)
    scaled = [
        (idx, sigma, int(c * scale)) for idx, sigma, c in lines
    ]
    scaled_iv = [
        (int(lo * scale), lo_c, int(hi * scale), hi_c)
        for lo, lo_c, hi, hi_c in intervals.intervals
    ]

    # column abscissas: crossings of opposite-slope boundary lines,
    # both edge ends, and a midpoint inside every slab
    xs = [0, span]
    pos = [c for _, sigma, c in scaled if sigma == 1]
    neg = [c for _, sigma, c in scaled if sigma == -1]
    bounds = [b for iv in scaled_iv for b in (iv[0], iv[2])]
    for ca in pos:
        for cb in neg:
            for t1 in bounds:
                for t2 in bounds:
                    x2 = t1 - ca - t2 + cb
                    if x2 % 2:
                        raise AssertionError("grid too coarse for a crossing")
                    x = x2 // 2
                    if 0 <= x <= span:
                        xs.append(x)
    shells = {0}
    for x in _with_midpoints(xs):
        _sweep_column(x, scaled, scaled_iv, shells)
    return shells


def _sweep_column(x: int, scaled, scaled_iv, shells: set):
    """Emit every shell along one vertical line of the arrangement.

    Membership of leaf a toggles at shifted interval endpoints; the
    sweep walks the distinct event values keeping the current subset as
    a bitmask, recording the subset both at each event value and on the
    open gap that follows it.
    """
    starts_closed: dict = {}
    starts_open: dict = {}
    ends_closed: dict = {}
    ends_open: dict = {}
    for idx, sigma, c in scaled:
        d = sigma * x + c
        bit = 1 << idx
        for lo, lo_c, hi, hi_c in scaled_iv:
            a, b = lo - d, hi - d
            if lo_c:
                starts_closed[a] = starts_closed.get(a, 0) | bit
            else:
                starts_open[a] = starts_open.get(a, 0) | bit
            if hi_c:
                ends_closed[b] = ends_closed.get(b, 0) | bit
            else:
                ends_open[b] = ends_open.get(b, 0) | bit
    events = sorted(
        set(starts_closed) | set(starts_open)
        | set(ends_closed) | set(ends_open)
    )
    cur = 0
    shells.add(cur)
    for v in events:
        at = (cur | starts_closed.get(v, 0)) & ~ends_open.get(v, 0)
        shells.add(at)
        cur = (at | starts_open.get(v, 0)) & ~ends_closed.get(v, 0)
        shells.add(cur)


def per_edge_shell_families(t: WeightedTree, intervals: IntervalSet):
    """[(edge, shell set)] per reduced-tree edge; edges as (u, v, weight)."""
    t, ground, per_edge = _prepare(t, intervals)
    if intervals.is_empty():
        return ground, [(edge, {0}) for edge, _ in per_edge]
    return ground, [
        (edge, _edge_shells(edge[2], lines, intervals))
        for edge, lines in per_edge
    ]


def enumerate_shells(t: WeightedTree, intervals: IntervalSet) -> ShellFamily:
    """The exact shell family of a tree and interval set."""
    ground, families = per_edge_shell_families(t, intervals)
    shells = {0}
    for _, fam in families:
        shells |= fam
    return ShellFamily(ground, frozenset(shells))


# ---------------------------------------------------------------------------
# independent oracle: dense double sweep with direct membership tests
# ---------------------------------------------------------------------------

def naive_shell_sweep(t: WeightedTree, intervals: IntervalSet) -> ShellFamily:
    """Slow reference enumeration used to cross-check enumerate_shells.

    Candidate abscissas come from the difference equations
    d_a(x) - d_b(x) = endpoint - endpoint' (the only places where the
    shifted boundary order can change), and every candidate column is
    swept over all shifted endpoints, their midpoints and two
    sentinels, testing each leaf directly against the interval set.
    """
    t, ground, per_edge = _prepare(t, intervals)
    shells = {0}
    if intervals.is_empty():
        return ShellFamily(ground, frozenset(shells))

    bounds = intervals.endpoints()
    for (u, v, w), lines in per_edge:
        scale = _edge_scale(w, lines, bounds)
        span = int(w * scale)
        leaves = [(idx, sigma, int(c * scale)) for idx, sigma, c in lines]
        ivs = [
            (int(lo * scale), lo_c, int(hi * scale), hi_c)
            for lo, lo_c, hi, hi_c in intervals.intervals
        ]
        ends = [b for iv in ivs for b in (iv[0], iv[2])]

        xs = {0, span}
        for ia, sa, ca in leaves:
            for ib, sb, cb in leaves:
                if sa <= sb:
                    continue  # need one +1 and one -1 slope
                for t1 in ends:
                    for t2 in ends:
                        x = (t1 - t2 - ca + cb) // 2  # exact: grid is 8*lcm
                        if 0 <= x <= span:
                            xs.add(x)
        for x in _with_midpoints(sorted(xs)):
            dists = [(idx, sigma * x + c) for idx, sigma, c in leaves]
            lam_events = sorted({b - d for _, d in dists for b in ends})
            # lambda grid is doubled so gap midpoints stay integral
            lams = [2 * lam_events[0] - 2]
            for a, b in zip(lam_events, lam_events[1:]):
                lams.append(2 * a)
                lams.append(a + b)
            lams.append(2 * lam_events[-1])
            lams.append(2 * lam_events[-1] + 2)
            for lam2 in lams:
                mask = 0
                for idx, d in dists:
                    val2 = 2 * d + lam2
                    for lo, lo_c, hi, hi_c in ivs:
                        lo2, hi2 = 2 * lo, 2 * hi
                        if ((lo2 < val2 or (lo2 == val2 and lo_c))
                                and (val2 < hi2 or (val2 == hi2 and hi_c))):
                            mask |= 1 << idx
                            break
                shells.add(mask)
    return ShellFamily(ground, frozenset(shells))


# ---------------------------------------------------------------------------
# product bound report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """Necessary-condition check for representing a set system."""

    ground_size: int
    family_size: int
    shell_counts: tuple
    product: int
    feasible: bool
    min_predicates_for_max: int | None

    def to_json(self) -> dict:
        return {
            "ground_size": self.ground_size,
            "family_size": self.family_size,
            "shell_counts": list(self.shell_counts),
            "product": self.product,
            "feasible": self.feasible,
            "min_predicates_for_max": self.min_predicates_for_max,
        }


def shell_bound_report(ground_size: int, family_size: int,
                       shell_counts) -> BoundReport:
    """Is family_size <= product of the shell counts, and how many
    predicates of the largest observed shell count would be needed?

    Only enumerated counts enter the bound: with per-predicate shell
    families F_1..F_k, each right-side neighborhood is determined by a
    k-tuple of member shells, so a family larger than the product is
    impossible with those trees and intervals.
    """
    counts = tuple(int(c) for c in shell_counts)
    if ground_size < 1 or family_size < 1 or not counts:
        raise ValueError("inputs must be positive")
    if any(c < 1 for c in counts):
        raise ValueError("shell counts must be positive")
    product = 1
    for c in counts:
        product *= c
    feasible = family_size <= product
    biggest = max(counts)
    if family_size <= 1:
        min_k = 0
    elif biggest == 1:
        min_k = None
    else:
        min_k = 0
        reach = 1
        while reach < family_size:
            reach *= biggest
            min_k += 1
    return BoundReport(
        ground_size=ground_size,
        family_size=family_size,
        shell_counts=counts,
        product=product,
        feasible=feasible,
        min_predicates_for_max=min_k,
    )
