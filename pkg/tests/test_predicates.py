import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcg_lab.graphs import Graph, edge_key, standard_graph
from pcg_lab.predicates import (
    IntervalSet,
    PcgRep,
    ThresholdRep,
    eval_pcg,
    eval_threshold,
    evaluate,
    format_interval_set,
    glp_thresholds_to_intervals,
    parse_interval_set,
    rep_from_json,
    rep_to_json,
    scale_rep,
    verify_representation,
)
from pcg_lab.trees import WeightedTree, from_newick, reduce_tree

FIG1 = "((a:1,c:2,e:3,g:4)L:10,(f:4,h:3,b:2,d:1)R:10)r;"

FIG1_PANEL_B = {"ae", "ag", "ce", "cg", "eg",
                "fh", "bf", "df", "bh", "dh", "ad", "ab", "cd"}
FIG1_PANEL_C = {"ac", "ae", "ag", "ce", "cg", "eg",
                "bd", "bf", "bh", "df", "dh", "fh",
                "af", "ch", "be", "dg"}


def pairs_to_edges(pairs):
    return frozenset(edge_key(p[0], p[1]) for p in pairs)


def identity_rep(tree, intervals):
    labels = sorted(lab for _, lab in tree.leaf_labels)
    return PcgRep(tree, tuple((x, x) for x in labels), intervals)


# ---------------------------------------------------------------------------
# IntervalSet
# ---------------------------------------------------------------------------

def test_interval_normalization_merges_overlaps():
    s = IntervalSet(((Fraction(1), True, Fraction(5), True),
                     (Fraction(3), True, Fraction(8), False)))
    assert s.intervals == ((Fraction(1), True, Fraction(8), False),)


def test_interval_touching_merge_rules():
    # [1,2) + [2,3] merge (2 covered by the second); (1,2) + (2,3) stay apart
    s = IntervalSet(((1, True, 2, False), (2, True, 3, True)))
    assert len(s) == 1
    s = IntervalSet(((1, False, 2, False), (2, False, 3, False)))
    assert len(s) == 2
    assert not s.contains(2)


def test_interval_degenerate_points():
    s = IntervalSet.point(25)
    assert s.contains(25) and not s.contains(Fraction(49, 2))
    # a half-open point is empty and disappears
    assert IntervalSet(((3, True, 3, False),)).is_empty()


def test_interval_contains_respects_flags():
    s = IntervalSet(((Fraction(1), False, Fraction(2), True),))
    assert not s.contains(1)
    assert s.contains(Fraction(3, 2)) and s.contains(2)
    assert not s.contains(Fraction(5, 2))


def test_interval_rejects_bad_input():
    with pytest.raises(ValueError):
        IntervalSet(((-1, True, 2, True),))
    with pytest.raises(ValueError):
        IntervalSet(((3, True, 2, True),))


def test_interval_parse_format_round_trip():
    for text in ("[4,23]", "[3,7] u [25,25]", "(3,7]", "[0,1] u (4,9]", "empty"):
        s = parse_interval_set(text)
        assert format_interval_set(s) == text
    assert parse_interval_set("[1/2, 3/4]").contains(Fraction(2, 3))
    with pytest.raises(ValueError):
        parse_interval_set("[1;2]")


@settings(max_examples=80)
@given(st.lists(st.tuples(st.integers(0, 30), st.booleans(),
                          st.integers(0, 30), st.booleans()), max_size=4),
       st.integers(0, 31))
def test_interval_union_semantics(raw, probe):
    ivs = [(lo, lc, hi, hc) for lo, lc, hi, hc in raw if lo <= hi]
    s = IntervalSet(tuple(ivs))
    direct = any(
        (lo < probe or (lo == probe and lc))
        and (probe < hi or (probe == hi and hc))
        for lo, lc, hi, hc in ivs
    )
    assert s.contains(probe) == direct
    # normalized form is sorted and pairwise disjoint
    for a, b in zip(s.intervals, s.intervals[1:]):
        assert a[2] < b[0] or (a[2] == b[0] and not a[3] and not b[1])


# ---------------------------------------------------------------------------
# eval_pcg / eval_threshold
# ---------------------------------------------------------------------------

def test_figure1_panel_b():
    rep = identity_rep(from_newick(FIG1), IntervalSet.closed(4, 23))
    g = eval_pcg(rep)
    assert g.edges == pairs_to_edges(FIG1_PANEL_B)
    assert len(g.edges) == 13


def test_figure1_panel_c():
    rep = identity_rep(
        from_newick(FIG1),
        IntervalSet.closed(3, 7).union(IntervalSet.point(25)),
    )
    g = eval_pcg(rep)
    assert g.edges == pairs_to_edges(FIG1_PANEL_C)
    assert len(g.edges) == 16


def test_unit_star_point_interval_gives_complete_graph():
    tree = WeightedTree(
        ("hub", "l0", "l1", "l2"),
        (("hub", "l0", 1), ("hub", "l1", 1), ("hub", "l2", 1)),
        (("l0", "a"), ("l1", "b"), ("l2", "c")),
        "hub",
    )
    rep = PcgRep(tree, (("a", "a"), ("b", "b"), ("c", "c")),
                 IntervalSet.point(2))
    assert eval_pcg(rep) == standard_graph("complete", 3).__class__(
        ("a", "b", "c"),
        frozenset({("a", "b"), ("a", "c"), ("b", "c")}),
    )


def test_single_vertex_rep():
    tree = WeightedTree(("n",), (), (("n", "x"),))
    rep = PcgRep(tree, (("x", "x"),), IntervalSet.closed(0, 1))
    g = eval_pcg(rep)
    assert g.vertices == ("x",) and not g.edges


def test_leaf_map_must_be_bijection():
    tree = from_newick("(a:1,b:1,c:1)h;")
    with pytest.raises(ValueError):
        PcgRep(tree, (("x", "a"), ("y", "b")), IntervalSet.closed(0, 1))
    with pytest.raises(ValueError):
        PcgRep(tree, (("x", "a"), ("y", "a"), ("z", "c")),
               IntervalSet.closed(0, 1))


def test_threshold_validation():
    tree = from_newick("(a:1,b:1)h;")
    rep = identity_rep(tree, IntervalSet.closed(0, 5))
    with pytest.raises(ValueError):
        ThresholdRep((rep,), 2)
    with pytest.raises(ValueError):
        ThresholdRep((), 1)
    other = identity_rep(from_newick("(a:1,c:1)h;"), IntervalSet.closed(0, 5))
    with pytest.raises(ValueError):
        ThresholdRep((rep, other), 1)


def test_single_predicate_threshold_equals_eval_pcg():
    rep = identity_rep(from_newick(FIG1), IntervalSet.closed(4, 23))
    assert eval_threshold(ThresholdRep((rep,), 1)) == eval_pcg(rep)


def test_threshold_monotonicity():
    rng = random.Random(5)
    reps = []
    for _ in range(4):
        lo = rng.randint(0, 10)
        hi = lo + rng.randint(0, 15)
        reps.append(identity_rep(from_newick(FIG1),
                                 IntervalSet.closed(lo, hi)))
    prev = None
    for t in range(1, 5):
        g = eval_threshold(ThresholdRep(tuple(reps), t))
        if prev is not None:
            assert g.edges <= prev.edges
        prev = g


def test_union_and_intersection_special_cases():
    rng = random.Random(6)
    for _ in range(10):
        reps = []
        for _ in range(3):
            lo = rng.randint(0, 12)
            reps.append(identity_rep(
                from_newick(FIG1),
                IntervalSet.closed(lo, lo + rng.randint(0, 12)),
            ))
        union = frozenset().union(*(eval_pcg(r).edges for r in reps))
        inter = eval_pcg(reps[0]).edges
        for r in reps[1:]:
            inter &= eval_pcg(r).edges
        assert eval_threshold(ThresholdRep(tuple(reps), 1)).edges == union
        assert eval_threshold(ThresholdRep(tuple(reps), 3)).edges == inter


def test_complete_padding_predicate_is_neutral():
    from pcg_lab.constructions import complete_witness

    rep = identity_rep(from_newick(FIG1), IntervalSet.closed(4, 23))
    base = ThresholdRep((rep,), 1)
    padded = ThresholdRep((rep, complete_witness(rep.vertices)), 2)
    assert eval_threshold(base) == eval_threshold(padded)


def test_eval_invariant_under_reduce_and_scaling():
    tree = from_newick(FIG1)
    rep = identity_rep(tree, IntervalSet.closed(4, 23))
    want = eval_pcg(rep)
    reduced = PcgRep(reduce_tree(tree), rep.leaf_map, rep.intervals)
    assert eval_pcg(reduced) == want
    for factor in (Fraction(1, 3), 2, Fraction(7, 5)):
        assert eval_pcg(scale_rep(rep, factor)) == want
    with pytest.raises(ValueError):
        scale_rep(rep, 0)


def test_empty_interval_set_evaluates_to_empty_graph():
    rep = identity_rep(from_newick(FIG1), IntervalSet.empty())
    assert not eval_pcg(rep).edges


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def test_verify_valid():
    rep = identity_rep(from_newick(FIG1), IntervalSet.closed(4, 23))
    target = Graph(tuple("abcdefgh"), pairs_to_edges(FIG1_PANEL_B))
    report = verify_representation(rep, target)
    assert report.valid and not report.missing_edges and not report.extra_edges


def test_verify_mismatch_lists():
    rep = identity_rep(from_newick(FIG1), IntervalSet.closed(4, 23))
    target = Graph(tuple("abcdefgh"),
                   pairs_to_edges(FIG1_PANEL_B - {"ab"} | {"ef"}))
    report = verify_representation(rep, target)
    assert not report.valid
    assert report.extra_edges == (("a", "b"),)
    assert report.missing_edges == (("e", "f"),)
    assert ("a", "b", "extra") in report.mismatches()


def test_verify_requires_same_vertices():
    rep = identity_rep(from_newick(FIG1), IntervalSet.closed(4, 23))
    with pytest.raises(ValueError):
        verify_representation(rep, standard_graph("complete", 8))


# ---------------------------------------------------------------------------
# threshold-list conversion
# ---------------------------------------------------------------------------

def test_glp_single_threshold_is_leaf_power_interval():
    s = glp_thresholds_to_intervals([5])
    assert s.intervals == ((Fraction(0), True, Fraction(5), True),)


def test_glp_two_thresholds_half_open():
    s = glp_thresholds_to_intervals([3, 7])
    assert s.intervals == ((Fraction(3), False, Fraction(7), True),)
    assert not s.contains(3) and s.contains(7)


def test_glp_three_thresholds():
    s = glp_thresholds_to_intervals([1, 4, 9])
    assert s.intervals == (
        (Fraction(0), True, Fraction(1), True),
        (Fraction(4), False, Fraction(9), True),
    )


def test_glp_rejects_bad_lists():
    with pytest.raises(ValueError):
        glp_thresholds_to_intervals([])
    with pytest.raises(ValueError):
        glp_thresholds_to_intervals([3, 3])
    with pytest.raises(ValueError):
        glp_thresholds_to_intervals([5, 2])
    with pytest.raises(ValueError):
        glp_thresholds_to_intervals([-1, 2])


def test_glp_interval_count_and_parity_oracle():
    rng = random.Random(7)
    for _ in range(30):
        q = rng.randint(1, 6)
        vals = sorted(rng.sample(range(0, 60), q))
        ts = [Fraction(v, rng.choice((1, 2))) for v in vals]
        ts = sorted(set(ts))
        s = glp_thresholds_to_intervals(ts)
        assert len(s) == (len(ts) + 1) // 2
        for _ in range(25):
            d = Fraction(rng.randint(0, 70), rng.choice((1, 2, 3)))
            odd = sum(1 for t in ts if d <= t) % 2 == 1
            assert s.contains(d) == odd


# ---------------------------------------------------------------------------
# serialization round trips
# ---------------------------------------------------------------------------

def test_rep_json_round_trip():
    rep = identity_rep(
        from_newick(FIG1),
        IntervalSet.closed(3, 7).union(IntervalSet.point(25)),
    )
    data = json.loads(json.dumps(rep_to_json(rep)))
    back = rep_from_json(data)
    assert eval_pcg(back) == eval_pcg(rep)


def test_threshold_json_round_trip():
    r1 = identity_rep(from_newick(FIG1), IntervalSet.closed(4, 23))
    r2 = identity_rep(from_newick(FIG1), IntervalSet.closed(3, 7))
    trep = ThresholdRep((r1, r2), 2)
    back = rep_from_json(json.loads(json.dumps(rep_to_json(trep))))
    assert evaluate(back) == evaluate(trep)
    assert back.threshold == 2
