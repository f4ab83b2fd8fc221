"""Tree-distance graph representations: construction, evaluation, exact
recognition, shell enumeration and the supporting graph/tree toolkit."""

from .graphs import (
    Graph,
    complement,
    disjoint_union,
    double_complement_prime,
    from_graph6,
    graph_from_json,
    graph_to_json,
    standard_graph,
    to_graph6,
)
from .predicates import (
    IntervalSet,
    PcgRep,
    ThresholdRep,
    VerificationReport,
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
from .trees import (
    LeafMetric,
    WeightedTree,
    bridge_join,
    from_newick,
    leaf_distances,
    reduce_tree,
    to_newick,
    tree_from_json,
    tree_to_json,
)
from .constructions import (
    WitnessedGraph,
    build_fk_family,
    build_gk_family,
    build_qt_witness,
    complete_witness,
    empty_witness,
    family_Fr,
    family_Hy,
    fixture,
    incidence_graph,
    pad_and_to_threshold,
    pad_or_to_threshold,
    star_tree,
    uniform_incidence_graph,
    universality_witness,
)
from .recognizer import (
    CensusReport,
    RecognitionResult,
    binary_refinement,
    census,
    non_pcg_certificate,
    recognize_leaf_power,
    recognize_pcg,
)
from .shells import (
    BoundReport,
    ShellFamily,
    enumerate_shells,
    naive_shell_sweep,
    per_edge_shell_families,
    shell_bound_report,
)

__version__ = "0.1.0"
