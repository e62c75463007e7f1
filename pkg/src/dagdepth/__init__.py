"""DAG-depth of digraphs, DAG-depth decompositions and lift-free cop strategies."""

from dagdepth.decomposition import (
    Decomposition,
    Violation,
    build_decomposition,
    check_valid,
    is_optimal,
    is_valid,
    parse_decomposition,
    serialize_decomposition,
)
from dagdepth.digraph import (
    Digraph,
    Fragment,
    dag_depth_and_levels,
    dag_structure,
    parse_digraph,
    reachable_fragments,
    reachable_set,
    serialize_digraph,
)
from dagdepth.errors import (
    DagDepthError,
    IllegalMoveError,
    MalformedDecompositionError,
    NotADagError,
    ParseError,
    SizeLimitError,
    UnknownVertexError,
)
from dagdepth.game import (
    TraceEvent,
    VerifyReport,
    copnumber_bruteforce,
    legal_cop_choices,
    robber_options,
    run_trace,
    verify_strategy,
)
from dagdepth.solver import best_roots, ddp
from dagdepth.transform import (
    MergeVerdict,
    closure,
    is_partial_closure,
    merge_pair,
    merge_verdict,
    reduce,
)

__all__ = [
    "DagDepthError", "Decomposition", "Digraph", "Fragment", "IllegalMoveError",
    "MalformedDecompositionError", "MergeVerdict", "NotADagError", "ParseError",
    "SizeLimitError", "TraceEvent", "UnknownVertexError", "VerifyReport", "Violation",
    "best_roots", "build_decomposition", "check_valid", "closure", "copnumber_bruteforce",
    "dag_depth_and_levels", "dag_structure", "ddp", "is_optimal", "is_partial_closure",
    "is_valid", "legal_cop_choices", "merge_pair", "merge_verdict", "parse_decomposition",
    "parse_digraph", "reachable_fragments", "reachable_set", "reduce", "robber_options",
    "run_trace", "serialize_decomposition", "serialize_digraph", "verify_strategy",
]  # fmt: skip
