"""Sparse associative arrays and graph construction over pluggable value algebras."""
from .algebra import (BUILTIN_NAMES, NEG_INF, POS_INF, BOTTOM, TOP, ConditionReport,
                      ValueAlgebra, builtin_algebra, check_conditions,
                      custom_algebra, integers, integers_mod, table_algebra)
from .array import (AssociativeArray, KeyRange, KeySet, elementwise_add,
                    elementwise_multiply, multiply, render, subarray, transpose)
from .graph import (Edge, Graph, IncidencePair, adjacency, incidence_from_graph,
                    reverse_adjacency, validate_adjacency)
from .ingest import (TabularSource, explode, incidence_pair_from_columns,
                     load_demo, read_tsv, reweight)
from .witness import (TheoremVerdict, lemma1_instance, lemma2_instance,
                      lemma3_instance, test_theorem)

__all__ = [
    "BUILTIN_NAMES", "NEG_INF", "POS_INF", "BOTTOM", "TOP", "ConditionReport",
    "ValueAlgebra", "builtin_algebra", "check_conditions", "custom_algebra",
    "integers", "integers_mod", "table_algebra",
    "AssociativeArray", "KeyRange", "KeySet", "elementwise_add",
    "elementwise_multiply", "multiply", "render", "subarray", "transpose",
    "Edge", "Graph", "IncidencePair", "adjacency", "incidence_from_graph",
    "reverse_adjacency", "validate_adjacency",
    "TabularSource", "explode", "incidence_pair_from_columns", "load_demo",
    "read_tsv", "reweight",
    "TheoremVerdict", "lemma1_instance", "lemma2_instance", "lemma3_instance",
    "test_theorem",
]
