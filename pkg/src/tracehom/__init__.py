"""Integral homology of partial trace monoid actions and CE nets."""

from .action import (
    PartialActionSystem,
    ValidationError,
    apply_event,
    apply_word,
    connected_components,
    reachable_states,
    validate,
)
from .cenet import CENet, compile_net, derive_independence, enabled, fire
from .complex import HomologyGroup, build_bases, build_complex, build_differential, euler_characteristic, homology, homology_groups
from .smith import SmithDecomposition, SparseIntMatrix, smith_normal_form
from .trace import EventAlphabet, IndependenceRelation, enumerate_cliques, max_clique_dimension, trace_normal_form

__version__ = "0.1.0"

__all__ = [
    "CENet",
    "EventAlphabet",
    "HomologyGroup",
    "IndependenceRelation",
    "PartialActionSystem",
    "SmithDecomposition",
    "SparseIntMatrix",
    "ValidationError",
    "apply_event",
    "apply_word",
    "build_bases",
    "build_complex",
    "build_differential",
    "compile_net",
    "connected_components",
    "derive_independence",
    "enabled",
    "enumerate_cliques",
    "euler_characteristic",
    "fire",
    "homology",
    "homology_groups",
    "max_clique_dimension",
    "reachable_states",
    "smith_normal_form",
    "trace_normal_form",
    "validate",
]
