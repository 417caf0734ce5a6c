"""Workbench for reversible structures: multisets of signals and gates
that reduce forward and backward."""

from .accs import correspondence_check, encode, parse_process, rccs_initial, rccs_step
from .coherence import check_preservation, is_coherent
from .core import EMPTY, Gate, Structure, canonicalize, resource_count, structure_size
from .errors import (
    BadMultiplicity,
    DuplicateMarker,
    EmptyGate,
    Inconclusive,
    MalformedQuery,
    NotConverse,
    NotEnabled,
    NotEnabledAfterSwap,
    NotIndependent,
    NotLinear,
    RevStructError,
    SourceError,
    TraceTooLong,
)
from .reach import ReachAnswer, reachable_bfs, reachable_coherent
from .semantics import (
    BWD,
    FWD,
    Policy,
    StepLabel,
    Trace,
    apply_step,
    backward_normal_form,
    converse,
    enabled_steps,
    run,
)
from .syntax import parse_gate, parse_structure, parse_trace, print_structure, print_trace
from .traces import cancel_converse, independent, perm_equiv, standardize, swap_adjacent

__version__ = "0.1.0"

__all__ = [
    "BWD",
    "BadMultiplicity",
    "DuplicateMarker",
    "EMPTY",
    "EmptyGate",
    "FWD",
    "Gate",
    "Inconclusive",
    "MalformedQuery",
    "NotConverse",
    "NotEnabled",
    "NotEnabledAfterSwap",
    "NotIndependent",
    "NotLinear",
    "Policy",
    "ReachAnswer",
    "RevStructError",
    "SourceError",
    "StepLabel",
    "Structure",
    "Trace",
    "TraceTooLong",
    "apply_step",
    "backward_normal_form",
    "cancel_converse",
    "canonicalize",
    "check_preservation",
    "converse",
    "correspondence_check",
    "enabled_steps",
    "encode",
    "independent",
    "is_coherent",
    "parse_gate",
    "parse_process",
    "parse_structure",
    "parse_trace",
    "perm_equiv",
    "print_structure",
    "print_trace",
    "rccs_initial",
    "rccs_step",
    "reachable_bfs",
    "reachable_coherent",
    "resource_count",
    "run",
    "standardize",
    "structure_size",
    "swap_adjacent",
]
