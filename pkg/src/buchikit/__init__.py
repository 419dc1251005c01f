"""Buchi automata complementation and language inclusion.

The package complements nondeterministic Buchi automata by decomposing them
into strongly connected components, running a cheap dedicated construction
per component class, and gluing the pieces into one simple generalized
Rabin automaton.  Language inclusion runs on the fly against a lazy product
of that construction, with an early-terminating emptiness check.
"""

from .automata import (
    Alphabet,
    Sgra,
    Transition,
    acceptance_formula,
    ap_alphabet,
    bfs_canonical_form,
    named_alphabet,
    normalize_colors,
    push_state_acceptance,
    restrict,
)
from .complement import ColorPlan, complement, complement_mono_nac
from .emptiness import EmptinessResult, is_empty, is_empty_oracle, run_emptiness
from .errors import BuchikitError, CapacityError, FormatError, UnsupportedAcceptanceError
from .hoa import parse_ba, parse_hoa, print_ba, print_hoa
from .inclusion import InclusionResult, check_inclusion, included, included_oracle
from .oracle import LassoWord, enumerate_lassos, format_lasso, member, random_ba
from .postprocess import trim
from .scc import Block, SccInfo, SccKind, build_partitioning, classify, is_elevator, sccs

__all__ = [
    "Alphabet",
    "Block",
    "BuchikitError",
    "CapacityError",
    "ColorPlan",
    "EmptinessResult",
    "FormatError",
    "InclusionResult",
    "LassoWord",
    "SccInfo",
    "SccKind",
    "Sgra",
    "Transition",
    "UnsupportedAcceptanceError",
    "acceptance_formula",
    "ap_alphabet",
    "bfs_canonical_form",
    "build_partitioning",
    "check_inclusion",
    "classify",
    "complement",
    "complement_mono_nac",
    "enumerate_lassos",
    "format_lasso",
    "included",
    "included_oracle",
    "is_elevator",
    "is_empty",
    "is_empty_oracle",
    "member",
    "named_alphabet",
    "normalize_colors",
    "parse_ba",
    "parse_hoa",
    "print_ba",
    "print_hoa",
    "push_state_acceptance",
    "random_ba",
    "restrict",
    "run_emptiness",
    "sccs",
    "trim",
]
