"""Exact register minimisation for weighted automata over the rationals."""
from .cra import Cra, Output, Update, cra_from_invariant, cra_to_wa, eval_cra, make_cra, wa_to_single_state_cra
from .errors import (
    AlphabetMismatch, BudgetExceeded, DimensionMismatch, NoMergeablePair, NotAnInvariant, ParseError,
    SingularMatrix, UnknownLetter, WahullError,
)
from .generators import lower_bound_wa, merge_example_invariant, merge_example_wa
from .invariant import InvariantReport, compute_invariant, strongest_invariant
from .linalg import Matrix, Subspace
from .minimize import (
    FeasibilityAnswer, Frontier, Representation, is_sequentializable, minimize_registers,
    pareto_frontier, register_complexity, state_register_feasible,
)
from .wa import WeightedAutomaton, equivalent_wa, eval_wa, is_sequential_wa, minimize_wa
from .zariski import AFFINE, LINEAR, AffineComponent, ZSet, canonicalize, is_invariant

__version__ = "0.1.0"

__all__ = [
    "AFFINE", "LINEAR", "AffineComponent", "AlphabetMismatch", "BudgetExceeded", "Cra",
    "DimensionMismatch", "FeasibilityAnswer", "Frontier", "InvariantReport", "Matrix",
    "NoMergeablePair", "NotAnInvariant", "Output", "ParseError", "Representation", "SingularMatrix",
    "Subspace", "UnknownLetter", "Update", "WahullError", "WeightedAutomaton", "ZSet", "canonicalize",
    "compute_invariant", "cra_from_invariant", "cra_to_wa", "equivalent_wa", "eval_cra", "eval_wa",
    "is_invariant", "is_sequential_wa", "is_sequentializable", "lower_bound_wa", "make_cra",
    "merge_example_invariant", "merge_example_wa", "minimize_registers", "minimize_wa",
    "pareto_frontier", "register_complexity", "state_register_feasible", "strongest_invariant",
    "wa_to_single_state_cra",
]
