"""Path equilibria in arc-labelled digraphs under preferences over ultimately periodic words."""

from .dalograph import Dalograph, Path, Strategy, continuations, eligible_sequences, induced_path, induced_sequence
from .equilibrium import (
    Context,
    brute_force_equilibria,
    construct_equilibrium,
    find_hereditary_maximal_path,
    is_hereditary_maximal,
    is_maximal_continuation,
    is_semi_hereditary_maximal,
    seek_forward,
    verify_global,
    verify_local,
)
from .order import Check, FiniteRelation, LabelOrder, check_swo_equivalences
from .preference import lex, maxmin_limit_set, maxmin_set, maxminlight_limit_set, pareto, table
from .upword import UPWord, parse_upword

__version__ = "0.1.0"

__all__ = [
    "Check", "Context", "Dalograph", "FiniteRelation", "LabelOrder", "Path", "Strategy", "UPWord",
    "brute_force_equilibria", "check_swo_equivalences", "construct_equilibrium", "continuations",
    "eligible_sequences", "find_hereditary_maximal_path", "induced_path", "induced_sequence",
    "is_hereditary_maximal", "is_maximal_continuation", "is_semi_hereditary_maximal", "lex",
    "maxmin_limit_set", "maxmin_set", "maxminlight_limit_set", "pareto", "parse_upword",
    "seek_forward", "table", "verify_global", "verify_local",
]
