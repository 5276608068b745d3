"""Tree and system distances."""
from .budget import Budget, SearchClock
from .matching import Matching, hungarian
from .oracle import bruteforce_dist_with_vars, bruteforce_distance, iter_mappings
from .ordered import iso_ordered_vars, ted_ordered
from .results import EquationPair, SystemDistResult, TedResult
from .system import delete_cost, separate_constants, system_dist, system_pdist
from .unordered import lower_bound, ted_unordered
from .variables import (
    Substitution,
    VarDistResult,
    apply_substitution,
    decide_with_vars,
    dist_with_vars,
    enumerate_substitutions,
)

__all__ = [
    "Budget",
    "EquationPair",
    "Matching",
    "SearchClock",
    "Substitution",
    "SystemDistResult",
    "TedResult",
    "VarDistResult",
    "apply_substitution",
    "bruteforce_dist_with_vars",
    "bruteforce_distance",
    "decide_with_vars",
    "delete_cost",
    "dist_with_vars",
    "enumerate_substitutions",
    "hungarian",
    "iso_ordered_vars",
    "iter_mappings",
    "lower_bound",
    "separate_constants",
    "system_dist",
    "system_pdist",
    "ted_ordered",
    "ted_unordered",
]
