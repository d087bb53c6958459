"""Exact cover toolkit: Algorithm X with a naive and a Dancing Links engine."""

from .errors import CoverError
from .model import ColumnKind, Instance, Solution, check_solution, new_instance
from .search import (
    EngineKind,
    HaltReason,
    SearchLimits,
    SearchStats,
    brute_force_solutions,
    count_solutions,
    solutions,
    solve,
)

__all__ = [
    "ColumnKind",
    "CoverError",
    "EngineKind",
    "HaltReason",
    "Instance",
    "SearchLimits",
    "SearchStats",
    "Solution",
    "brute_force_solutions",
    "check_solution",
    "count_solutions",
    "new_instance",
    "solutions",
    "solve",
]
