"""Exact and polynomial-time k-IDP solvers sharing one outcome type."""

from .base import (
    BudgetExhausted,
    EndpointMismatch,
    SolveBudget,
    SolveOutcome,
    SolveStats,
    Status,
    check_solution,
    shortcut,
)
from .exact import find_hole_through, is_hole_through, solve_exact
from .poly import PreconditionError, solve_chair_free, solve_dispatch, solve_peel
from .small import has_independent_set, sat_solve

__all__ = [
    "BudgetExhausted",
    "EndpointMismatch",
    "PreconditionError",
    "SolveBudget",
    "SolveOutcome",
    "SolveStats",
    "Status",
    "check_solution",
    "find_hole_through",
    "has_independent_set",
    "is_hole_through",
    "sat_solve",
    "shortcut",
    "solve_chair_free",
    "solve_dispatch",
    "solve_exact",
    "solve_peel",
]
