"""Compilers from hole, 3-SAT and independent-set instances to IDP instances."""

from .artifact import ProvenanceError, ReductionArtifact, role
from .cycle import CycleReductionError, cycle_to_idp, solution_from_hole
from .indset import IndSetReductionError, is_to_idp, solution_from_independent_set
from .sat import (
    AssignmentError,
    DuplicateSelection,
    NotAHole,
    build_hole_graph,
    sat_to_idp,
    witness_from_assignment,
)

__all__ = [
    "AssignmentError",
    "CycleReductionError",
    "DuplicateSelection",
    "IndSetReductionError",
    "NotAHole",
    "ProvenanceError",
    "ReductionArtifact",
    "build_hole_graph",
    "cycle_to_idp",
    "is_to_idp",
    "role",
    "sat_to_idp",
    "solution_from_hole",
    "solution_from_independent_set",
    "witness_from_assignment",
]
