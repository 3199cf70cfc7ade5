"""Exception hierarchy.

Validation errors mean the input data is at fault; defect errors mean an
internal invariant that must hold mathematically was observed to fail, which
is a bug, never a data problem.  Codimension errors are a guarded refusal:
the stratified Euler formula requires every singular component to sit in
codimension at least two, and inputs violating that are rejected, not
approximated.
"""


class EquichiError(Exception):
    """Base class for all package errors."""


class ValidationError(EquichiError):
    """Input data fails a documented precondition."""


class CodimensionError(EquichiError):
    """A singular stratum component has codimension below two."""

    def __init__(self, message: str, stratum_index: int, component_index: int):
        super().__init__(message)
        self.stratum_index = stratum_index
        self.component_index = component_index


class DefectError(EquichiError):
    """An internal invariant failed; indicates a bug in this package."""
