"""Error taxonomy shared across the package."""


class RootfoldError(Exception):
    """Base class for all package errors."""


class DimensionError(RootfoldError):
    """Operands live in different ambient spaces."""


class DomainError(RootfoldError):
    """Input outside the operation's domain (zero vector, bad label, j not in J, ...)."""


class SolverError(RootfoldError):
    """Linear system inconsistent or underdetermined on the intended span."""


class ConsistencyError(RootfoldError):
    """Internal cross-check failed; signals a construction bug."""


class TheoremViolationError(ConsistencyError):
    """A certified structural identity failed to hold on concrete data."""


class ClassificationError(RootfoldError):
    """A root set matches no diagram in the classification."""
