"""Exception types shared across the package."""


class BlowupProfilesError(Exception):
    """Base class for all package errors."""


class DomainError(BlowupProfilesError):
    """Input outside the validity domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class ToleranceError(BlowupProfilesError):
    """An adaptive scheme could not certify the requested tolerance."""


class BracketError(BlowupProfilesError):
    """A root bracket does not straddle a sign change."""


class ConvergenceError(BlowupProfilesError):
    """Iteration cap reached before the requested tolerance."""


class MatchError(BlowupProfilesError):
    """The matching ratio is not real positive, so no amplitude exists."""


class GridError(BlowupProfilesError):
    """Stencil or grid request cannot be honored (e.g. too close to z=0)."""
