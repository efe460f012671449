"""Exception types shared across the package."""


class CrossclustError(Exception):
    """Base class for all library errors."""


class ValidationError(CrossclustError):
    """Invalid argument, malformed input, or broken precondition."""


class CapExceededError(CrossclustError):
    """Requested computation is beyond the exhaustive-enumeration caps."""


class BoundViolationError(CrossclustError):
    """A certified cost bound failed to hold.

    This is never expected on valid inputs; raising it signals either an
    implementation bug or a genuine counterexample, both of which must be
    surfaced rather than swallowed.
    """


class DescentViolationError(BoundViolationError):
    """A swap that must strictly lower the row/column spread failed to."""
