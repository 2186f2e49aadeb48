"""Exception types shared across the package."""


class DegenerateBasePoint(ValueError):
    """Raised when a base point would collapse the preperiodic orbit structure."""


class InvariantViolation(RuntimeError):
    """A proven internal invariant failed.

    This always signals a bug (or a breach of a mathematically guaranteed
    property), never bad user input, and must not be silently absorbed.
    """
