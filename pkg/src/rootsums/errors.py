"""Shared exception types."""


class SizeGuardError(RuntimeError):
    """Raised when a requested computation exceeds its configured size budget.

    The CLI maps this to exit code 3; it always means "refused", never
    "wrong answer".
    """


class EnumerationOverflowError(SizeGuardError):
    """Lattice enumeration would visit too many points to certify a result."""
