"""Exception types shared across the package.

Validation-style failures (bad input, broken precondition, malformed file)
map to CLI exit code 2; capacity and budget failures map to exit code 3.
"""


class FreezeTagError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(FreezeTagError):
    """Structurally invalid instance, tree, or file."""


class ParameterError(ValidationError):
    """Out-of-range or inconsistent algorithm parameter."""


class PreconditionError(ValidationError):
    """An algorithm was called on an instance outside its contract."""


class DispatchError(ValidationError):
    """Algorithm/instance kind mismatch."""


class CapacityError(FreezeTagError):
    """Instance exceeds a solver's hard size limit."""


class BudgetError(FreezeTagError):
    """Enumeration or time budget exhausted."""
