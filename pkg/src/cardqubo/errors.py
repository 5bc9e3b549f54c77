"""Exception hierarchy shared across the package."""


class ValidationError(ValueError):
    """Input violates a type invariant or operation precondition."""


class DimensionError(ValidationError):
    """Operands have incompatible or non-square shapes."""


class CapacityError(RuntimeError):
    """An exhaustive routine was asked to enumerate more than its guard allows."""
