class BudgetExceeded(ValueError):
    """A configured enumeration or statevector cap would be exceeded."""


class InvariantViolation(RuntimeError):
    """An algebraic identity that must hold by construction did not."""
